#ifndef ALBA_ORACLE_HPP
#define ALBA_ORACLE_HPP

#include <cstddef>
#include <optional>

#include "alba/engine.hpp"
#include "alba/semantics.hpp"

namespace alba {

/// Frame-by-frame comparison of modal validity with the FO correspondent.
struct OracleReport {
  std::size_t frames_checked = 0;
  /// Frames whose valuation space exceeded the budget; not counted as agreement.
  std::size_t frames_skipped = 0;
  std::optional<Frame> counterexample;
  bool modal_valid_at_counterexample = false;
  bool fo_true_at_counterexample = false;

  bool agrees() const { return !counterexample.has_value(); }
};

/// Needs a successful `out` for `f`. Stops at the first disagreement.
OracleReport check_correspondence(const Formula& f, const AlbaOutput& out, std::size_t max_worlds,
                                  double budget = kDefaultValuationBudget);

}  // namespace alba

#endif  // ALBA_ORACLE_HPP
