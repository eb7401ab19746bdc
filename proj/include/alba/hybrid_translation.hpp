#ifndef ALBA_HYBRID_TRANSLATION_HPP
#define ALBA_HYBRID_TRANSLATION_HPP

#include <stdexcept>
#include <vector>

#include "alba/formula.hpp"
#include "alba/system.hpp"

namespace alba {

class UntranslatableShape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `i <= g` gives `@i g`; `g <= ~i` gives `~@i g`. The first clause wins ties.
Formula tr_inequality(const Inequality& ineq);
/// Antecedents' translations (true when none) imply `~@i0 i1`.
Formula tr_quasi(const System& sys);
/// Conjunction of tr_quasi; `true` for the empty set.
Formula tr_quasiset(const std::vector<System>& systems);

}  // namespace alba

#endif  // ALBA_HYBRID_TRANSLATION_HPP
