#include "alba/oracle.hpp"

#include <stdexcept>

namespace alba {

OracleReport check_correspondence(const Formula& f, const AlbaOutput& out, std::size_t max_worlds,
                                  double budget) {
  if (!out.success) throw std::invalid_argument("check_correspondence needs a successful run");
  OracleReport r;
  for (const Frame& fr : enumerate_frames(max_worlds)) {
    bool modal = false;
    try {
      modal = frame_valid(fr, f, budget);
    } catch (const BudgetExceeded&) {
      ++r.frames_skipped;
      continue;
    }
    const bool fo = frame_satisfies(fr, out.fo_sentence);
    ++r.frames_checked;
    if (modal != fo) {
      r.counterexample = fr;
      r.modal_valid_at_counterexample = modal;
      r.fo_true_at_counterexample = fo;
      return r;
    }
  }
  return r;
}

}  // namespace alba
