#include "alba/hybrid_translation.hpp"

#include "alba/syntax.hpp"

namespace alba {

Formula tr_inequality(const Inequality& ineq) {
  if (ineq.is_nominal_lhs()) return Formula::at(ineq.lhs.name(), ineq.rhs);
  if (ineq.is_negnominal_rhs()) return Formula::neg(Formula::at(ineq.rhs.child(0).name(), ineq.lhs));
  throw UntranslatableShape("neither side is a nominal: " + print(ineq));
}

Formula tr_quasi(const System& sys) {
  std::vector<Formula> parts;
  parts.reserve(sys.antecedent.size());
  for (const auto& ineq : sys.antecedent) parts.push_back(tr_inequality(ineq));
  return Formula::implies(conj_all(parts),
                          Formula::neg(Formula::at(sys.head_left, Formula::nom(sys.head_right))));
}

Formula tr_quasiset(const std::vector<System>& systems) {
  std::vector<Formula> parts;
  parts.reserve(systems.size());
  for (const auto& sys : systems) parts.push_back(tr_quasi(sys));
  return conj_all(parts);
}

}  // namespace alba
