#ifndef ALBA_SYSTEM_HPP
#define ALBA_SYSTEM_HPP

#include <string>
#include <vector>

#include "alba/formula.hpp"

namespace alba {

/// `lhs <= rhs`: the truth set of lhs is contained in that of rhs.
struct Inequality {
  Formula lhs;
  Formula rhs;

  /// Shape `'i <= gamma`.
  bool is_nominal_lhs() const { return lhs.is_nominal(); }
  /// Shape `gamma <= ~'i`.
  bool is_negnominal_rhs() const { return rhs.is_neg_nominal(); }
  bool is_pure() const { return alba::is_pure(lhs) && alba::is_pure(rhs); }
  bool mentions(const std::string& var) const { return occurs(lhs, var) || occurs(rhs, var); }

  friend bool operator==(const Inequality& a, const Inequality& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend bool operator!=(const Inequality& a, const Inequality& b) { return !(a == b); }
};

/** Quasi-inequality `ineq_1 & ... & ineq_n => 'i0 <= ~'i1`.

    Every quasi-inequality the algorithm handles has this head shape, so the
    head is stored as the two nominal names. */
struct System {
  std::vector<Inequality> antecedent;
  std::string head_left;
  std::string head_right;

  bool is_pure() const;
  Symbols symbols() const;
  Inequality head() const {
    return {Formula::nom(head_left), Formula::neg(Formula::nom(head_right))};
  }

  friend bool operator==(const System& a, const System& b) {
    return a.head_left == b.head_left && a.head_right == b.head_right &&
           a.antecedent == b.antecedent;
  }
};

std::string print(const Inequality& ineq);
std::string print(const System& sys);

/// `phi -> psi` becomes `phi <= psi`; anything else `theta` becomes `true <= theta`.
Inequality as_inequality(const Formula& f);

}  // namespace alba

#endif  // ALBA_SYSTEM_HPP
