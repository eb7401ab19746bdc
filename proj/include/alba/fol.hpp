#ifndef ALBA_FOL_HPP
#define ALBA_FOL_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "alba/formula.hpp"
#include "alba/system.hpp"

namespace alba {

/// A first-order variable, or the constant naming a nominal.
struct FOTerm {
  enum class Kind : std::uint8_t { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string name;

  static FOTerm variable(std::string n) { return {Kind::Variable, std::move(n)}; }
  static FOTerm constant(std::string nominal) { return {Kind::Constant, std::move(nominal)}; }

  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const FOTerm& a, const FOTerm& b) {
    return a.kind == b.kind && a.name == b.name;
  }
};

enum class FOOp : std::uint8_t {
  True,
  False,
  Rel,   // R(t1, t2)
  Pred,  // P_p(t1)
  Eq,
  Not,
  And,
  Or,
  Implies,
  Forall,
  Exists,
};

/// Immutable first-order formula over R, unary predicates and nominal constants.
class FOFormula {
 public:
  FOFormula() = default;

  static FOFormula truth();
  static FOFormula falsity();
  static FOFormula rel(FOTerm a, FOTerm b);
  static FOFormula pred(std::string var, FOTerm t);
  static FOFormula eq(FOTerm a, FOTerm b);
  static FOFormula neg(FOFormula a);
  static FOFormula conj(FOFormula a, FOFormula b);
  static FOFormula disj(FOFormula a, FOFormula b);
  static FOFormula implies(FOFormula a, FOFormula b);
  static FOFormula forall(std::string var, FOFormula body);
  static FOFormula exists(std::string var, FOFormula body);

  bool valid() const { return node_ != nullptr; }
  FOOp op() const;
  /// Predicate name for Pred, bound variable for quantifiers.
  const std::string& name() const;
  const FOTerm& term(std::size_t i) const;
  std::size_t arity() const;
  const FOFormula& child(std::size_t i) const;

  friend bool operator==(const FOFormula& a, const FOFormula& b);
  friend bool operator!=(const FOFormula& a, const FOFormula& b) { return !(a == b); }

 private:
  struct Node;
  explicit FOFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct FOFormula::Node {
  FOOp op;
  std::string name;
  FOTerm t1;
  FOTerm t2;
  FOFormula a;
  FOFormula b;
};

/// Left-nested conjunction; empty is `true`.
FOFormula fo_conj_all(const std::vector<FOFormula>& fs);

/** Standard translation ST_x. Bound variables are y0, y1, ... drawn from a
    counter local to the call, so the output is stable. */
FOFormula st_formula(const Formula& f, const FOTerm& x);
/// forall x (ST_x(lhs) -> ST_x(rhs))
FOFormula st_inequality(const Inequality& ineq);
/// ST(ineq_1) & ... & ST(ineq_n) -> ST(head)
FOFormula st_quasi(const System& sys);

/// Turns each listed constant into a universally bound variable `v_<name>`,
/// quantifiers outermost in sorted order.
FOFormula universal_closure(const FOFormula& f, const std::set<std::string>& constants);

/// Variables occurring free.
std::set<std::string> free_variables(const FOFormula& f);
std::set<std::string> constants_of(const FOFormula& f);

std::string print(const FOFormula& f);

}  // namespace alba

#endif  // ALBA_FOL_HPP
