#ifndef ALBA_FORMULA_HPP
#define ALBA_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace alba {

/// Connectives of the expanded hybrid language L(@)+.
enum class Op : std::uint8_t {
  Var,
  Nom,
  Bottom,
  Top,
  Not,
  And,
  Or,
  Implies,
  Box,
  Dia,
  InvBox,
  InvDia,
  At,
};

const char* op_name(Op op);

/// Sequence of child indices from the root. For `At` the body is child 0.
using Path = std::vector<std::uint8_t>;

/** Immutable formula of L(@)+.

    A Formula is a cheap handle on a shared, immutable node. Copies share
    structure, so a formula can be passed around by value and handed to
    other threads freely. Equality and ordering are structural. */
class Formula {
 public:
  Formula() = default;  // null handle, only meaningful as a placeholder

  static Formula var(std::string name);
  static Formula nom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula neg(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula dia(Formula a);
  static Formula inv_box(Formula a);
  static Formula inv_dia(Formula a);
  static Formula at(std::string nominal, Formula a);

  bool valid() const { return node_ != nullptr; }
  Op op() const;
  /// Name of a Var/Nom leaf, or the nominal of an `At` node.
  const std::string& name() const;
  std::size_t arity() const;
  const Formula& child(std::size_t i) const;

  bool is(Op op) const { return valid() && this->op() == op; }
  bool is_nominal() const { return is(Op::Nom); }
  bool is_var() const { return is(Op::Var); }
  /// `~'i` for some nominal.
  bool is_neg_nominal() const;

  std::size_t size() const;
  std::size_t depth() const;
  std::size_t hash() const;

  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::string name, Formula a, Formula b);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op;
  std::string name;
  Formula a;
  Formula b;
  std::size_t hash;
  std::size_t size;
  std::size_t depth;
};

/// Left-nested conjunction; the empty conjunction is `true`.
Formula conj_all(const std::vector<Formula>& fs);
/// Left-nested disjunction; the empty disjunction is `false`.
Formula disj_all(const std::vector<Formula>& fs);

struct Symbols {
  std::set<std::string> vars;
  std::set<std::string> noms;
};

Symbols vars_and_nominals(const Formula& f);
void collect_symbols(const Formula& f, Symbols& out);
bool is_pure(const Formula& f);
/// No inverse modalities, i.e. the formula belongs to L(@).
bool is_base(const Formula& f);
bool occurs(const Formula& f, const std::string& var);

const Formula& subformula_at(const Formula& f, const Path& path);
Formula replace_at(const Formula& f, const Path& path, const Formula& replacement);

/// Replaces propositional variables by formulas and nominals by nominals,
/// simultaneously. Unmapped symbols are left alone.
struct SortedSubstitution {
  std::map<std::string, Formula> props;
  std::map<std::string, std::string> noms;

  bool empty() const { return props.empty() && noms.empty(); }
};

Formula apply_subst(const SortedSubstitution& s, const Formula& f);

/// Nominals with this shape ('n0, 'n1, ...) are reserved for the fresh supply.
bool is_reserved_nominal(const std::string& name);

/** Source of fresh nominal names `n<k>`.

    Names already present in the ambient system must be reserved before the
    first call. The supply is mutable state owned by a single derivation. */
class NominalSupply {
 public:
  NominalSupply() = default;
  explicit NominalSupply(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}

  void reserve(const std::string& name) { reserved_.insert(name); }
  void reserve(const std::set<std::string>& names) { reserved_.insert(names.begin(), names.end()); }
  bool is_reserved(const std::string& name) const { return reserved_.count(name) != 0; }

  std::string fresh();

  std::size_t counter() const { return counter_; }
  const std::set<std::string>& reserved() const { return reserved_; }

 private:
  std::size_t counter_ = 0;
  std::set<std::string> reserved_;
};

}  // namespace alba

#endif  // ALBA_FORMULA_HPP
