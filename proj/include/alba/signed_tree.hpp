#ifndef ALBA_SIGNED_TREE_HPP
#define ALBA_SIGNED_TREE_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "alba/formula.hpp"
#include "alba/system.hpp"

namespace alba {

enum class Sign : std::uint8_t { Plus, Minus };

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

enum class OrderValue : std::uint8_t { One, Partial };

/// Order-type: each propositional variable in scope is 1 or partial.
class OrderType {
 public:
  OrderType() = default;
  explicit OrderType(std::map<std::string, OrderValue> values) : values_(std::move(values)) {}

  /// Variables listed in `vars` (sorted), bit k of `mask` set meaning vars[k] is partial.
  static OrderType from_mask(const std::vector<std::string>& vars, unsigned long mask);
  /// "p=1,q=d" style; throws std::invalid_argument on malformed text.
  static OrderType parse(const std::string& text);

  OrderValue at(const std::string& var) const;
  bool contains(const std::string& var) const { return values_.count(var) != 0; }
  void set(const std::string& var, OrderValue v) { values_[var] = v; }
  const std::map<std::string, OrderValue>& values() const { return values_; }
  OrderType opposite() const;
  /// A leaf `sign var` is critical: +p with 1, or -p with partial.
  bool critical(const std::string& var, Sign sign) const;

  friend bool operator==(const OrderType& a, const OrderType& b) { return a.values_ == b.values_; }

 private:
  std::map<std::string, OrderValue> values_;
};

/// "p=1, q=d"
std::string to_string(const OrderType& e);

/// Strict partial order over variables, stored transitively closed.
class DependenceOrder {
 public:
  DependenceOrder() = default;

  /// Transitive closure of the given pairs (a, b) meaning a < b.
  static DependenceOrder closure(const std::set<std::pair<std::string, std::string>>& pairs);

  bool less(const std::string& a, const std::string& b) const { return pairs_.count({a, b}) != 0; }
  bool irreflexive() const;
  bool empty() const { return pairs_.empty(); }
  const std::set<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
  /// Variables in an order compatible with <, Omega-maximal first; ties by name.
  std::vector<std::string> maximal_first(const std::set<std::string>& vars) const;

  friend bool operator==(const DependenceOrder& a, const DependenceOrder& b) {
    return a.pairs_ == b.pairs_;
  }

 private:
  std::set<std::pair<std::string, std::string>> pairs_;
};

/// "p<q, ..." or "{}" when empty.
std::string to_string(const DependenceOrder& o);

/// Roles of a signed node per the outer/inner table. A node may hold several.
struct NodeRoles {
  bool outer = false;
  bool inner_sra = false;
  bool inner_srr = false;
  bool leaf = false;
  /// The nominal under an @, which carries no sign.
  bool unsigned_nominal = false;

  bool inner() const { return inner_sra || inner_srr; }
};

NodeRoles classify_node(Sign sign, Op op);

struct SignedNode {
  std::optional<Sign> sign;
  Formula formula;
  /// Position of `formula` inside the tree's root formula.
  Path path;
  /// For @ the first child is the unsigned nominal and the second the body.
  std::vector<SignedNode> children;
  NodeRoles roles;

  Op op() const { return formula.op(); }
  /// Children that carry signs, i.e. everything but the @ nominal.
  std::vector<const SignedNode*> signed_children() const;
};

SignedNode build_signed_tree(const Formula& f, Sign root_sign);
std::string label(const SignedNode& n);

/// Root first, critical leaf last.
using Branch = std::vector<const SignedNode*>;

/// Root-to-leaf branches ending in a critical variable leaf, left to right.
std::vector<Branch> critical_branches(const SignedNode& t, const OrderType& e);

enum class Flavor : std::uint8_t { Inductive, Skeletal, ExtendedInductive, ExtendedSkeletal };
inline constexpr std::array<Flavor, 4> kAllFlavors = {Flavor::Inductive, Flavor::Skeletal,
                                                       Flavor::ExtendedInductive,
                                                       Flavor::ExtendedSkeletal};
const char* flavor_name(Flavor f);

struct BranchDecomposition {
  const SignedNode* leaf = nullptr;
  // Segments are stored root to leaf; the branch reads P3 P2 P1 leaf from the root.
  std::vector<const SignedNode*> p1;
  std::vector<const SignedNode*> p2;
  std::vector<const SignedNode*> p3;
  /// The @ ending P3 on its leaf side; null when P3 is empty.
  const SignedNode* terminator = nullptr;
};

/** Splits a branch into P3 P2 P1 as allowed by `flavor`.

    Among all admissible splits the one with the shortest P3 is chosen, then the
    longest P1. Returns nullopt when none exists; `offending` then receives the
    node nearest the leaf that no admissible split can absorb. */
std::optional<BranchDecomposition> decompose_branch(const Branch& b,
                                                    Flavor flavor = Flavor::ExtendedInductive,
                                                    const SignedNode** offending = nullptr);

struct InductiveCheck {
  bool ok = true;
  std::string violation;
  /// Pairs (k, i) needed for the SRR side condition: k must be below i.
  std::set<std::pair<std::string, std::string>> required;

  explicit operator bool() const { return ok; }
};

/// Branch shapes for `flavor` plus SRR side conditions against `omega`.
InductiveCheck check_inductive(const std::vector<const SignedNode*>& trees, const OrderType& e,
                               const DependenceOrder& omega, Flavor flavor);
InductiveCheck check_inductive(const SignedNode& t, const OrderType& e,
                               const DependenceOrder& omega, Flavor flavor);
/// Extended inductive with every critical branch made of inner nodes only.
bool check_inner_inductive(const SignedNode& t, const OrderType& e, const DependenceOrder& omega);

struct Certificate {
  OrderType epsilon;
  DependenceOrder omega;
};

struct BranchReport {
  std::string leaf;
  std::vector<std::string> p1;
  std::vector<std::string> p2;
  std::vector<std::string> p3;
};

struct Classification {
  std::array<std::optional<Certificate>, 4> certificates;
  /// Decompositions of the critical branches under the strongest certificate.
  std::vector<BranchReport> branches;

  bool is(Flavor f) const { return certificates[static_cast<std::size_t>(f)].has_value(); }
  const std::optional<Certificate>& certificate(Flavor f) const {
    return certificates[static_cast<std::size_t>(f)];
  }
  bool any() const { return is(Flavor::ExtendedInductive); }
};

/// Tries every order-type (all-1 first) and synthesizes the least dependence order.
Classification classify(const Inequality& ineq);
/// Classification of the input formula, via `as_inequality`.
Classification classify(const Formula& f);

/// Sorted variables of an inequality.
std::vector<std::string> variables_of(const Inequality& ineq);

}  // namespace alba

#endif  // ALBA_SIGNED_TREE_HPP
