#include "alba/signed_tree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "alba/syntax.hpp"

namespace alba {

OrderType OrderType::from_mask(const std::vector<std::string>& vars, unsigned long mask) {
  OrderType e;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    e.values_[vars[k]] = ((mask >> k) & 1UL) ? OrderValue::Partial : OrderValue::One;
  }
  return e;
}

OrderType OrderType::parse(const std::string& text) {
  OrderType e;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size()) {
      throw std::invalid_argument("bad order-type entry '" + item + "'");
    }
    const std::string var = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (val == "1") {
      e.values_[var] = OrderValue::One;
    } else if (val == "d" || val == "partial" || val == "∂") {
      e.values_[var] = OrderValue::Partial;
    } else {
      throw std::invalid_argument("bad order-type value '" + val + "' for " + var);
    }
  }
  return e;
}

OrderValue OrderType::at(const std::string& var) const {
  auto it = values_.find(var);
  if (it == values_.end()) throw std::out_of_range("order-type has no entry for " + var);
  return it->second;
}

OrderType OrderType::opposite() const {
  OrderType out;
  for (const auto& [v, val] : values_) {
    out.values_[v] = val == OrderValue::One ? OrderValue::Partial : OrderValue::One;
  }
  return out;
}

bool OrderType::critical(const std::string& var, Sign sign) const {
  return (at(var) == OrderValue::One) == (sign == Sign::Plus);
}

std::string to_string(const OrderType& e) {
  std::string out;
  for (const auto& [v, val] : e.values()) {
    if (!out.empty()) out += ", ";
    out += v + (val == OrderValue::One ? "=1" : "=d");
  }
  return out;
}

DependenceOrder DependenceOrder::closure(const std::set<std::pair<std::string, std::string>>& pairs) {
  DependenceOrder o;
  o.pairs_ = pairs;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<std::string, std::string>> add;
    for (const auto& [a, b] : o.pairs_) {
      for (auto it = o.pairs_.lower_bound({b, std::string{}}); it != o.pairs_.end() && it->first == b;
           ++it) {
        if (!o.pairs_.count({a, it->second})) add.emplace_back(a, it->second);
      }
    }
    for (auto& p : add) changed |= o.pairs_.insert(std::move(p)).second;
  }
  return o;
}

bool DependenceOrder::irreflexive() const {
  return std::none_of(pairs_.begin(), pairs_.end(), [](const auto& p) { return p.first == p.second; });
}

std::vector<std::string> DependenceOrder::maximal_first(const std::set<std::string>& vars) const {
  std::vector<std::string> left(vars.begin(), vars.end());
  std::vector<std::string> out;
  while (!left.empty()) {
    auto pick = left.begin();
    for (auto it = left.begin(); it != left.end(); ++it) {
      const bool dominated = std::any_of(left.begin(), left.end(), [&](const std::string& o) {
        return o != *it && less(*it, o);
      });
      if (!dominated) {
        pick = it;
        break;
      }
    }
    out.push_back(*pick);
    left.erase(pick);
  }
  return out;
}

std::string to_string(const DependenceOrder& o) {
  if (o.empty()) return "{}";
  std::string out;
  for (const auto& [a, b] : o.pairs()) {
    if (!out.empty()) out += ", ";
    out += a + "<" + b;
  }
  return out;
}

NodeRoles classify_node(Sign sign, Op op) {
  NodeRoles r;
  const bool plus = sign == Sign::Plus;
  switch (op) {
    case Op::Var:
    case Op::Nom:
    case Op::Bottom:
    case Op::Top:
      r.leaf = true;
      break;
    case Op::Not:
    case Op::At:
      r.outer = true;
      r.inner_sra = true;
      break;
    case Op::And:
      r.outer = true;
      r.inner_sra = plus;
      r.inner_srr = !plus;
      break;
    case Op::Or:
      r.outer = true;
      r.inner_sra = !plus;
      r.inner_srr = plus;
      break;
    case Op::Implies:
      r.outer = !plus;
      r.inner_srr = plus;
      break;
    case Op::Box:
      r.outer = !plus;
      r.inner_sra = plus;
      break;
    case Op::Dia:
      r.outer = plus;
      r.inner_sra = !plus;
      break;
    case Op::InvBox:
    case Op::InvDia:
      break;
  }
  return r;
}

std::vector<const SignedNode*> SignedNode::signed_children() const {
  std::vector<const SignedNode*> out;
  for (const auto& c : children) {
    if (c.sign) out.push_back(&c);
  }
  return out;
}

namespace {

SignedNode build_rec(const Formula& f, Sign s, Path& path) {
  SignedNode n;
  n.sign = s;
  n.formula = f;
  n.path = path;
  n.roles = classify_node(s, f.op());
  if (f.is(Op::At)) {
    SignedNode nominal;
    nominal.formula = Formula::nom(f.name());
    nominal.path = path;
    nominal.roles.leaf = true;
    nominal.roles.unsigned_nominal = true;
    n.children.push_back(std::move(nominal));
    path.push_back(0);
    n.children.push_back(build_rec(f.child(0), s, path));
    path.pop_back();
    return n;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) {
    const bool flips = f.is(Op::Not) || (f.is(Op::Implies) && i == 0);
    path.push_back(static_cast<std::uint8_t>(i));
    n.children.push_back(build_rec(f.child(i), flips ? flip(s) : s, path));
    path.pop_back();
  }
  return n;
}

void branches_rec(const SignedNode& n, const OrderType& e, Branch& cur, std::vector<Branch>& out) {
  cur.push_back(&n);
  if (n.formula.is_var()) {
    if (e.critical(n.formula.name(), *n.sign)) out.push_back(cur);
  } else {
    for (const SignedNode* c : n.signed_children()) branches_rec(*c, e, cur, out);
  }
  cur.pop_back();
}

}  // namespace

SignedNode build_signed_tree(const Formula& f, Sign root_sign) {
  Path path;
  return build_rec(f, root_sign, path);
}

std::string label(const SignedNode& n) {
  std::string out;
  if (n.sign) out += sign_char(*n.sign);
  switch (n.op()) {
    case Op::Var: return out + n.formula.name();
    case Op::Nom: return out + "'" + n.formula.name();
    case Op::Bottom: return out + "false";
    case Op::Top: return out + "true";
    case Op::Not: return out + "~";
    case Op::And: return out + "&";
    case Op::Or: return out + "|";
    case Op::Implies: return out + "->";
    case Op::Box: return out + "[]";
    case Op::Dia: return out + "<>";
    case Op::InvBox: return out + "[^]";
    case Op::InvDia: return out + "<^>";
    case Op::At: return out + "@'" + n.formula.name();
  }
  return out;
}

std::vector<Branch> critical_branches(const SignedNode& t, const OrderType& e) {
  std::vector<Branch> out;
  Branch cur;
  branches_rec(t, e, cur, out);
  return out;
}

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Inductive: return "inductive";
    case Flavor::Skeletal: return "skeletal";
    case Flavor::ExtendedInductive: return "extended-inductive";
    case Flavor::ExtendedSkeletal: return "extended-skeletal";
  }
  return "?";
}

std::optional<BranchDecomposition> decompose_branch(const Branch& b, Flavor flavor,
                                                    const SignedNode** offending) {
  if (b.empty()) return std::nullopt;
  const std::size_t m = b.size() - 1;  // internal nodes b[0..m)
  const bool p3_allowed = flavor == Flavor::ExtendedInductive || flavor == Flavor::ExtendedSkeletal;
  const bool p1_allowed = flavor == Flavor::ExtendedInductive || flavor == Flavor::Inductive;

  // inner_from[k]: b[k..m) are all inner. outer_run[k]: length of the outer run starting at k.
  std::vector<bool> inner_from(m + 1, true);
  for (std::size_t k = m; k-- > 0;) inner_from[k] = inner_from[k + 1] && b[k]->roles.inner();
  std::vector<std::size_t> outer_run(m + 1, 0);
  for (std::size_t k = m; k-- > 0;) outer_run[k] = b[k]->roles.outer ? outer_run[k + 1] + 1 : 0;

  for (std::size_t a = 0; a <= m; ++a) {
    if (a > 0 && (!p3_allowed || !b[a - 1]->formula.is(Op::At))) continue;
    for (std::size_t split = a; split <= m; ++split) {
      if (split - a > outer_run[a]) break;
      if (!p1_allowed && split != m) continue;
      if (!inner_from[split]) continue;
      BranchDecomposition d;
      d.leaf = b[m];
      d.p3.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(a));
      d.p2.assign(b.begin() + static_cast<std::ptrdiff_t>(a), b.begin() + static_cast<std::ptrdiff_t>(split));
      d.p1.assign(b.begin() + static_cast<std::ptrdiff_t>(split), b.begin() + static_cast<std::ptrdiff_t>(m));
      if (a > 0) d.terminator = b[a - 1];
      return d;
    }
  }
  if (offending) {
    // Walk up from the leaf through what an inner-then-outer prefix can absorb.
    std::size_t k = m;
    if (p1_allowed) {
      while (k > 0 && b[k - 1]->roles.inner()) --k;
    }
    while (k > 0 && b[k - 1]->roles.outer) --k;
    *offending = k > 0 ? b[k - 1] : b[0];
  }
  return std::nullopt;
}

namespace {

bool has_critical_leaf(const SignedNode& n, const OrderType& e) {
  if (n.formula.is_var()) return e.critical(n.formula.name(), *n.sign);
  for (const SignedNode* c : n.signed_children()) {
    if (has_critical_leaf(*c, e)) return true;
  }
  return false;
}

std::string branch_text(const Branch& b) {
  std::string out;
  for (const SignedNode* n : b) {
    if (!out.empty()) out += ' ';
    out += label(*n);
  }
  return out;
}

/// Shape check per flavor and SRR side conditions, independent of omega.
struct Analysis {
  std::array<bool, 4> shape{true, true, true, true};
  std::array<std::string, 4> shape_violation;
  bool uniform = true;
  std::string uniform_violation;
  std::set<std::pair<std::string, std::string>> required;
};

Analysis analyze(const std::vector<const SignedNode*>& trees, const OrderType& e) {
  Analysis an;
  for (const SignedNode* t : trees) {
    for (const Branch& b : critical_branches(*t, e)) {
      for (Flavor f : kAllFlavors) {
        const auto i = static_cast<std::size_t>(f);
        if (!an.shape[i]) continue;
        const SignedNode* bad = nullptr;
        if (!decompose_branch(b, f, &bad)) {
          an.shape[i] = false;
          an.shape_violation[i] = "branch [" + branch_text(b) + "] is not " + flavor_name(f) +
                                  " at node " + (bad ? label(*bad) : std::string("?"));
        }
      }
      const std::string& leaf_var = b.back()->formula.name();
      for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        const SignedNode* n = b[k];
        if (!n->roles.inner_srr) continue;
        const SignedNode* next = b[k + 1];
        const SignedNode* gamma = &n->children[0] == next ? &n->children[1] : &n->children[0];
        if (has_critical_leaf(*gamma, e)) {
          if (an.uniform) {
            an.uniform = false;
            an.uniform_violation = "side " + print(gamma->formula) + " of " + label(*n) +
                                   " on branch [" + branch_text(b) + "] has a critical occurrence";
          }
        }
        Symbols s = vars_and_nominals(gamma->formula);
        for (const auto& v : s.vars) an.required.emplace(v, leaf_var);
      }
    }
  }
  return an;
}

BranchReport report(const BranchDecomposition& d) {
  BranchReport r;
  r.leaf = label(*d.leaf);
  for (const SignedNode* n : d.p1) r.p1.push_back(label(*n));
  for (const SignedNode* n : d.p2) r.p2.push_back(label(*n));
  for (const SignedNode* n : d.p3) r.p3.push_back(label(*n));
  return r;
}

}  // namespace

InductiveCheck check_inductive(const std::vector<const SignedNode*>& trees, const OrderType& e,
                               const DependenceOrder& omega, Flavor flavor) {
  InductiveCheck out;
  Analysis an = analyze(trees, e);
  out.required = an.required;
  const auto i = static_cast<std::size_t>(flavor);
  if (!an.shape[i]) {
    out.ok = false;
    out.violation = an.shape_violation[i];
    return out;
  }
  if (!an.uniform) {
    out.ok = false;
    out.violation = an.uniform_violation;
    return out;
  }
  for (const auto& [k, leaf] : an.required) {
    if (!omega.less(k, leaf)) {
      out.ok = false;
      out.violation = "dependence order lacks " + k + "<" + leaf;
      return out;
    }
  }
  return out;
}

InductiveCheck check_inductive(const SignedNode& t, const OrderType& e, const DependenceOrder& omega,
                               Flavor flavor) {
  return check_inductive(std::vector<const SignedNode*>{&t}, e, omega, flavor);
}

bool check_inner_inductive(const SignedNode& t, const OrderType& e, const DependenceOrder& omega) {
  if (!check_inductive(t, e, omega, Flavor::ExtendedInductive)) return false;
  for (const Branch& b : critical_branches(t, e)) {
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      if (!b[k]->roles.inner()) return false;
    }
  }
  return true;
}

std::vector<std::string> variables_of(const Inequality& ineq) {
  Symbols s = vars_and_nominals(ineq.lhs);
  collect_symbols(ineq.rhs, s);
  return {s.vars.begin(), s.vars.end()};
}

Classification classify(const Inequality& ineq) {
  Classification out;
  const std::vector<std::string> vars = variables_of(ineq);
  if (vars.size() > 20) throw std::invalid_argument("classify: too many variables");
  const SignedNode plus = build_signed_tree(ineq.lhs, Sign::Plus);
  const SignedNode minus = build_signed_tree(ineq.rhs, Sign::Minus);
  const std::vector<const SignedNode*> trees{&plus, &minus};

  const unsigned long count = 1UL << vars.size();
  for (unsigned long mask = 0; mask < count; ++mask) {
    const OrderType e = OrderType::from_mask(vars, mask);
    Analysis an = analyze(trees, e);
    if (!an.uniform) continue;
    DependenceOrder omega = DependenceOrder::closure(an.required);
    if (!omega.irreflexive()) continue;
    for (Flavor f : kAllFlavors) {
      auto& slot = out.certificates[static_cast<std::size_t>(f)];
      if (!slot && an.shape[static_cast<std::size_t>(f)]) slot = Certificate{e, omega};
    }
    if (std::all_of(out.certificates.begin(), out.certificates.end(),
                    [](const auto& c) { return c.has_value(); })) {
      break;
    }
  }

  for (Flavor f : {Flavor::Skeletal, Flavor::Inductive, Flavor::ExtendedSkeletal,
                   Flavor::ExtendedInductive}) {
    const auto& cert = out.certificate(f);
    if (!cert) continue;
    for (const SignedNode* t : trees) {
      for (const Branch& b : critical_branches(*t, cert->epsilon)) {
        if (auto d = decompose_branch(b, f)) out.branches.push_back(report(*d));
      }
    }
    break;
  }
  return out;
}

Classification classify(const Formula& f) { return classify(as_inequality(f)); }

}  // namespace alba
