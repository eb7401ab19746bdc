#include "alba/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace alba {

const char* op_name(Op op) {
  switch (op) {
    case Op::Var: return "var";
    case Op::Nom: return "nom";
    case Op::Bottom: return "false";
    case Op::Top: return "true";
    case Op::Not: return "~";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Box: return "[]";
    case Op::Dia: return "<>";
    case Op::InvBox: return "[^]";
    case Op::InvDia: return "<^>";
    case Op::At: return "@";
  }
  return "?";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, Formula a, Formula b) {
  std::size_t h = mix(std::hash<int>{}(static_cast<int>(op)), std::hash<std::string>{}(name));
  std::size_t size = 1;
  std::size_t depth = 0;
  if (a.valid()) {
    h = mix(h, a.hash());
    size += a.size();
    depth = std::max(depth, a.depth() + 1);
  }
  if (b.valid()) {
    h = mix(h, b.hash());
    size += b.size();
    depth = std::max(depth, b.depth() + 1);
  }
  auto node = std::make_shared<const Node>(
      Node{op, std::move(name), std::move(a), std::move(b), h, size, depth});
  return Formula(std::move(node));
}

Formula Formula::var(std::string name) { return make(Op::Var, std::move(name), {}, {}); }
Formula Formula::nom(std::string name) { return make(Op::Nom, std::move(name), {}, {}); }

Formula Formula::top() {
  static const Formula t = make(Op::Top, "", {}, {});
  return t;
}

Formula Formula::bottom() {
  static const Formula b = make(Op::Bottom, "", {}, {});
  return b;
}

Formula Formula::neg(Formula a) { return make(Op::Not, "", std::move(a), {}); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, "", std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, "", std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) {
  return make(Op::Implies, "", std::move(a), std::move(b));
}
Formula Formula::box(Formula a) { return make(Op::Box, "", std::move(a), {}); }
Formula Formula::dia(Formula a) { return make(Op::Dia, "", std::move(a), {}); }
Formula Formula::inv_box(Formula a) { return make(Op::InvBox, "", std::move(a), {}); }
Formula Formula::inv_dia(Formula a) { return make(Op::InvDia, "", std::move(a), {}); }
Formula Formula::at(std::string nominal, Formula a) {
  return make(Op::At, std::move(nominal), std::move(a), {});
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }

std::size_t Formula::arity() const {
  switch (op()) {
    case Op::Var:
    case Op::Nom:
    case Op::Bottom:
    case Op::Top:
      return 0;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return 2;
    default:
      return 1;
  }
}

const Formula& Formula::child(std::size_t i) const {
  assert(i < arity());
  return i == 0 ? node_->a : node_->b;
}

bool Formula::is_neg_nominal() const { return is(Op::Not) && child(0).is_nominal(); }

std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::hash() const { return node_->hash; }

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (!a.valid()) return -1;
  if (!b.valid()) return 1;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (int c = compare(a.child(i), b.child(i)); c != 0) return c;
  }
  return 0;
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
  return acc;
}

void collect_symbols(const Formula& f, Symbols& out) {
  switch (f.op()) {
    case Op::Var: out.vars.insert(f.name()); return;
    case Op::Nom: out.noms.insert(f.name()); return;
    case Op::At: out.noms.insert(f.name()); break;
    default: break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_symbols(f.child(i), out);
}

Symbols vars_and_nominals(const Formula& f) {
  Symbols s;
  collect_symbols(f, s);
  return s;
}

bool occurs(const Formula& f, const std::string& var) {
  if (f.is_var()) return f.name() == var;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (occurs(f.child(i), var)) return true;
  }
  return false;
}

bool is_pure(const Formula& f) {
  if (f.is_var()) return false;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (!is_pure(f.child(i))) return false;
  }
  return true;
}

bool is_base(const Formula& f) {
  if (f.is(Op::InvBox) || f.is(Op::InvDia)) return false;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (!is_base(f.child(i))) return false;
  }
  return true;
}

const Formula& subformula_at(const Formula& f, const Path& path) {
  const Formula* cur = &f;
  for (auto idx : path) {
    if (idx >= cur->arity()) throw std::out_of_range("subformula_at: path leaves the formula");
    cur = &cur->child(idx);
  }
  return *cur;
}

namespace {

Formula rebuild(const Formula& f, Formula a, Formula b) {
  switch (f.op()) {
    case Op::Not: return Formula::neg(std::move(a));
    case Op::And: return Formula::conj(std::move(a), std::move(b));
    case Op::Or: return Formula::disj(std::move(a), std::move(b));
    case Op::Implies: return Formula::implies(std::move(a), std::move(b));
    case Op::Box: return Formula::box(std::move(a));
    case Op::Dia: return Formula::dia(std::move(a));
    case Op::InvBox: return Formula::inv_box(std::move(a));
    case Op::InvDia: return Formula::inv_dia(std::move(a));
    case Op::At: return Formula::at(f.name(), std::move(a));
    default: return f;
  }
}

Formula replace_rec(const Formula& f, const Path& path, std::size_t pos, const Formula& r) {
  if (pos == path.size()) return r;
  const auto idx = path[pos];
  if (idx >= f.arity()) throw std::out_of_range("replace_at: path leaves the formula");
  if (f.arity() == 1) return rebuild(f, replace_rec(f.child(0), path, pos + 1, r), {});
  if (idx == 0) return rebuild(f, replace_rec(f.child(0), path, pos + 1, r), f.child(1));
  return rebuild(f, f.child(0), replace_rec(f.child(1), path, pos + 1, r));
}

}  // namespace

Formula replace_at(const Formula& f, const Path& path, const Formula& replacement) {
  return replace_rec(f, path, 0, replacement);
}

Formula apply_subst(const SortedSubstitution& s, const Formula& f) {
  if (s.empty()) return f;
  switch (f.op()) {
    case Op::Var: {
      auto it = s.props.find(f.name());
      return it == s.props.end() ? f : it->second;
    }
    case Op::Nom: {
      auto it = s.noms.find(f.name());
      return it == s.noms.end() ? f : Formula::nom(it->second);
    }
    case Op::Top:
    case Op::Bottom:
      return f;
    case Op::At: {
      auto it = s.noms.find(f.name());
      const std::string& nominal = it == s.noms.end() ? f.name() : it->second;
      return Formula::at(nominal, apply_subst(s, f.child(0)));
    }
    default:
      break;
  }
  if (f.arity() == 1) return rebuild(f, apply_subst(s, f.child(0)), {});
  return rebuild(f, apply_subst(s, f.child(0)), apply_subst(s, f.child(1)));
}

bool is_reserved_nominal(const std::string& name) {
  if (name.size() < 2 || name[0] != 'n') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string NominalSupply::fresh() {
  for (;;) {
    std::string name = "n" + std::to_string(counter_++);
    if (reserved_.insert(name).second) return name;
  }
}

}  // namespace alba
