#include "alba/fol.hpp"

#include <cassert>

namespace alba {

FOOp FOFormula::op() const { return node_->op; }
const std::string& FOFormula::name() const { return node_->name; }
const FOTerm& FOFormula::term(std::size_t i) const { return i == 0 ? node_->t1 : node_->t2; }

std::size_t FOFormula::arity() const {
  switch (op()) {
    case FOOp::Not:
    case FOOp::Forall:
    case FOOp::Exists:
      return 1;
    case FOOp::And:
    case FOOp::Or:
    case FOOp::Implies:
      return 2;
    default:
      return 0;
  }
}

const FOFormula& FOFormula::child(std::size_t i) const {
  assert(i < arity());
  return i == 0 ? node_->a : node_->b;
}

bool operator==(const FOFormula& a, const FOFormula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.op() != b.op() || a.name() != b.name()) return false;
  if (!(a.node_->t1 == b.node_->t1) || !(a.node_->t2 == b.node_->t2)) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a.child(i) != b.child(i)) return false;
  }
  return true;
}

FOFormula FOFormula::truth() {
  static const FOFormula t(std::make_shared<const Node>(Node{FOOp::True, {}, {}, {}, {}, {}}));
  return t;
}

FOFormula FOFormula::falsity() {
  static const FOFormula f(std::make_shared<const Node>(Node{FOOp::False, {}, {}, {}, {}, {}}));
  return f;
}

FOFormula FOFormula::rel(FOTerm a, FOTerm b) {
  return FOFormula(std::make_shared<const Node>(Node{FOOp::Rel, {}, std::move(a), std::move(b), {}, {}}));
}

FOFormula FOFormula::pred(std::string var, FOTerm t) {
  return FOFormula(
      std::make_shared<const Node>(Node{FOOp::Pred, std::move(var), std::move(t), {}, {}, {}}));
}

FOFormula FOFormula::eq(FOTerm a, FOTerm b) {
  return FOFormula(std::make_shared<const Node>(Node{FOOp::Eq, {}, std::move(a), std::move(b), {}, {}}));
}

FOFormula FOFormula::neg(FOFormula a) {
  return FOFormula(std::make_shared<const Node>(Node{FOOp::Not, {}, {}, {}, std::move(a), {}}));
}

FOFormula FOFormula::conj(FOFormula a, FOFormula b) {
  return FOFormula(
      std::make_shared<const Node>(Node{FOOp::And, {}, {}, {}, std::move(a), std::move(b)}));
}

FOFormula FOFormula::disj(FOFormula a, FOFormula b) {
  return FOFormula(
      std::make_shared<const Node>(Node{FOOp::Or, {}, {}, {}, std::move(a), std::move(b)}));
}

FOFormula FOFormula::implies(FOFormula a, FOFormula b) {
  return FOFormula(
      std::make_shared<const Node>(Node{FOOp::Implies, {}, {}, {}, std::move(a), std::move(b)}));
}

FOFormula FOFormula::forall(std::string var, FOFormula body) {
  return FOFormula(
      std::make_shared<const Node>(Node{FOOp::Forall, std::move(var), {}, {}, std::move(body), {}}));
}

FOFormula FOFormula::exists(std::string var, FOFormula body) {
  return FOFormula(
      std::make_shared<const Node>(Node{FOOp::Exists, std::move(var), {}, {}, std::move(body), {}}));
}

FOFormula fo_conj_all(const std::vector<FOFormula>& fs) {
  if (fs.empty()) return FOFormula::truth();
  FOFormula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = FOFormula::conj(acc, fs[i]);
  return acc;
}

namespace {

class Translator {
 public:
  FOFormula st(const Formula& f, const FOTerm& x) {
    switch (f.op()) {
      case Op::Var: return FOFormula::pred(f.name(), x);
      case Op::Nom: return FOFormula::eq(x, FOTerm::constant(f.name()));
      case Op::Bottom: return FOFormula::neg(FOFormula::eq(x, x));
      case Op::Top: return FOFormula::eq(x, x);
      case Op::Not: return FOFormula::neg(st(f.child(0), x));
      case Op::And: return FOFormula::conj(st(f.child(0), x), st(f.child(1), x));
      case Op::Or: return FOFormula::disj(st(f.child(0), x), st(f.child(1), x));
      case Op::Implies: return FOFormula::implies(st(f.child(0), x), st(f.child(1), x));
      case Op::Box: {
        auto y = fresh();
        return FOFormula::forall(y.name, FOFormula::implies(FOFormula::rel(x, y), st(f.child(0), y)));
      }
      case Op::Dia: {
        auto y = fresh();
        return FOFormula::exists(y.name, FOFormula::conj(FOFormula::rel(x, y), st(f.child(0), y)));
      }
      case Op::InvBox: {
        auto y = fresh();
        return FOFormula::forall(y.name, FOFormula::implies(FOFormula::rel(y, x), st(f.child(0), y)));
      }
      case Op::InvDia: {
        auto y = fresh();
        return FOFormula::exists(y.name, FOFormula::conj(FOFormula::rel(y, x), st(f.child(0), y)));
      }
      case Op::At: return st(f.child(0), FOTerm::constant(f.name()));
    }
    return {};
  }

  FOFormula inequality(const Inequality& ineq) {
    const FOTerm x = FOTerm::variable("x");
    return FOFormula::forall("x", FOFormula::implies(st(ineq.lhs, x), st(ineq.rhs, x)));
  }

 private:
  FOTerm fresh() { return FOTerm::variable("y" + std::to_string(counter_++)); }

  std::size_t counter_ = 0;
};

}  // namespace

FOFormula st_formula(const Formula& f, const FOTerm& x) { return Translator{}.st(f, x); }

FOFormula st_inequality(const Inequality& ineq) { return Translator{}.inequality(ineq); }

FOFormula st_quasi(const System& sys) {
  Translator tr;
  std::vector<FOFormula> parts;
  parts.reserve(sys.antecedent.size());
  for (const auto& ineq : sys.antecedent) parts.push_back(tr.inequality(ineq));
  return FOFormula::implies(fo_conj_all(parts), tr.inequality(sys.head()));
}

namespace {

FOTerm close_term(const FOTerm& t, const std::set<std::string>& constants) {
  if (t.kind == FOTerm::Kind::Constant && constants.count(t.name)) {
    return FOTerm::variable("v_" + t.name);
  }
  return t;
}

FOFormula close_rec(const FOFormula& f, const std::set<std::string>& constants) {
  switch (f.op()) {
    case FOOp::True:
    case FOOp::False:
      return f;
    case FOOp::Rel:
      return FOFormula::rel(close_term(f.term(0), constants), close_term(f.term(1), constants));
    case FOOp::Pred: return FOFormula::pred(f.name(), close_term(f.term(0), constants));
    case FOOp::Eq:
      return FOFormula::eq(close_term(f.term(0), constants), close_term(f.term(1), constants));
    case FOOp::Not: return FOFormula::neg(close_rec(f.child(0), constants));
    case FOOp::And:
      return FOFormula::conj(close_rec(f.child(0), constants), close_rec(f.child(1), constants));
    case FOOp::Or:
      return FOFormula::disj(close_rec(f.child(0), constants), close_rec(f.child(1), constants));
    case FOOp::Implies:
      return FOFormula::implies(close_rec(f.child(0), constants), close_rec(f.child(1), constants));
    case FOOp::Forall: return FOFormula::forall(f.name(), close_rec(f.child(0), constants));
    case FOOp::Exists: return FOFormula::exists(f.name(), close_rec(f.child(0), constants));
  }
  return f;
}

void free_rec(const FOFormula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto visit = [&](const FOTerm& t) {
    if (!t.is_variable()) return;
    for (const auto& b : bound) {
      if (b == t.name) return;
    }
    out.insert(t.name);
  };
  switch (f.op()) {
    case FOOp::Rel:
    case FOOp::Eq:
      visit(f.term(0));
      visit(f.term(1));
      return;
    case FOOp::Pred: visit(f.term(0)); return;
    case FOOp::Forall:
    case FOOp::Exists:
      bound.push_back(f.name());
      free_rec(f.child(0), bound, out);
      bound.pop_back();
      return;
    default:
      for (std::size_t i = 0; i < f.arity(); ++i) free_rec(f.child(i), bound, out);
  }
}

void constants_rec(const FOFormula& f, std::set<std::string>& out) {
  auto visit = [&](const FOTerm& t) {
    if (!t.is_variable()) out.insert(t.name);
  };
  switch (f.op()) {
    case FOOp::Rel:
    case FOOp::Eq:
      visit(f.term(0));
      visit(f.term(1));
      return;
    case FOOp::Pred: visit(f.term(0)); return;
    default:
      for (std::size_t i = 0; i < f.arity(); ++i) constants_rec(f.child(i), out);
  }
}

}  // namespace

FOFormula universal_closure(const FOFormula& f, const std::set<std::string>& constants) {
  if (constants.empty()) return f;
  FOFormula out = close_rec(f, constants);
  for (auto it = constants.rbegin(); it != constants.rend(); ++it) {
    out = FOFormula::forall("v_" + *it, out);
  }
  return out;
}

std::set<std::string> free_variables(const FOFormula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_rec(f, bound, out);
  return out;
}

std::set<std::string> constants_of(const FOFormula& f) {
  std::set<std::string> out;
  constants_rec(f, out);
  return out;
}

namespace {

// kPrefix is the context of a quantifier body or a negated operand.
enum Level { kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4, kPrefix = 5 };

std::string term_text(const FOTerm& t) {
  return t.is_variable() ? t.name : "'" + t.name;
}

void print_rec(const FOFormula& f, int ctx, std::string& out) {
  auto binary = [&](int level, int lctx, int rctx, const char* sym) {
    const bool wrap = ctx > level;
    if (wrap) out += '(';
    print_rec(f.child(0), lctx, out);
    out += ' ';
    out += sym;
    out += ' ';
    print_rec(f.child(1), rctx, out);
    if (wrap) out += ')';
  };
  switch (f.op()) {
    case FOOp::True: out += "true"; return;
    case FOOp::False: out += "false"; return;
    case FOOp::Rel:
      out += "R(" + term_text(f.term(0)) + "," + term_text(f.term(1)) + ")";
      return;
    case FOOp::Pred: out += "P_" + f.name() + "(" + term_text(f.term(0)) + ")"; return;
    case FOOp::Eq: {
      const bool wrap = ctx > kUnary;
      if (wrap) out += '(';
      out += term_text(f.term(0)) + " = " + term_text(f.term(1));
      if (wrap) out += ')';
      return;
    }
    case FOOp::Not:
      if (f.child(0).op() == FOOp::Eq) {
        const auto& e = f.child(0);
        const bool wrap = ctx > kUnary;
        if (wrap) out += '(';
        out += term_text(e.term(0)) + " != " + term_text(e.term(1));
        if (wrap) out += ')';
        return;
      }
      out += '~';
      print_rec(f.child(0), kPrefix, out);
      return;
    case FOOp::And: binary(kAnd, kAnd, kUnary, "&"); return;
    case FOOp::Or: binary(kOr, kOr, kAnd, "|"); return;
    case FOOp::Implies: binary(kImplies, kOr, kImplies, "->"); return;
    case FOOp::Forall:
    case FOOp::Exists: {
      const bool wrap = ctx > kImplies;
      if (wrap) out += '(';
      out += f.op() == FOOp::Forall ? "forall " : "exists ";
      out += f.name() + ". ";
      const FOOp body = f.child(0).op();
      print_rec(f.child(0), body == FOOp::Forall || body == FOOp::Exists ? kImplies : kPrefix, out);
      if (wrap) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print(const FOFormula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

}  // namespace alba
