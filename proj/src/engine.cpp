#include "alba/engine.hpp"

#include <algorithm>

#include "alba/syntax.hpp"
#include "json.hpp"

namespace alba {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::FirstApproximation: return "first-approximation";
    case Stage::AtDecomposition: return "at-decomposition";
    case Stage::Outer: return "outer";
    case Stage::Inner: return "inner";
    case Stage::Ackermann: return "ackermann";
  }
  return "?";
}

AckermannBlocked::AckermannBlocked(std::string var, std::string witness)
    : std::runtime_error("ackermann blocked on " + var + " by " + witness),
      var_(std::move(var)),
      witness_(std::move(witness)) {}

namespace {

Formula nom(const std::string& n) { return Formula::nom(n); }
Formula negnom(const std::string& n) { return Formula::neg(Formula::nom(n)); }

/// Sign of the node at `path` when the root carries `root`.
Sign sign_at(const Formula& f, const Path& path, Sign root) {
  Sign s = root;
  const Formula* cur = &f;
  for (std::uint8_t idx : path) {
    if (cur->is(Op::Not) || (cur->is(Op::Implies) && idx == 0)) s = flip(s);
    cur = &cur->child(idx);
  }
  return s;
}

bool has_critical(const Formula& f, Sign s, const OrderType& e) {
  if (f.is_var()) return e.critical(f.name(), s);
  for (std::size_t i = 0; i < f.arity(); ++i) {
    const bool flips = f.is(Op::Not) || (f.is(Op::Implies) && i == 0);
    if (has_critical(f.child(i), flips ? flip(s) : s, e)) return true;
  }
  return false;
}

/// Records whether p occurs positively and negatively in f (root positive).
void polarity(const Formula& f, const std::string& p, bool positive, bool& pos, bool& neg) {
  if (f.is_var()) {
    if (f.name() == p) (positive ? pos : neg) = true;
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) {
    const bool flips = f.is(Op::Not) || (f.is(Op::Implies) && i == 0);
    polarity(f.child(i), p, flips ? !positive : positive, pos, neg);
  }
}

/// Copy of sys with antecedent[target] replaced by `with`; the new indices land in `produced`.
System splice(const System& sys, std::size_t target, const std::vector<Inequality>& with,
              std::vector<std::size_t>& produced) {
  System out;
  out.head_left = sys.head_left;
  out.head_right = sys.head_right;
  out.antecedent.reserve(sys.antecedent.size() + with.size());
  for (std::size_t i = 0; i < target; ++i) out.antecedent.push_back(sys.antecedent[i]);
  for (const auto& ineq : with) {
    produced.push_back(out.antecedent.size());
    out.antecedent.push_back(ineq);
  }
  for (std::size_t i = target + 1; i < sys.antecedent.size(); ++i) out.antecedent.push_back(sys.antecedent[i]);
  return out;
}

RuleResult single(Stage stage, std::string rule, const System& sys, std::size_t target,
                  const std::vector<Inequality>& with) {
  RuleResult r{stage, std::move(rule), {target}, {}, {}};
  r.produced.emplace_back();
  r.systems.push_back(splice(sys, target, with, r.produced.back()));
  return r;
}

RuleResult twofold(Stage stage, std::string rule, const System& sys, std::size_t target,
                   const std::vector<Inequality>& first, const std::vector<Inequality>& second) {
  RuleResult r{stage, std::move(rule), {target}, {}, {}};
  r.produced.emplace_back();
  r.systems.push_back(splice(sys, target, first, r.produced.back()));
  r.produced.emplace_back();
  r.systems.push_back(splice(sys, target, second, r.produced.back()));
  return r;
}

const Inequality& target_of(const System& sys, std::size_t target) {
  if (target >= sys.antecedent.size()) throw RuleNotApplicable("no inequality at that index");
  return sys.antecedent[target];
}

}  // namespace

System first_approximation(const Inequality& ineq, NominalSupply& supply) {
  Symbols s = vars_and_nominals(ineq.lhs);
  collect_symbols(ineq.rhs, s);
  supply.reserve(s.noms);
  auto head = [&](const std::string& preferred) {
    if (supply.is_reserved(preferred)) return supply.fresh();
    supply.reserve(preferred);
    return preferred;
  };
  System sys;
  sys.head_left = head("i0");
  sys.head_right = head("i1");
  sys.antecedent.push_back({nom(sys.head_left), ineq.lhs});
  sys.antecedent.push_back({ineq.rhs, negnom(sys.head_right)});
  return sys;
}

RuleResult stage21_decompose(const System& sys, std::size_t target, const Path& hole) {
  const Inequality& ineq = target_of(sys, target);
  Side side;
  if (ineq.is_nominal_lhs()) {
    side = Side::Rhs;
  } else if (ineq.is_negnominal_rhs()) {
    side = Side::Lhs;
  } else {
    throw RuleNotApplicable("at-decomposition needs i <= theta or theta <= ~i");
  }
  const Formula& theta = side == Side::Rhs ? ineq.rhs : ineq.lhs;
  const Formula* at = nullptr;
  try {
    at = &subformula_at(theta, hole);
  } catch (const std::out_of_range&) {
    throw RuleNotApplicable("hole outside the formula");
  }
  if (!at->is(Op::At)) throw RuleNotApplicable("hole is not an @ node");
  const std::string j = at->name();
  const Formula alpha = at->child(0);
  const Sign sign = sign_at(theta, hole, side == Side::Rhs ? Sign::Plus : Sign::Minus);

  auto with = [&](const Formula& value) {
    const Formula t = replace_at(theta, hole, value);
    return side == Side::Rhs ? Inequality{ineq.lhs, t} : Inequality{t, ineq.rhs};
  };
  if (sign == Sign::Plus) {
    return twofold(Stage::AtDecomposition, "at-split+", sys, target, {with(Formula::bottom())},
                   {with(Formula::top()), {nom(j), alpha}});
  }
  return twofold(Stage::AtDecomposition, "at-split-", sys, target, {with(Formula::top())},
                 {with(Formula::bottom()), {alpha, negnom(j)}});
}

RuleResult stage22_apply(const System& sys, std::size_t target, NominalSupply& supply,
                         std::optional<Side> side) {
  const Inequality& ineq = target_of(sys, target);
  if (!side) {
    if (ineq.is_nominal_lhs()) {
      side = Side::Rhs;
    } else if (ineq.is_negnominal_rhs()) {
      side = Side::Lhs;
    } else {
      throw RuleNotApplicable("outer rules need i <= beta or beta <= ~i");
    }
  }
  const Stage st = Stage::Outer;
  if (*side == Side::Rhs) {
    if (!ineq.is_nominal_lhs()) throw RuleNotApplicable("lhs is not a nominal");
    const Formula& i = ineq.lhs;
    const Formula& b = ineq.rhs;
    switch (b.op()) {
      case Op::Or:
        return twofold(st, "split-or", sys, target, {{i, b.child(0)}}, {{i, b.child(1)}});
      case Op::And: return single(st, "split-and", sys, target, {{i, b.child(0)}, {i, b.child(1)}});
      case Op::Dia: {
        const std::string j = supply.fresh();
        return single(st, "approx-dia", sys, target, {{i, Formula::dia(nom(j))}, {nom(j), b.child(0)}});
      }
      case Op::At: return single(st, "approx-at", sys, target, {{nom(b.name()), b.child(0)}});
      case Op::Not:
        return single(st, "residuate-neg", sys, target, {{b.child(0), Formula::neg(i)}});
      default: throw RuleNotApplicable(std::string("no outer rule for i <= ") + op_name(b.op()));
    }
  }
  if (!ineq.is_negnominal_rhs()) throw RuleNotApplicable("rhs is not a negated nominal");
  const Formula& ni = ineq.rhs;
  const Formula& i = ni.child(0);
  const Formula& b = ineq.lhs;
  switch (b.op()) {
    case Op::And:
      return twofold(st, "split-and", sys, target, {{b.child(0), ni}}, {{b.child(1), ni}});
    case Op::Or: return single(st, "split-or", sys, target, {{b.child(0), ni}, {b.child(1), ni}});
    case Op::Box: {
      const std::string j = supply.fresh();
      return single(st, "approx-box", sys, target,
                    {{b.child(0), negnom(j)}, {Formula::box(negnom(j)), ni}});
    }
    case Op::At: return single(st, "approx-at", sys, target, {{b.child(0), negnom(b.name())}});
    case Op::Implies: {
      const std::string j = supply.fresh();
      const std::string k = supply.fresh();
      return single(st, "approx-implies", sys, target,
                    {{nom(j), b.child(0)},
                     {b.child(1), negnom(k)},
                     {Formula::implies(nom(j), negnom(k)), ni}});
    }
    case Op::Not: return single(st, "residuate-neg", sys, target, {{i, b.child(0)}});
    default: throw RuleNotApplicable(std::string("no outer rule for ") + op_name(b.op()) + " <= ~i");
  }
}

RuleResult stage23_apply(const System& sys, std::size_t target, Side side, std::optional<int> isolate) {
  const Inequality& ineq = target_of(sys, target);
  const Stage st = Stage::Inner;
  const Formula& a = ineq.lhs;
  const Formula& b = ineq.rhs;
  if (side == Side::Rhs) {
    const int keep = isolate.value_or(1);
    switch (b.op()) {
      case Op::And: return single(st, "split-and", sys, target, {{a, b.child(0)}, {a, b.child(1)}});
      case Op::Box: return single(st, "residuate-box", sys, target, {{Formula::inv_dia(a), b.child(0)}});
      case Op::Not: return single(st, "residuate-neg", sys, target, {{b.child(0), Formula::neg(a)}});
      case Op::At:
        return twofold(st, "residuate-at", sys, target, {{a, Formula::bottom()}},
                       {{nom(b.name()), b.child(0)}});
      case Op::Or: {
        const Formula& other = b.child(1 - keep);
        return single(st, "residuate-or", sys, target,
                      {{Formula::conj(a, Formula::neg(other)), b.child(keep)}});
      }
      case Op::Implies:
        if (keep == 1) {
          return single(st, "residuate-implies", sys, target, {{Formula::conj(a, b.child(0)), b.child(1)}});
        }
        return single(st, "residuate-implies", sys, target,
                      {{b.child(0), Formula::implies(a, b.child(1))}});
      default: throw RuleNotApplicable(std::string("no inner rule for a <= ") + op_name(b.op()));
    }
  }
  const int keep = isolate.value_or(0);
  switch (a.op()) {
    case Op::Or: return single(st, "split-or", sys, target, {{a.child(0), b}, {a.child(1), b}});
    case Op::Dia: return single(st, "residuate-dia", sys, target, {{a.child(0), Formula::inv_box(b)}});
    case Op::Not: return single(st, "residuate-neg", sys, target, {{Formula::neg(b), a.child(0)}});
    case Op::At:
      return twofold(st, "residuate-at", sys, target, {{Formula::top(), b}},
                     {{a.child(0), negnom(a.name())}});
    case Op::And:
      return single(st, "residuate-and", sys, target,
                    {{a.child(keep), Formula::implies(a.child(1 - keep), b)}});
    default: throw RuleNotApplicable(std::string("no inner rule for ") + op_name(a.op()) + " <= b");
  }
}

RuleResult ackermann(const System& sys, const std::string& p, Handedness hand) {
  const bool right = hand == Handedness::Right;
  const Formula pv = Formula::var(p);
  std::vector<Formula> bounds;
  RuleResult r{Stage::Ackermann, right ? "ackermann-right(" + p + ")" : "ackermann-left(" + p + ")", {}, {}, {}};
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < sys.antecedent.size(); ++k) {
    const Inequality& ineq = sys.antecedent[k];
    const Formula& near = right ? ineq.rhs : ineq.lhs;
    const Formula& far = right ? ineq.lhs : ineq.rhs;
    if (near == pv && !occurs(far, p)) {
      bounds.push_back(far);
      r.consumed.push_back(k);
      continue;
    }
    bool lpos = false, lneg = false, rpos = false, rneg = false;
    polarity(ineq.lhs, p, true, lpos, lneg);
    polarity(ineq.rhs, p, true, rpos, rneg);
    const bool ok = right ? (!lneg && !rpos) : (!lpos && !rneg);
    if (!ok) throw AckermannBlocked(p, print(ineq));
    kept.push_back(k);
  }
  const Formula theta = right ? disj_all(bounds) : conj_all(bounds);
  SortedSubstitution s;
  s.props[p] = theta;
  System out;
  out.head_left = sys.head_left;
  out.head_right = sys.head_right;
  r.produced.emplace_back();
  for (std::size_t k : kept) {
    const Inequality& ineq = sys.antecedent[k];
    if (ineq.mentions(p)) {
      r.consumed.push_back(k);
      r.produced.back().push_back(out.antecedent.size());
      out.antecedent.push_back({apply_subst(s, ineq.lhs), apply_subst(s, ineq.rhs)});
    } else {
      out.antecedent.push_back(ineq);
    }
  }
  std::sort(r.consumed.begin(), r.consumed.end());
  r.systems.push_back(std::move(out));
  return r;
}

std::vector<std::size_t> Derivation::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].children.empty()) out.push_back(k);
  }
  return out;
}

bool Derivation::uses_stage(Stage s) const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const DerivationNode& n) { return n.step && n.step->stage == s; });
}

namespace {

class Engine {
 public:
  Engine(const OrderType& e, const DependenceOrder& omega, Mode mode, NominalSupply& supply)
      : e_(e), omega_(omega), mode_(mode), supply_(supply) {}

  /// Next rule for sys, or nullopt with `why` set when nothing applies.
  std::optional<RuleResult> next(const System& sys, std::string& why) {
    if (auto r = at_decomposition(sys)) return r;
    if (auto r = outer(sys)) return r;
    if (mode_ == Mode::Full) {
      if (auto r = inner(sys)) return r;
    }
    return eliminate(sys, why);
  }

 private:
  Flavor base_flavor() const { return mode_ == Mode::Full ? Flavor::Inductive : Flavor::Skeletal; }
  Flavor extended_flavor() const {
    return mode_ == Mode::Full ? Flavor::ExtendedInductive : Flavor::ExtendedSkeletal;
  }

  std::optional<RuleResult> at_decomposition(const System& sys) {
    for (std::size_t k = 0; k < sys.antecedent.size(); ++k) {
      const Inequality& ineq = sys.antecedent[k];
      const Formula* theta = nullptr;
      Sign sign = Sign::Plus;
      if (ineq.is_nominal_lhs()) {
        theta = &ineq.rhs;
      } else if (ineq.is_negnominal_rhs()) {
        theta = &ineq.lhs;
        sign = Sign::Minus;
      } else {
        continue;
      }
      const SignedNode tree = build_signed_tree(*theta, sign);
      for (const Branch& b : critical_branches(tree, e_)) {
        if (decompose_branch(b, base_flavor())) continue;
        auto d = decompose_branch(b, extended_flavor());
        if (!d || !d->terminator) continue;
        return stage21_decompose(sys, k, d->terminator->path);
      }
    }
    return std::nullopt;
  }

  bool critical(const Inequality& ineq) const {
    return has_critical(ineq.lhs, Sign::Minus, e_) || has_critical(ineq.rhs, Sign::Plus, e_);
  }

  std::optional<RuleResult> outer(const System& sys) {
    for (std::size_t k = 0; k < sys.antecedent.size(); ++k) {
      const Inequality& ineq = sys.antecedent[k];
      if (!(ineq.is_nominal_lhs() || ineq.is_negnominal_rhs()) || !critical(ineq)) continue;
      try {
        return stage22_apply(sys, k, supply_);
      } catch (const RuleNotApplicable&) {
      }
    }
    return std::nullopt;
  }

  std::optional<RuleResult> inner(const System& sys) {
    for (std::size_t k = 0; k < sys.antecedent.size(); ++k) {
      const Inequality& ineq = sys.antecedent[k];
      const bool lc = has_critical(ineq.lhs, Sign::Minus, e_);
      const bool rc = has_critical(ineq.rhs, Sign::Plus, e_);
      try {
        if (rc && !lc && !ineq.rhs.is_var()) {
          std::optional<int> keep;
          const Formula& b = ineq.rhs;
          if (b.is(Op::Or)) keep = has_critical(b.child(1), Sign::Plus, e_) ? 1 : 0;
          if (b.is(Op::Implies)) keep = has_critical(b.child(1), Sign::Plus, e_) ? 1 : 0;
          return stage23_apply(sys, k, Side::Rhs, keep);
        }
        if (lc && !rc && !ineq.lhs.is_var()) {
          std::optional<int> keep;
          const Formula& a = ineq.lhs;
          if (a.is(Op::And)) keep = has_critical(a.child(0), Sign::Minus, e_) ? 0 : 1;
          return stage23_apply(sys, k, Side::Lhs, keep);
        }
      } catch (const RuleNotApplicable&) {
      }
    }
    return std::nullopt;
  }

  std::optional<RuleResult> eliminate(const System& sys, std::string& why) {
    const Symbols s = sys.symbols();
    std::string first_block;
    for (const std::string& p : omega_.maximal_first(s.vars)) {
      const bool one = !e_.contains(p) || e_.at(p) == OrderValue::One;
      try {
        return ackermann(sys, p, one ? Handedness::Right : Handedness::Left);
      } catch (const AckermannBlocked& ex) {
        if (first_block.empty()) first_block = ex.what();
      }
    }
    why = first_block.empty() ? "no rule applies" : first_block;
    return std::nullopt;
  }

  const OrderType& e_;
  const DependenceOrder& omega_;
  Mode mode_;
  NominalSupply& supply_;
};

}  // namespace

FOFormula output_fo(const std::vector<System>& pure_systems) {
  std::vector<FOFormula> parts;
  parts.reserve(pure_systems.size());
  for (const auto& sys : pure_systems) {
    parts.push_back(universal_closure(st_quasi(sys), sys.symbols().noms));
  }
  return fo_conj_all(parts);
}

AlbaOutput run_alba(const Inequality& ineq, const Certificate& cert, Mode mode, std::size_t max_steps) {
  AlbaOutput out;
  out.epsilon = cert.epsilon;
  out.omega = cert.omega;
  for (const auto& v : variables_of(ineq)) {
    if (!out.epsilon.contains(v)) out.epsilon.set(v, OrderValue::One);
  }
  NominalSupply supply;
  out.trace.input = ineq;
  DerivationNode root;
  root.system = first_approximation(ineq, supply);
  out.trace.nodes.push_back(std::move(root));

  Engine engine(out.epsilon, out.omega, mode, supply);
  std::vector<std::size_t> stack{0};
  std::size_t steps = 0;
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    if (steps >= max_steps) {
      out.trace.nodes[id].status = NodeStatus::Stuck;
      out.trace.nodes[id].diagnostic = "step limit reached";
      continue;
    }
    const System sys = out.trace.nodes[id].system;
    if (sys.symbols().vars.empty()) {
      out.trace.nodes[id].status = NodeStatus::Pure;
      continue;
    }
    ++steps;
    std::string why;
    std::optional<RuleResult> r = engine.next(sys, why);
    if (!r) {
      out.trace.nodes[id].status = NodeStatus::Stuck;
      out.trace.nodes[id].diagnostic = why;
      continue;
    }
    std::vector<std::size_t> kids;
    for (const System& child : r->systems) {
      DerivationNode n;
      n.system = child;
      kids.push_back(out.trace.nodes.size());
      out.trace.nodes.push_back(std::move(n));
    }
    out.trace.nodes[id].children = kids;
    out.trace.nodes[id].step = std::move(r);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }

  out.success = true;
  for (std::size_t leaf : out.trace.leaves()) {
    const DerivationNode& n = out.trace.nodes[leaf];
    if (n.status == NodeStatus::Pure) {
      out.pure_systems.push_back(n.system);
    } else {
      if (out.success) out.diagnostic = n.diagnostic + " in " + print(n.system);
      out.success = false;
    }
  }
  if (out.success) {
    out.fo_sentence = output_fo(out.pure_systems);
  } else {
    out.pure_systems.clear();
  }
  return out;
}

AlbaOutput run_alba(const Inequality& ineq, const AlbaOptions& options) {
  if (options.certificate) return run_alba(ineq, *options.certificate, options.mode, options.max_steps);
  const Classification c = classify(ineq);
  const Flavor f = options.mode == Mode::Full ? Flavor::ExtendedInductive : Flavor::ExtendedSkeletal;
  if (const auto& cert = c.certificate(f)) return run_alba(ineq, *cert, options.mode, options.max_steps);

  const std::vector<std::string> vars = variables_of(ineq);
  std::optional<AlbaOutput> first;
  const unsigned long count = 1UL << std::min<std::size_t>(vars.size(), 12);
  for (unsigned long mask = 0; mask < count; ++mask) {
    Certificate cert{OrderType::from_mask(vars, mask), {}};
    AlbaOutput out = run_alba(ineq, cert, options.mode, options.max_steps);
    out.not_in_fragment = true;
    if (out.success) return out;
    if (!first) first = std::move(out);
  }
  return std::move(*first);
}

AlbaOutput run_alba(const Formula& f, const AlbaOptions& options) {
  return run_alba(as_inequality(f), options);
}

namespace {

void first_appearance(const Formula& f, std::vector<std::string>& order) {
  if ((f.is(Op::Nom) || f.is(Op::At)) && is_reserved_nominal(f.name()) &&
      std::find(order.begin(), order.end(), f.name()) == order.end()) {
    order.push_back(f.name());
  }
  for (std::size_t i = 0; i < f.arity(); ++i) first_appearance(f.child(i), order);
}

}  // namespace

System canonical_fresh_names(const System& sys) {
  std::vector<std::string> order;
  for (const auto& ineq : sys.antecedent) {
    first_appearance(ineq.lhs, order);
    first_appearance(ineq.rhs, order);
  }
  for (const auto& h : {sys.head_left, sys.head_right}) {
    if (is_reserved_nominal(h) && std::find(order.begin(), order.end(), h) == order.end()) {
      order.push_back(h);
    }
  }
  SortedSubstitution s;
  for (std::size_t k = 0; k < order.size(); ++k) s.noms[order[k]] = "n" + std::to_string(k);
  auto rename = [&](const std::string& n) {
    auto it = s.noms.find(n);
    return it == s.noms.end() ? n : it->second;
  };
  System out;
  out.head_left = rename(sys.head_left);
  out.head_right = rename(sys.head_right);
  for (const auto& ineq : sys.antecedent) {
    out.antecedent.push_back({apply_subst(s, ineq.lhs), apply_subst(s, ineq.rhs)});
  }
  return out;
}

std::string trace_json(const AlbaOutput& out, int indent) {
  using nlohmann::json;
  json j;
  j["input"] = print(out.trace.input);
  json eps = json::object();
  for (const auto& [v, val] : out.epsilon.values()) eps[v] = val == OrderValue::One ? "1" : "d";
  json omega = json::array();
  for (const auto& [a, b] : out.omega.pairs()) omega.push_back({a, b});
  j["certificate"] = {{"epsilon", eps}, {"omega", omega}, {"in_fragment", !out.not_in_fragment}};
  json tree = json::array();
  for (std::size_t k = 0; k < out.trace.nodes.size(); ++k) {
    const DerivationNode& n = out.trace.nodes[k];
    json node;
    node["id"] = k;
    node["system"] = print(n.system);
    if (n.step) {
      node["stage"] = stage_name(n.step->stage);
      node["rule"] = n.step->rule;
      node["consumed"] = n.step->consumed;
      node["produced"] = n.step->produced;
    } else {
      node["stage"] = nullptr;
      node["rule"] = nullptr;
      node["consumed"] = json::array();
      node["produced"] = json::array();
      node["status"] = n.status == NodeStatus::Pure ? "pure" : "stuck";
      if (!n.diagnostic.empty()) node["diagnostic"] = n.diagnostic;
    }
    node["children"] = n.children;
    tree.push_back(std::move(node));
  }
  j["tree"] = std::move(tree);
  j["status"] = out.success ? "success" : "failure";
  json pure = json::array();
  for (const auto& s : out.pure_systems) pure.push_back(print(s));
  j["pure_systems"] = std::move(pure);
  j["fo"] = out.success ? json(print(out.fo_sentence)) : json(nullptr);
  if (!out.success) j["diagnostic"] = out.diagnostic;
  return j.dump(indent);
}

}  // namespace alba
