#include "alba/generators.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace alba {

namespace {

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Formula random_leaf(std::mt19937_64& rng, const RandomFormulaOptions& opts) {
  std::uniform_int_distribution<int> kind(0, 9);
  const int k = kind(rng);
  if (k < 6 && !opts.vars.empty()) return Formula::var(pick(rng, opts.vars));
  if (k < 9 && !opts.noms.empty()) return Formula::nom(pick(rng, opts.noms));
  return chance(rng, 0.5) ? Formula::top() : Formula::bottom();
}

Formula random_rec(std::mt19937_64& rng, const RandomFormulaOptions& opts, std::size_t depth) {
  if (depth == 0 || chance(rng, opts.leaf_bias)) return random_leaf(rng, opts);
  std::vector<Op> ops{Op::Not, Op::And, Op::Or, Op::Implies, Op::Box, Op::Dia};
  if (!opts.noms.empty()) ops.push_back(Op::At);
  if (opts.inverse) {
    ops.push_back(Op::InvBox);
    ops.push_back(Op::InvDia);
  }
  const Op op = pick(rng, ops);
  auto sub = [&] { return random_rec(rng, opts, depth - 1); };
  switch (op) {
    case Op::Not: return Formula::neg(sub());
    case Op::And: {
      Formula a = sub();
      return Formula::conj(a, sub());
    }
    case Op::Or: {
      Formula a = sub();
      return Formula::disj(a, sub());
    }
    case Op::Implies: {
      Formula a = sub();
      return Formula::implies(a, sub());
    }
    case Op::Box: return Formula::box(sub());
    case Op::Dia: return Formula::dia(sub());
    case Op::InvBox: return Formula::inv_box(sub());
    case Op::InvDia: return Formula::inv_dia(sub());
    case Op::At: {
      const std::string n = pick(rng, opts.noms);
      return Formula::at(n, sub());
    }
    default: return random_leaf(rng, opts);
  }
}

// P3At places the closing @; P2Head prefers an outer-only connective right below it.
enum class Phase { P3, P3At, P2Head, P2, P1 };

Formula make_unary(Op op, Formula a, const std::string& nominal = {}) {
  switch (op) {
    case Op::Not: return Formula::neg(std::move(a));
    case Op::Box: return Formula::box(std::move(a));
    case Op::Dia: return Formula::dia(std::move(a));
    case Op::At: return Formula::at(nominal, std::move(a));
    default: throw std::logic_error("not a unary connective");
  }
}

Formula make_binary(Op op, Formula a, Formula b) {
  switch (op) {
    case Op::And: return Formula::conj(std::move(a), std::move(b));
    case Op::Or: return Formula::disj(std::move(a), std::move(b));
    case Op::Implies: return Formula::implies(std::move(a), std::move(b));
    default: throw std::logic_error("not a binary connective");
  }
}

/// Plants critical branches top-down: P3 (any nodes, closed by @), then outer, then inner.
class Planter {
 public:
  Planter(std::mt19937_64& rng, const CorpusOptions& opts) : rng_(rng), opts_(opts) {
    const std::vector<std::string> pool{"p", "q", "r"};
    std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(opts.max_vars, pool.size()));
    vars_.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count(rng_)));
    std::shuffle(vars_.begin(), vars_.end(), rng_);  // position is the rank in the dependence order
    for (const auto& v : vars_) epsilon_[v] = chance(rng_, 0.5);
  }

  Formula side(Sign s, int depth) {
    if (chance(rng_, 0.15)) return noncritical(s, depth, static_cast<int>(vars_.size()));
    const bool p3 = extended() && chance(rng_, 0.7);
    return critical(s, depth, p3 ? Phase::P3 : Phase::P2, 0);
  }

 private:
  bool extended() const {
    return opts_.flavor == Flavor::ExtendedInductive || opts_.flavor == Flavor::ExtendedSkeletal;
  }
  bool inner_allowed() const {
    return opts_.flavor == Flavor::ExtendedInductive || opts_.flavor == Flavor::Inductive;
  }
  /// epsilon_[v] true means order 1, so +v is critical.
  bool is_critical(const std::string& v, Sign s) const { return epsilon_.at(v) == (s == Sign::Plus); }

  Formula leaf_nominal() {
    return chance(rng_, 0.7) ? Formula::nom(pick(rng_, opts_.noms))
                             : (chance(rng_, 0.5) ? Formula::top() : Formula::bottom());
  }

  Formula critical_leaf(Sign s, int depth, int min_rank) {
    std::vector<std::string> direct, flipped;
    for (std::size_t r = static_cast<std::size_t>(min_rank); r < vars_.size(); ++r) {
      (is_critical(vars_[r], s) ? direct : flipped).push_back(vars_[r]);
    }
    if (!direct.empty()) return Formula::var(pick(rng_, direct));
    if (!flipped.empty() && depth >= 1) return Formula::neg(Formula::var(pick(rng_, flipped)));
    return leaf_nominal();
  }

  Formula critical(Sign s, int depth, Phase ph, int min_rank) {
    if (depth <= 0) return critical_leaf(s, depth, min_rank);
    if (ph == Phase::P3) {
      // An inner-only node above the @ keeps the branch out of the base fragments.
      if (depth >= 3 && chance(rng_, 0.8)) {
        const Op blocker = s == Sign::Plus ? Op::Box : Op::Dia;
        return make_unary(blocker, critical(s, depth - 1, Phase::P3At, min_rank));
      }
      if (depth >= 3 && chance(rng_, 0.3)) {
        return node(s, depth, ph, min_rank, {Op::Not, Op::And, Op::Or, Op::Implies, Op::Box, Op::Dia});
      }
      ph = Phase::P3At;
    }
    if (ph == Phase::P3At) {
      const Phase next = chance(rng_, 0.25) && inner_allowed() ? Phase::P1 : Phase::P2Head;
      return Formula::at(pick(rng_, opts_.noms), critical(s, depth - 1, next, min_rank));
    }
    if (ph == Phase::P2Head) {
      if (chance(rng_, 0.75)) {
        const Op outer_only = s == Sign::Plus ? Op::Dia : Op::Box;
        return make_unary(outer_only, critical(s, depth - 1, Phase::P2, min_rank));
      }
      ph = Phase::P2;
    }
    if (chance(rng_, 0.3)) return critical_leaf(s, depth, min_rank);
    if (ph == Phase::P2 && inner_allowed() && chance(rng_, 0.3)) ph = Phase::P1;
    const bool plus = s == Sign::Plus;
    std::vector<Op> ops;
    if (ph == Phase::P2) {
      ops = plus ? std::vector<Op>{Op::Or, Op::And, Op::Dia, Op::Not, Op::At}
                 : std::vector<Op>{Op::And, Op::Or, Op::Box, Op::Not, Op::At, Op::Implies};
    } else {
      ops = plus ? std::vector<Op>{Op::And, Op::Box, Op::Not, Op::At, Op::Or, Op::Implies}
                 : std::vector<Op>{Op::Or, Op::Dia, Op::Not, Op::At, Op::And};
    }
    return node(s, depth, ph, min_rank, ops);
  }

  Formula node(Sign s, int depth, Phase ph, int min_rank, const std::vector<Op>& ops) {
    const Op op = pick(rng_, ops);
    if (op == Op::Not) return Formula::neg(critical(flip(s), depth - 1, ph, min_rank));
    if (op == Op::Box || op == Op::Dia) return make_unary(op, critical(s, depth - 1, ph, min_rank));
    if (op == Op::At) {
      return Formula::at(pick(rng_, opts_.noms), critical(s, depth - 1, ph, min_rank));
    }
    const bool srr = (s == Sign::Plus && (op == Op::Or || op == Op::Implies)) ||
                     (s == Sign::Minus && op == Op::And);
    const std::size_t cont = chance(rng_, 0.5) ? 1 : 0;
    auto child_sign = [&](std::size_t k) { return op == Op::Implies && k == 0 ? flip(s) : s; };
    Formula main;
    Formula sibling;
    if (srr) {
      const int n = static_cast<int>(vars_.size());
      if (min_rank + 1 <= n - 1) {
        const int split = std::uniform_int_distribution<int>(min_rank + 1, n - 1)(rng_);
        main = critical(child_sign(cont), depth - 1, ph, split);
        sibling = noncritical(child_sign(1 - cont), depth - 1, split);
      } else {
        main = critical(child_sign(cont), depth - 1, ph, min_rank);
        sibling = noncritical(child_sign(1 - cont), depth - 1, 0);
      }
    } else {
      main = critical(child_sign(cont), depth - 1, ph, min_rank);
      sibling = chance(rng_, 0.4) ? critical(child_sign(1 - cont), depth - 1, ph, min_rank)
                                  : noncritical(child_sign(1 - cont), depth - 1,
                                                static_cast<int>(vars_.size()));
    }
    return cont == 0 ? make_binary(op, main, sibling) : make_binary(op, sibling, main);
  }

  /// No critical leaves; variables only below `max_rank`.
  Formula noncritical(Sign s, int depth, int max_rank) {
    if (depth <= 0 || chance(rng_, 0.35)) {
      std::vector<std::string> ok;
      for (int r = 0; r < max_rank; ++r) {
        if (!is_critical(vars_[static_cast<std::size_t>(r)], s)) ok.push_back(vars_[static_cast<std::size_t>(r)]);
      }
      if (!ok.empty() && chance(rng_, 0.6)) return Formula::var(pick(rng_, ok));
      return leaf_nominal();
    }
    const std::vector<Op> ops{Op::Not, Op::And, Op::Or, Op::Implies, Op::Box, Op::Dia, Op::At};
    const Op op = pick(rng_, ops);
    switch (op) {
      case Op::Not: return Formula::neg(noncritical(flip(s), depth - 1, max_rank));
      case Op::Box:
      case Op::Dia: return make_unary(op, noncritical(s, depth - 1, max_rank));
      case Op::At: return Formula::at(pick(rng_, opts_.noms), noncritical(s, depth - 1, max_rank));
      default: {
        Formula a = noncritical(op == Op::Implies ? flip(s) : s, depth - 1, max_rank);
        return make_binary(op, a, noncritical(s, depth - 1, max_rank));
      }
    }
  }

  std::mt19937_64& rng_;
  const CorpusOptions& opts_;
  std::vector<std::string> vars_;
  std::map<std::string, bool> epsilon_;
};

}  // namespace

Formula random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opts) {
  return random_rec(rng, opts, opts.max_depth);
}

Formula plant_formula(std::mt19937_64& rng, const CorpusOptions& opts) {
  Planter planter(rng, opts);
  const int side_depth = static_cast<int>(opts.max_depth) - 1;
  const int lhs_depth = std::uniform_int_distribution<int>(1, side_depth)(rng);
  const int rhs_depth = std::uniform_int_distribution<int>(1, side_depth)(rng);
  Formula lhs = planter.side(Sign::Plus, lhs_depth);
  Formula rhs = planter.side(Sign::Minus, rhs_depth);
  return Formula::implies(lhs, rhs);
}

std::vector<Formula> generate_corpus(std::uint64_t seed, std::size_t n, const CorpusOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<Formula> out;
  std::set<Formula> seen;
  std::optional<Flavor> base;
  if (opts.flavor == Flavor::ExtendedInductive) base = Flavor::Inductive;
  if (opts.flavor == Flavor::ExtendedSkeletal) base = Flavor::Skeletal;
  const auto base_cap = static_cast<std::size_t>(static_cast<double>(n) * (1.0 - opts.strict_fraction));
  std::size_t base_count = 0;
  for (std::size_t attempt = 0; attempt < opts.max_attempts && out.size() < n; ++attempt) {
    Formula f = plant_formula(rng, opts);
    if (f.depth() > opts.max_depth) continue;
    const Symbols s = vars_and_nominals(f);
    if (s.vars.empty() || s.vars.size() > opts.max_vars) continue;
    if (seen.count(f)) continue;
    const Classification c = classify(as_inequality(f));
    if (!c.is(opts.flavor)) continue;
    if (base && c.is(*base)) {
      if (base_count >= base_cap) continue;
      ++base_count;
    }
    seen.insert(f);
    out.push_back(f);
  }
  if (out.size() < n) {
    throw std::runtime_error("corpus generation found only " + std::to_string(out.size()) + " of " +
                             std::to_string(n) + " formulas");
  }
  return out;
}

}  // namespace alba
