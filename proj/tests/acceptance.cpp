// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.
// Every semantic check goes through the test-side naive evaluators.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alba/engine.hpp"
#include "alba/fol.hpp"
#include "alba/generators.hpp"
#include "alba/hybrid_translation.hpp"
#include "alba/semantics.hpp"
#include "alba/signed_tree.hpp"
#include "alba/syntax.hpp"
#include "classify_oracle.hpp"
#include "test_support.hpp"

namespace alba {
namespace {

using testing::naive_eval;
using testing::naive_fo;
using testing::NaiveModel;
using testing::P;
using testing::S;

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", seconds);
  return buf;
}

AlbaOptions mode_options(Mode m) { return AlbaOptions{m, std::nullopt, 20000}; }

// ---- 1

Verdict golden() {
  const Formula f = P("[]<>@'i <>p -> <>[]p");
  const std::set<std::string> expected = testing::canonical_set(
      {S({{"'i0", "[]<>true"}, {"'i", "<>'n0"}, {"<>[]'n0", "~'i1"}}),
       S({{"'i0", "[]<>false"}, {"<>[]false", "~'i1"}})});
  Clock clock;
  const AlbaOutput full = run_alba(f, mode_options(Mode::Full));
  const AlbaOutput restricted = run_alba(f, mode_options(Mode::Restricted));
  const double t = clock.seconds();

  Verdict v;
  std::ostringstream msg;
  if (!full.success || !restricted.success) {
    v.pass = false;
    msg << "run failed: " << full.diagnostic << restricted.diagnostic << "; ";
  }
  if (testing::canonical_set(full.pure_systems) != expected) {
    v.pass = false;
    msg << "full output differs; ";
  }
  if (testing::canonical_set(restricted.pure_systems) != expected) {
    v.pass = false;
    msg << "restricted output differs; ";
  }
  bool same_trace = full.trace.nodes.size() == restricted.trace.nodes.size();
  for (std::size_t k = 0; same_trace && k < full.trace.nodes.size(); ++k) {
    const auto& a = full.trace.nodes[k];
    const auto& b = restricted.trace.nodes[k];
    same_trace = a.system == b.system && a.children == b.children && a.step.has_value() == b.step.has_value() &&
                 (!a.step || a.step->rule == b.step->rule);
  }
  if (!same_trace) {
    v.pass = false;
    msg << "traces differ; ";
  }
  if (restricted.trace.uses_stage(Stage::Inner)) {
    v.pass = false;
    msg << "restricted trace has an inner step; ";
  }
  if (t >= 1.0) {
    v.pass = false;
    msg << "too slow; ";
  }
  msg << expected.size() << " pure systems, identical traces of " << full.trace.nodes.size()
      << " nodes, no inner step, " << fmt(t);
  v.detail = msg.str();
  return v;
}

// ---- 2

Verdict classification() {
  struct Case {
    const char* text;
    Flavor yes;
    Flavor no;
  };
  const std::vector<Case> cases{{"[]@'i <>[]p -> <>[]p", Flavor::ExtendedInductive, Flavor::Inductive},
                                {"[]@'i <>p -> <>[]p", Flavor::ExtendedSkeletal, Flavor::Skeletal}};
  Verdict v;
  std::ostringstream msg;
  for (const auto& c : cases) {
    const Inequality ineq = as_inequality(P(c.text));
    const Classification cl = classify(ineq);
    const bool yes = cl.is(c.yes) && testing::oracle::oracle_is(ineq, c.yes);
    const bool no = !cl.is(c.no) && !testing::oracle::oracle_is(ineq, c.no);
    const auto& cert = cl.certificate(c.yes);
    const bool cert_ok = cert && cert->epsilon == OrderType::parse("p=1") && cert->omega.empty();
    if (!(yes && no && cert_ok)) v.pass = false;
    msg << c.text << ": " << flavor_name(c.yes) << "=" << yes << " not-" << flavor_name(c.no) << "=" << no;
    if (cert) msg << " eps={" << to_string(cert->epsilon) << "} omega=" << to_string(cert->omega);
    msg << "; ";
  }
  v.detail = msg.str();
  return v;
}

// ---- 3

Verdict corpus() {
  Clock clock;
  Verdict v;
  std::ostringstream msg;
  struct Run {
    Flavor flavor;
    Mode mode;
    std::uint64_t seed;
  };
  for (const Run& r : {Run{Flavor::ExtendedInductive, Mode::Full, 2026},
                       Run{Flavor::ExtendedSkeletal, Mode::Restricted, 2027}}) {
    CorpusOptions opts;
    opts.flavor = r.flavor;
    const std::vector<Formula> formulas = generate_corpus(r.seed, 200, opts);
    std::size_t members = 0, ok = 0, strict = 0;
    const Flavor base = r.flavor == Flavor::ExtendedInductive ? Flavor::Inductive : Flavor::Skeletal;
    for (const Formula& f : formulas) {
      const Inequality ineq = as_inequality(f);
      if (testing::oracle::oracle_is(ineq, r.flavor) && f.depth() <= 5 && vars_and_nominals(f).vars.size() <= 3) {
        ++members;
      }
      strict += testing::oracle::oracle_is(ineq, base) ? 0 : 1;
      const AlbaOutput out = run_alba(f, mode_options(r.mode));
      const bool pure = std::all_of(out.pure_systems.begin(), out.pure_systems.end(),
                                    [](const System& s) { return s.is_pure(); });
      const bool clean = r.mode == Mode::Full || !out.trace.uses_stage(Stage::Inner);
      if (out.success && pure && clean) ++ok;
    }
    if (members != formulas.size() || ok != formulas.size() || formulas.size() < 200) v.pass = false;
    msg << flavor_name(r.flavor) << " (" << (r.mode == Mode::Full ? "full" : "restricted") << "): " << ok << "/"
        << formulas.size() << " succeed, " << members << " confirmed members, " << strict << " outside "
        << flavor_name(base) << "; ";
  }
  const double t = clock.seconds();
  if (t >= 60.0) v.pass = false;
  msg << fmt(t);
  v.detail = msg.str();
  return v;
}

// ---- 4

Verdict soundness() {
  Clock clock;
  Verdict v;
  std::size_t formulas = 0, frames = 0, skipped = 0, failures = 0, disagreements = 0;
  std::string first_bad;
  const std::vector<Frame> all_frames = enumerate_frames(3);
  struct Part {
    Flavor flavor;
    Mode mode;
    std::size_t n;
  };
  for (const Part& part : {Part{Flavor::ExtendedInductive, Mode::Full, 30},
                           Part{Flavor::ExtendedSkeletal, Mode::Restricted, 20}}) {
    CorpusOptions opts;
    opts.flavor = part.flavor;
    opts.max_vars = 2;
    for (const Formula& f : generate_corpus(404, part.n, opts)) {
      ++formulas;
      const AlbaOutput out = run_alba(f, mode_options(part.mode));
      if (!out.success) {
        ++failures;
        if (first_bad.empty()) first_bad = print(f) + " did not reduce";
        continue;
      }
      const Symbols s = vars_and_nominals(f);
      for (const Frame& fr : all_frames) {
        if (valuation_bits(s.vars.size(), s.noms.size(), fr.size()) > kDefaultValuationBudget) {
          ++skipped;
          continue;
        }
        ++frames;
        const bool modal = testing::naive_frame_valid(fr, f);
        const bool fo = testing::naive_frame_satisfies(fr, out.fo_sentence);
        if (modal != fo) {
          ++disagreements;
          if (first_bad.empty()) first_bad = print(f);
          break;
        }
      }
    }
  }
  const double t = clock.seconds();
  v.pass = failures == 0 && disagreements == 0 && formulas == 50 && t < 600.0;
  std::ostringstream msg;
  msg << formulas << " formulas, " << frames << " frame checks up to 3 worlds, " << skipped
      << " skipped over budget, " << disagreements << " disagreements, " << failures << " failed runs";
  if (!first_bad.empty()) msg << " (first: " << first_bad << ")";
  msg << ", " << fmt(t);
  v.detail = msg.str();
  return v;
}

// ---- 5

Verdict rule_soundness() {
  Clock clock;
  // Pool per stage, then a stratified sample so rarely used stages are covered.
  std::map<Stage, std::vector<std::pair<System, RuleResult>>> pool;
  struct Source {
    Flavor flavor;
    Mode mode;
  };
  for (const Source& src : {Source{Flavor::ExtendedInductive, Mode::Full}, Source{Flavor::Inductive, Mode::Full},
                            Source{Flavor::ExtendedSkeletal, Mode::Restricted}}) {
    CorpusOptions opts;
    opts.flavor = src.flavor;
    opts.max_vars = 2;
    for (const Formula& f : generate_corpus(505, 300, opts)) {
      const AlbaOutput out = run_alba(f, mode_options(src.mode));
      for (const auto& node : out.trace.nodes) {
        if (node.step) pool[node.step->stage].emplace_back(node.system, *node.step);
      }
    }
  }
  std::mt19937_64 rng(5);
  const std::size_t wanted = 1000;
  const std::size_t quota = wanted / pool.size();
  std::vector<std::pair<System, RuleResult>> steps, rest;
  for (auto& [stage, items] : pool) {
    std::shuffle(items.begin(), items.end(), rng);
    const std::size_t take = std::min(quota, items.size());
    steps.insert(steps.end(), items.begin(), items.begin() + static_cast<std::ptrdiff_t>(take));
    rest.insert(rest.end(), items.begin() + static_cast<std::ptrdiff_t>(take), items.end());
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  for (std::size_t k = 0; steps.size() < wanted && k < rest.size(); ++k) steps.push_back(rest[k]);
  Verdict v;
  if (steps.size() < wanted) {
    v.pass = false;
    v.detail = "only " + std::to_string(steps.size()) + " rule applications available";
    return v;
  }
  const std::vector<Frame> frames = enumerate_frames(2);
  std::map<std::string, std::size_t> per_stage;
  std::size_t bad = 0;
  std::string first_bad;
  for (const auto& [premise, step] : steps) {
    ++per_stage[stage_name(step.stage)];
    for (const Frame& fr : frames) {
      if (testing::naive_frame_valid(fr, std::vector<System>{premise}) !=
          testing::naive_frame_valid(fr, step.systems)) {
        ++bad;
        if (first_bad.empty()) first_bad = step.rule + " on " + print(premise);
        break;
      }
    }
  }
  const double t = clock.seconds();
  v.pass = bad == 0;
  std::ostringstream msg;
  msg << wanted - bad << "/" << wanted << " applications sound on frames up to 2 worlds (";
  bool first = true;
  for (const auto& [stage, n] : per_stage) {
    msg << (first ? "" : ", ") << stage << " " << n;
    first = false;
  }
  msg << ")";
  if (!first_bad.empty()) msg << "; first failure: " << first_bad;
  msg << ", " << fmt(t);
  v.detail = msg.str();
  return v;
}

// ---- 6

Inequality random_inequality(std::mt19937_64& rng, const RandomFormulaOptions& opts) {
  Formula a = random_formula(rng, opts);
  return {a, random_formula(rng, opts)};
}

System random_quasi(std::mt19937_64& rng, const RandomFormulaOptions& opts, bool shaped) {
  System sys;
  sys.head_left = opts.noms[rng() % opts.noms.size()];
  sys.head_right = opts.noms[rng() % opts.noms.size()];
  const std::size_t n = rng() % 4;
  for (std::size_t k = 0; k < n; ++k) {
    if (!shaped) {
      sys.antecedent.push_back(random_inequality(rng, opts));
      continue;
    }
    const Formula g = random_formula(rng, opts);
    const Formula i = Formula::nom(opts.noms[rng() % opts.noms.size()]);
    sys.antecedent.push_back(rng() % 2 ? Inequality{i, g} : Inequality{g, Formula::neg(i)});
  }
  return sys;
}

KripkeModel model_for(std::mt19937_64& rng, const RandomFormulaOptions& opts) {
  const std::size_t size = 1 + rng() % 4;
  return random_model(rng(), size, opts.vars, opts.noms, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0);
}

Verdict standard_translation() {
  Clock clock;
  std::mt19937_64 rng(606);
  RandomFormulaOptions opts;
  opts.inverse = true;
  const FOTerm x = FOTerm::variable("x");
  std::size_t mismatches = 0, points = 0;
  std::string first_bad;
  for (int k = 0; k < 1000; ++k) {
    const Formula f = random_formula(rng, opts);
    const KripkeModel m = model_for(rng, opts);
    const NaiveModel nm = testing::to_naive(m);
    const FOFormula st = st_formula(f, x);
    for (int w = 0; w < nm.size; ++w) {
      ++points;
      const bool modal = naive_eval(nm, w, f);
      if (naive_fo(nm, st, {{"x", w}}) != modal || eval_fo(m, st, {{"x", w}}) != modal) {
        ++mismatches;
        if (first_bad.empty()) first_bad = print(f);
      }
    }
  }
  opts.max_depth = 3;
  std::size_t ineq_bad = 0, quasi_bad = 0;
  for (int k = 0; k < 500; ++k) {
    const Inequality ineq = random_inequality(rng, opts);
    const System sys = random_quasi(rng, opts, false);
    const KripkeModel m = model_for(rng, opts);
    const NaiveModel nm = testing::to_naive(m);
    if (naive_fo(nm, st_inequality(ineq), {}) != testing::naive_inequality(nm, ineq)) ++ineq_bad;
    if (naive_fo(nm, st_quasi(sys), {}) != testing::naive_quasi(nm, sys)) ++quasi_bad;
  }
  Verdict v;
  v.pass = mismatches == 0 && ineq_bad == 0 && quasi_bad == 0;
  std::ostringstream msg;
  msg << "1000 formula/model pairs (" << points << " worlds): " << mismatches << " mismatches; 500 inequalities: "
      << ineq_bad << "; 500 quasi-inequalities: " << quasi_bad;
  if (!first_bad.empty()) msg << " (first: " << first_bad << ")";
  msg << ", " << fmt(clock.seconds());
  v.detail = msg.str();
  return v;
}

// ---- 7

bool globally(const NaiveModel& m, const Formula& f) {
  for (int w = 0; w < m.size; ++w) {
    if (!naive_eval(m, w, f)) return false;
  }
  return true;
}

Verdict hybrid_translation() {
  Clock clock;
  std::mt19937_64 rng(707);
  RandomFormulaOptions opts;
  opts.max_depth = 3;
  opts.noms = {"i", "j", "k"};
  std::size_t ineq_bad = 0, quasi_bad = 0;
  for (int k = 0; k < 500; ++k) {
    const Formula g = random_formula(rng, opts);
    const Formula i = Formula::nom(opts.noms[rng() % 3]);
    const Inequality ineq = rng() % 2 ? Inequality{i, g} : Inequality{g, Formula::neg(i)};
    const System sys = random_quasi(rng, opts, true);
    const NaiveModel m = testing::to_naive(model_for(rng, opts));
    if (globally(m, tr_inequality(ineq)) != testing::naive_inequality(m, ineq)) ++ineq_bad;
    if (globally(m, tr_quasi(sys)) != testing::naive_quasi(m, sys)) ++quasi_bad;
  }
  Verdict v;
  v.pass = ineq_bad == 0 && quasi_bad == 0;
  v.detail = "500 inequalities: " + std::to_string(ineq_bad) + " mismatches; 500 quasi-inequalities: " +
             std::to_string(quasi_bad) + " mismatches, " + fmt(clock.seconds());
  return v;
}

// ---- 8

/// Context with one occurrence of the hole variable `h`, made positive.
Formula random_context(std::mt19937_64& rng, const RandomFormulaOptions& side, int depth, bool positive) {
  if (depth == 0) {
    const Formula h = Formula::var("h");
    return positive ? h : Formula::neg(h);
  }
  auto other = [&] { return random_formula(rng, side); };
  switch (rng() % 8) {
    case 0: return Formula::neg(random_context(rng, side, depth - 1, !positive));
    case 1: return Formula::conj(random_context(rng, side, depth - 1, positive), other());
    case 2: return Formula::disj(other(), random_context(rng, side, depth - 1, positive));
    case 3: return Formula::implies(random_context(rng, side, depth - 1, !positive), other());
    case 4: return Formula::implies(other(), random_context(rng, side, depth - 1, positive));
    case 5: return Formula::box(random_context(rng, side, depth - 1, positive));
    case 6: return Formula::dia(random_context(rng, side, depth - 1, positive));
    default: return Formula::at(side.noms[rng() % side.noms.size()], random_context(rng, side, depth - 1, positive));
  }
}

Formula fill(const Formula& ctx, const Formula& hole) {
  SortedSubstitution s;
  s.props["h"] = hole;
  return apply_subst(s, ctx);
}

Verdict decomposition() {
  Clock clock;
  std::mt19937_64 rng(808);
  RandomFormulaOptions side;
  side.max_depth = 1;
  side.vars = {"p", "q"};
  side.noms = {"i", "j"};
  RandomFormulaOptions body = side;
  body.max_depth = 2;
  const std::vector<Frame> frames = enumerate_frames(3);
  std::size_t bad = 0, models = 0;
  std::string first_bad;
  for (int k = 0; k < 100; ++k) {
    const Formula ctx = random_context(rng, side, 1 + static_cast<int>(rng() % 3), true);
    const Formula alpha = random_formula(rng, body);
    const Formula at_alpha = Formula::at("j", alpha);
    const Formula lhs = Formula::at("i", fill(ctx, at_alpha));
    const Formula rhs = Formula::disj(Formula::at("i", fill(ctx, Formula::bottom())),
                                      Formula::conj(Formula::at("i", fill(ctx, Formula::top())), at_alpha));
    const Formula law = Formula::conj(Formula::implies(lhs, rhs), Formula::implies(rhs, lhs));
    for (const Frame& fr : frames) {
      const bool ok = testing::naive_all_valuations(fr, {"p", "q"}, {"i", "j"}, [&](const NaiveModel& m) {
        ++models;
        return globally(m, law);
      });
      if (!ok) {
        ++bad;
        if (first_bad.empty()) first_bad = print(ctx) + " with " + print(alpha);
        break;
      }
    }
  }
  Verdict v;
  v.pass = bad == 0;
  v.detail = "100 positive contexts, " + std::to_string(models) + " models up to 3 worlds, " +
             std::to_string(bad) + " failures" + (first_bad.empty() ? "" : " (first: " + first_bad + ")") +
             ", " + fmt(clock.seconds());
  return v;
}

// ---- 9

Verdict round_trip() {
  Clock clock;
  std::mt19937_64 rng(909);
  RandomFormulaOptions opts;
  opts.inverse = true;
  opts.vars = {"p", "q", "r"};
  opts.max_depth = 6;
  std::size_t bad = 0;
  std::string first_bad;
  for (int k = 0; k < 10000; ++k) {
    const Formula f = random_formula(rng, opts);
    const std::string text = print(f);
    bool same = false;
    try {
      same = parse(text) == f;
    } catch (const ParseError&) {
    }
    if (!same) {
      ++bad;
      if (first_bad.empty()) first_bad = text;
    }
  }
  const double t = clock.seconds();
  Verdict v;
  v.pass = bad == 0 && t < 10.0;
  v.detail = "10000 formulas, " + std::to_string(bad) + " mismatches" +
             (first_bad.empty() ? "" : " (first: " + first_bad + ")") + ", " + fmt(t);
  return v;
}

}  // namespace
}  // namespace alba

int main() {
  using alba::Verdict;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"golden", alba::golden},
      {"classification", alba::classification},
      {"corpus", alba::corpus},
      {"soundness-oracle", alba::soundness},
      {"rule-local-soundness", alba::rule_soundness},
      {"standard-translation", alba::standard_translation},
      {"hybrid-translation", alba::hybrid_translation},
      {"at-decomposition-law", alba::decomposition},
      {"parser-round-trip", alba::round_trip},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = Verdict{false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
