// Command-line front end: parse, classify, correspond, verify, corpus.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "alba/engine.hpp"
#include "alba/generators.hpp"
#include "alba/hybrid_translation.hpp"
#include "alba/oracle.hpp"
#include "alba/semantics.hpp"
#include "alba/signed_tree.hpp"
#include "alba/syntax.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace alba;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailure = 2;
constexpr int kCounterexample = 3;

json epsilon_json(const OrderType& e) {
  json j = json::object();
  for (const auto& [v, val] : e.values()) j[v] = val == OrderValue::One ? "1" : "d";
  return j;
}

json omega_json(const DependenceOrder& o) {
  json j = json::array();
  for (const auto& [a, b] : o.pairs()) j.push_back({a, b});
  return j;
}

std::size_t world_cap(std::size_t requested) {
  if (const char* env = std::getenv("ALBA_MAX_WORLDS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) requested = std::min(requested, static_cast<std::size_t>(cap));
    } catch (const std::exception&) {
      std::cerr << "ignoring ALBA_MAX_WORLDS=" << env << "\n";
    }
  }
  return std::max<std::size_t>(1, std::min<std::size_t>(requested, 4));
}

std::string frame_text(const Frame& fr) {
  std::string out = "|W|=" + std::to_string(fr.size()) + " R={";
  bool first = true;
  for (auto [u, v] : fr.edges()) {
    if (!first) out += ",";
    first = false;
    out += "(" + std::to_string(u) + "," + std::to_string(v) + ")";
  }
  return out + "}";
}

Certificate certificate_for(const Inequality& ineq, const OrderType& given, Mode mode) {
  OrderType e = given;
  for (const auto& v : variables_of(ineq)) {
    if (!e.contains(v)) e.set(v, OrderValue::One);
  }
  const SignedNode plus = build_signed_tree(ineq.lhs, Sign::Plus);
  const SignedNode minus = build_signed_tree(ineq.rhs, Sign::Minus);
  const Flavor f = mode == Mode::Full ? Flavor::ExtendedInductive : Flavor::ExtendedSkeletal;
  const InductiveCheck c = check_inductive({&plus, &minus}, e, DependenceOrder{}, f);
  DependenceOrder omega = DependenceOrder::closure(c.required);
  if (!omega.irreflexive()) omega = DependenceOrder{};
  return {e, omega};
}

int cmd_parse(const std::string& text, bool as_json) {
  const Formula f = parse(text);
  if (as_json) {
    json j{{"input", text}, {"formula", print(f)}, {"depth", f.depth()}, {"size", f.size()},
           {"base", is_base(f)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print(f) << "\n";
  }
  return kOk;
}

int cmd_classify(const std::string& text, bool as_json) {
  const Formula f = parse(text);
  const Classification c = classify(f);
  if (as_json) {
    json j;
    j["input"] = print(f);
    j["fragment"] = json::array();
    json certs = json::object();
    for (Flavor fl : kAllFlavors) {
      if (const auto& cert = c.certificate(fl)) {
        j["fragment"].push_back(flavor_name(fl));
        certs[flavor_name(fl)] = {{"epsilon", epsilon_json(cert->epsilon)},
                                  {"omega_pairs", omega_json(cert->omega)}};
      }
    }
    if (const auto& cert = c.certificate(Flavor::ExtendedInductive)) {
      j["epsilon"] = epsilon_json(cert->epsilon);
      j["omega_pairs"] = omega_json(cert->omega);
    } else {
      j["epsilon"] = nullptr;
      j["omega_pairs"] = json::array();
    }
    j["certificates"] = certs;
    json branches = json::array();
    for (const auto& b : c.branches) {
      branches.push_back({{"leaf", b.leaf}, {"P1", b.p1}, {"P2", b.p2}, {"P3", b.p3}});
    }
    j["branches"] = branches;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "formula: " << print(f) << "\n";
  for (Flavor fl : kAllFlavors) {
    std::cout << flavor_name(fl) << ": ";
    if (const auto& cert = c.certificate(fl)) {
      std::cout << "yes (epsilon: " << to_string(cert->epsilon) << "; omega: " << to_string(cert->omega)
                << ")\n";
    } else {
      std::cout << "no\n";
    }
  }
  for (const auto& b : c.branches) {
    auto seg = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
      return "[" + s + "]";
    };
    std::cout << "branch " << b.leaf << ": P3=" << seg(b.p3) << " P2=" << seg(b.p2) << " P1=" << seg(b.p1)
              << "\n";
  }
  return kOk;
}

AlbaOutput correspond_run(const Formula& f, bool restricted, const std::string& epsilon) {
  AlbaOptions opts;
  opts.mode = restricted ? Mode::Restricted : Mode::Full;
  if (!epsilon.empty()) {
    opts.certificate = certificate_for(as_inequality(f), OrderType::parse(epsilon), opts.mode);
  }
  return run_alba(f, opts);
}

int cmd_correspond(const std::string& text, bool restricted, const std::string& epsilon,
                   const std::string& trace_path, bool emit_hybrid, bool as_json) {
  const Formula f = parse(text);
  const AlbaOutput out = correspond_run(f, restricted, epsilon);
  if (!trace_path.empty()) {
    std::ofstream os(trace_path);
    if (!os) {
      std::cerr << "cannot write " << trace_path << "\n";
      return kUsage;
    }
    os << trace_json(out) << "\n";
  }
  std::string hybrid;
  bool hybrid_ok = true;
  if (emit_hybrid && out.success) {
    try {
      hybrid = print(tr_quasiset(out.pure_systems));
    } catch (const UntranslatableShape& e) {
      hybrid_ok = false;
      hybrid = e.what();
    }
  }
  if (as_json) {
    json j = json::parse(trace_json(out));
    if (emit_hybrid) j["pure_hybrid"] = hybrid_ok ? json(hybrid) : json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "input: " << print(out.trace.input) << "\n";
    std::cout << "epsilon: " << to_string(out.epsilon) << "; omega: " << to_string(out.omega)
              << (out.not_in_fragment ? " (no certificate, best effort)" : "") << "\n";
    std::cout << "status: " << (out.success ? "success" : "failure") << "\n";
    if (out.success) {
      for (const auto& s : out.pure_systems) std::cout << "  " << print(s) << "\n";
      if (emit_hybrid) std::cout << (hybrid_ok ? "hybrid: " : "hybrid: untranslatable: ") << hybrid << "\n";
      std::cout << "fo: " << print(out.fo_sentence) << "\n";
    } else {
      std::cout << "diagnostic: " << out.diagnostic << "\n";
    }
  }
  if (!out.success || !hybrid_ok) return kFailure;
  return kOk;
}

int cmd_verify(const std::string& text, std::size_t max_worlds, bool restricted, bool as_json) {
  const Formula f = parse(text);
  const AlbaOutput out = correspond_run(f, restricted, "");
  max_worlds = world_cap(max_worlds);
  if (!out.success) {
    if (as_json) {
      std::cout << json{{"input", print(f)}, {"status", "failure"}, {"diagnostic", out.diagnostic}}.dump(2)
                << "\n";
    } else {
      std::cout << "FAIL: algorithm failure: " << out.diagnostic << "\n";
    }
    return kFailure;
  }
  const OracleReport r = check_correspondence(f, out, max_worlds);
  if (as_json) {
    json j{{"input", print(f)},
           {"max_worlds", max_worlds},
           {"frames_checked", r.frames_checked},
           {"frames_skipped", r.frames_skipped},
           {"result", r.agrees() ? "PASS" : "FAIL"}};
    if (r.counterexample) {
      j["counterexample"] = {{"size", r.counterexample->size()},
                             {"edges", r.counterexample->edges()},
                             {"modal_valid", r.modal_valid_at_counterexample},
                             {"fo_true", r.fo_true_at_counterexample}};
    }
    std::cout << j.dump(2) << "\n";
  } else if (r.agrees()) {
    std::cout << "PASS: " << r.frames_checked << " frames up to " << max_worlds << " worlds agree";
    if (r.frames_skipped) std::cout << ", " << r.frames_skipped << " skipped over budget";
    std::cout << "\n";
  } else {
    std::cout << "FAIL: frame " << frame_text(*r.counterexample) << ": modal "
              << (r.modal_valid_at_counterexample ? "valid" : "invalid") << ", fo "
              << (r.fo_true_at_counterexample ? "true" : "false") << "\n";
  }
  return r.agrees() ? kOk : kCounterexample;
}

int cmd_corpus(const std::string& fragment, std::size_t n, std::uint64_t seed, bool restricted,
               std::size_t soundness_worlds, bool as_json) {
  CorpusOptions opts;
  bool known = false;
  for (Flavor fl : kAllFlavors) {
    if (fragment == flavor_name(fl)) {
      opts.flavor = fl;
      known = true;
    }
  }
  if (!known) {
    std::cerr << "unknown fragment '" << fragment << "'\n";
    return kUsage;
  }
  const std::vector<Formula> corpus = generate_corpus(seed, n, opts);
  std::size_t ok = 0, agree = 0, checked = 0, skipped = 0;
  json failures = json::array();
  json counterexamples = json::array();
  AlbaOptions ao;
  ao.mode = restricted ? Mode::Restricted : Mode::Full;
  for (const Formula& f : corpus) {
    const AlbaOutput out = run_alba(f, ao);
    if (!out.success) {
      failures.push_back({{"formula", print(f)}, {"diagnostic", out.diagnostic}});
      continue;
    }
    ++ok;
    if (soundness_worlds == 0) continue;
    const OracleReport r = check_correspondence(f, out, world_cap(soundness_worlds));
    skipped += r.frames_skipped;
    ++checked;
    if (r.agrees()) {
      ++agree;
    } else {
      counterexamples.push_back({{"formula", print(f)}, {"frame", frame_text(*r.counterexample)}});
    }
  }
  if (as_json) {
    json j{{"fragment", fragment}, {"mode", restricted ? "restricted" : "full"}, {"seed", seed},
           {"generated", corpus.size()}, {"success", ok}, {"failures", failures}};
    if (soundness_worlds) {
      j["soundness"] = {{"checked", checked}, {"agree", agree}, {"frames_skipped", skipped},
                        {"counterexamples", counterexamples}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "fragment: " << fragment << " mode: " << (restricted ? "restricted" : "full")
              << " seed: " << seed << "\n";
    std::cout << "success: " << ok << "/" << corpus.size() << "\n";
    for (const auto& fl : failures) {
      std::cout << "  failed: " << fl["formula"].get<std::string>() << "\n";
    }
    if (soundness_worlds) {
      std::cout << "soundness: " << agree << "/" << checked << " agree";
      if (skipped) std::cout << " (" << skipped << " frames skipped over budget)";
      std::cout << "\n";
      for (const auto& c : counterexamples) {
        std::cout << "  counterexample: " << c["formula"].get<std::string>() << " on "
                  << c["frame"].get<std::string>() << "\n";
      }
    }
  }
  if (!counterexamples.empty()) return kCounterexample;
  return ok == corpus.size() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correspondence for hybrid logic with @"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  std::string formula;
  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a formula in canonical form");
  parse_cmd->add_option("formula", formula, "Formula text")->required();
  parse_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* classify_cmd = app.add_subcommand("classify", "Report fragment memberships and certificates");
  classify_cmd->add_option("formula", formula, "Formula text")->required();
  classify_cmd->add_flag("--json", as_json, "Machine-readable output");

  bool restricted = false;
  std::string epsilon;
  std::string trace_path;
  bool emit_hybrid = false;
  auto* corr = app.add_subcommand("correspond", "Compute pure systems and the first-order correspondent");
  corr->add_option("formula", formula, "Formula text")->required();
  corr->add_flag("--restricted", restricted, "Skip the inner stage");
  corr->add_option("--epsilon", epsilon, "Order-type, e.g. p=1,q=d");
  corr->add_option("--trace", trace_path, "Write the derivation as JSON");
  corr->add_flag("--emit-pure-hybrid", emit_hybrid, "Print the pure systems as one hybrid formula");
  corr->add_flag("--json", as_json, "Machine-readable output");

  std::size_t max_worlds = 3;
  auto* verify = app.add_subcommand("verify", "Compare frame validity with the correspondent on small frames");
  verify->add_option("formula", formula, "Formula text")->required();
  verify->add_option("--max-worlds", max_worlds, "Largest frame size (capped by ALBA_MAX_WORLDS)");
  verify->add_flag("--restricted", restricted, "Skip the inner stage");
  verify->add_flag("--json", as_json, "Machine-readable output");

  std::string fragment = "extended-inductive";
  std::size_t n = 200;
  std::uint64_t seed = 1;
  std::size_t soundness_worlds = 0;
  auto* corpus = app.add_subcommand("corpus", "Generate a fragment corpus and run the algorithm on it");
  corpus->add_option("--fragment", fragment,
                     "inductive | skeletal | extended-inductive | extended-skeletal");
  corpus->add_option("--n", n, "Number of formulas");
  corpus->add_option("--seed", seed, "Generator seed");
  corpus->add_flag("--restricted", restricted, "Skip the inner stage");
  corpus->add_option("--soundness", soundness_worlds, "Also check correspondence up to this many worlds");
  corpus->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse_cmd) return cmd_parse(formula, as_json);
    if (*classify_cmd) return cmd_classify(formula, as_json);
    if (*corr) return cmd_correspond(formula, restricted, epsilon, trace_path, emit_hybrid, as_json);
    if (*verify) return cmd_verify(formula, max_worlds, restricted, as_json);
    if (*corpus) return cmd_corpus(fragment, n, seed, restricted, soundness_worlds, as_json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
