// Test-side oracles: a set-based Kripke evaluator written independently of the
// bitmask evaluator, and helpers for comparing systems up to fresh names.
#ifndef ALBA_TEST_SUPPORT_HPP
#define ALBA_TEST_SUPPORT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "alba/engine.hpp"
#include "alba/fol.hpp"
#include "alba/semantics.hpp"
#include "alba/syntax.hpp"

namespace alba {
// Readable gtest failure messages.
inline void PrintTo(const Formula& f, std::ostream* os) { *os << print(f); }
inline void PrintTo(const Inequality& i, std::ostream* os) { *os << print(i); }
inline void PrintTo(const System& s, std::ostream* os) { *os << print(s); }
}  // namespace alba

namespace alba::testing {

struct NaiveModel {
  int size = 1;
  std::set<std::pair<int, int>> rel;
  std::map<std::string, std::set<int>> props;
  std::map<std::string, int> noms;
};

inline NaiveModel to_naive(const KripkeModel& m) {
  NaiveModel n;
  n.size = static_cast<int>(m.frame.size());
  for (auto e : m.frame.edges()) n.rel.insert(e);
  for (const auto& [p, mask] : m.props) {
    for (int w = 0; w < n.size; ++w) {
      if ((mask >> w) & 1U) n.props[p].insert(w);
    }
    n.props[p];
  }
  n.noms = m.noms;
  return n;
}

inline bool naive_eval(const NaiveModel& m, int w, const Formula& f) {
  switch (f.op()) {
    case Op::Var: return m.props.at(f.name()).count(w) != 0;
    case Op::Nom: return m.noms.at(f.name()) == w;
    case Op::Bottom: return false;
    case Op::Top: return true;
    case Op::Not: return !naive_eval(m, w, f.child(0));
    case Op::And: return naive_eval(m, w, f.child(0)) && naive_eval(m, w, f.child(1));
    case Op::Or: return naive_eval(m, w, f.child(0)) || naive_eval(m, w, f.child(1));
    case Op::Implies: return !naive_eval(m, w, f.child(0)) || naive_eval(m, w, f.child(1));
    case Op::Box:
    case Op::Dia:
    case Op::InvBox:
    case Op::InvDia: {
      const bool forward = f.is(Op::Box) || f.is(Op::Dia);
      const bool universal = f.is(Op::Box) || f.is(Op::InvBox);
      for (int v = 0; v < m.size; ++v) {
        const bool linked = forward ? m.rel.count({w, v}) != 0 : m.rel.count({v, w}) != 0;
        if (!linked) continue;
        const bool holds = naive_eval(m, v, f.child(0));
        if (universal && !holds) return false;
        if (!universal && holds) return true;
      }
      return universal;
    }
    case Op::At: return naive_eval(m, m.noms.at(f.name()), f.child(0));
  }
  return false;
}

inline int naive_term(const NaiveModel& m, const FOTerm& t, const std::map<std::string, int>& env) {
  return t.is_variable() ? env.at(t.name) : m.noms.at(t.name);
}

inline bool naive_fo_rec(const NaiveModel& m, const FOFormula& f, std::map<std::string, int>& env) {
  switch (f.op()) {
    case FOOp::True: return true;
    case FOOp::False: return false;
    case FOOp::Rel: return m.rel.count({naive_term(m, f.term(0), env), naive_term(m, f.term(1), env)}) != 0;
    case FOOp::Pred: return m.props.at(f.name()).count(naive_term(m, f.term(0), env)) != 0;
    case FOOp::Eq: return naive_term(m, f.term(0), env) == naive_term(m, f.term(1), env);
    case FOOp::Not: return !naive_fo_rec(m, f.child(0), env);
    case FOOp::And: return naive_fo_rec(m, f.child(0), env) && naive_fo_rec(m, f.child(1), env);
    case FOOp::Or: return naive_fo_rec(m, f.child(0), env) || naive_fo_rec(m, f.child(1), env);
    case FOOp::Implies: return !naive_fo_rec(m, f.child(0), env) || naive_fo_rec(m, f.child(1), env);
    case FOOp::Forall:
    case FOOp::Exists: {
      const bool universal = f.op() == FOOp::Forall;
      const auto saved = env.find(f.name()) == env.end() ? std::optional<int>{} : env[f.name()];
      bool result = universal;
      for (int w = 0; w < m.size; ++w) {
        env[f.name()] = w;
        if (naive_fo_rec(m, f.child(0), env) != universal) {
          result = !universal;
          break;
        }
      }
      if (saved) env[f.name()] = *saved; else env.erase(f.name());
      return result;
    }
  }
  return false;
}

/// Tarskian FO truth over a naive model; quantifiers range over 0..size-1.
inline bool naive_fo(const NaiveModel& m, const FOFormula& f, std::map<std::string, int> env) {
  return naive_fo_rec(m, f, env);
}

inline bool naive_inequality(const NaiveModel& m, const Inequality& ineq) {
  for (int w = 0; w < m.size; ++w) {
    if (naive_eval(m, w, ineq.lhs) && !naive_eval(m, w, ineq.rhs)) return false;
  }
  return true;
}

inline bool naive_quasi(const NaiveModel& m, const System& sys) {
  for (const auto& ineq : sys.antecedent) {
    if (!naive_inequality(m, ineq)) return true;
  }
  return m.noms.at(sys.head_left) != m.noms.at(sys.head_right);
}

/// Every valuation of the given symbols on a frame, by plain counting.
template <typename Fn>
bool naive_all_valuations(const Frame& fr, const std::vector<std::string>& vars,
                          const std::vector<std::string>& noms, Fn&& fn) {
  const int n = static_cast<int>(fr.size());
  NaiveModel m;
  m.size = n;
  for (auto e : fr.edges()) m.rel.insert(e);
  long total = 1;
  for (std::size_t k = 0; k < vars.size(); ++k) total <<= n;
  for (std::size_t k = 0; k < noms.size(); ++k) total *= n;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (const auto& v : vars) {
      auto& ext = m.props[v];
      ext.clear();
      for (int w = 0; w < n; ++w) {
        if ((c >> w) & 1L) ext.insert(w);
      }
      c >>= n;
    }
    for (const auto& i : noms) {
      m.noms[i] = static_cast<int>(c % n);
      c /= n;
    }
    if (!fn(static_cast<const NaiveModel&>(m))) return false;
  }
  return true;
}

/// Validity of a modal formula at every world under every valuation.
inline bool naive_frame_valid(const Frame& fr, const Formula& f) {
  const Symbols s = vars_and_nominals(f);
  return naive_all_valuations(fr, {s.vars.begin(), s.vars.end()}, {s.noms.begin(), s.noms.end()},
                              [&](const NaiveModel& m) {
                                for (int w = 0; w < m.size; ++w) {
                                  if (!naive_eval(m, w, f)) return false;
                                }
                                return true;
                              });
}

/// Truth of a closed FO sentence (no predicates, no constants) on a bare frame.
inline bool naive_frame_satisfies(const Frame& fr, const FOFormula& sentence) {
  NaiveModel m;
  m.size = static_cast<int>(fr.size());
  for (auto e : fr.edges()) m.rel.insert(e);
  return naive_fo(m, sentence, {});
}

inline std::vector<std::string> as_vector(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

inline bool naive_frame_valid(const Frame& fr, const std::vector<System>& systems) {
  Symbols s;
  for (const auto& sys : systems) {
    const Symbols t = sys.symbols();
    s.vars.insert(t.vars.begin(), t.vars.end());
    s.noms.insert(t.noms.begin(), t.noms.end());
  }
  return naive_all_valuations(fr, as_vector(s.vars), as_vector(s.noms), [&](const NaiveModel& m) {
    return std::all_of(systems.begin(), systems.end(), [&](const System& sys) { return naive_quasi(m, sys); });
  });
}

inline Formula P(const std::string& text) { return parse(text, ParseOptions{true}); }

inline Inequality I(const std::string& lhs, const std::string& rhs) { return {P(lhs), P(rhs)}; }

/// "a <= b; c <= d" with the head 'i0 <= ~'i1.
inline System S(const std::vector<std::pair<std::string, std::string>>& ineqs, std::string hl = "i0",
                std::string hr = "i1") {
  System s;
  s.head_left = std::move(hl);
  s.head_right = std::move(hr);
  for (const auto& [l, r] : ineqs) s.antecedent.push_back(I(l, r));
  return s;
}

inline std::set<std::string> canonical_set(const std::vector<System>& systems) {
  std::set<std::string> out;
  for (const auto& s : systems) out.insert(print(canonical_fresh_names(s)));
  return out;
}

}  // namespace alba::testing

#endif  // ALBA_TEST_SUPPORT_HPP
