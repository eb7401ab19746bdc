#include "alba/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace alba {

BudgetExceeded::BudgetExceeded(double bits, double budget)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "valuation space of 2^" << bits << " exceeds budget 2^" << budget;
        return os.str();
      }()),
      bits_(bits) {}

Frame::Frame(std::size_t size) : size_(size), succ_(size, 0), pred_(size, 0) {
  if (size == 0 || size > kMaxWorlds) throw std::invalid_argument("frame size out of range");
}

Frame::Frame(std::size_t size, const std::vector<std::pair<int, int>>& edges) : Frame(size) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= size || static_cast<std::size_t>(v) >= size) {
      throw std::invalid_argument("edge outside the frame");
    }
    add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
}

Frame Frame::from_bits(std::size_t size, std::uint64_t bits) {
  Frame fr(size);
  for (std::size_t u = 0; u < size; ++u) {
    for (std::size_t v = 0; v < size; ++v) {
      if ((bits >> (u * size + v)) & 1U) fr.add_edge(u, v);
    }
  }
  return fr;
}

void Frame::add_edge(std::size_t u, std::size_t v) {
  succ_[u] |= WorldSet{1} << v;
  pred_[v] |= WorldSet{1} << u;
}

std::vector<std::pair<int, int>> Frame::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t u = 0; u < size_; ++u) {
    for (std::size_t v = 0; v < size_; ++v) {
      if (related(u, v)) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }
  return out;
}

namespace {

WorldSet box_of(const Frame& fr, WorldSet s) {
  WorldSet out = 0;
  for (std::size_t u = 0; u < fr.size(); ++u) {
    if ((fr.successors(u) & ~s) == 0) out |= WorldSet{1} << u;
  }
  return out;
}

WorldSet dia_of(const Frame& fr, WorldSet s) {
  WorldSet out = 0;
  for (std::size_t u = 0; u < fr.size(); ++u) {
    if (fr.successors(u) & s) out |= WorldSet{1} << u;
  }
  return out;
}

WorldSet inv_box_of(const Frame& fr, WorldSet s) {
  WorldSet out = 0;
  for (std::size_t u = 0; u < fr.size(); ++u) {
    if ((fr.predecessors(u) & ~s) == 0) out |= WorldSet{1} << u;
  }
  return out;
}

WorldSet inv_dia_of(const Frame& fr, WorldSet s) {
  WorldSet out = 0;
  for (std::size_t u = 0; u < fr.size(); ++u) {
    if (fr.predecessors(u) & s) out |= WorldSet{1} << u;
  }
  return out;
}

int nominal_world(const KripkeModel& m, const std::string& n) {
  auto it = m.noms.find(n);
  if (it == m.noms.end()) throw UninterpretedSymbol("'" + n);
  return it->second;
}

}  // namespace

WorldSet truth_set(const KripkeModel& m, const Formula& f) {
  const Frame& fr = m.frame;
  const WorldSet all = fr.all();
  switch (f.op()) {
    case Op::Var: {
      auto it = m.props.find(f.name());
      if (it == m.props.end()) throw UninterpretedSymbol(f.name());
      return it->second & all;
    }
    case Op::Nom: return WorldSet{1} << nominal_world(m, f.name());
    case Op::Bottom: return 0;
    case Op::Top: return all;
    case Op::Not: return all & ~truth_set(m, f.child(0));
    case Op::And: return truth_set(m, f.child(0)) & truth_set(m, f.child(1));
    case Op::Or: return truth_set(m, f.child(0)) | truth_set(m, f.child(1));
    case Op::Implies: return (all & ~truth_set(m, f.child(0))) | truth_set(m, f.child(1));
    case Op::Box: return box_of(fr, truth_set(m, f.child(0)));
    case Op::Dia: return dia_of(fr, truth_set(m, f.child(0)));
    case Op::InvBox: return inv_box_of(fr, truth_set(m, f.child(0)));
    case Op::InvDia: return inv_dia_of(fr, truth_set(m, f.child(0)));
    case Op::At: {
      const int w = nominal_world(m, f.name());
      return ((truth_set(m, f.child(0)) >> w) & 1U) ? all : 0;
    }
  }
  return 0;
}

bool eval(const KripkeModel& m, int w, const Formula& f) { return (truth_set(m, f) >> w) & 1U; }

bool globally_true(const KripkeModel& m, const Formula& f) { return truth_set(m, f) == m.frame.all(); }

bool eval_inequality(const KripkeModel& m, const Inequality& ineq) {
  return (truth_set(m, ineq.lhs) & ~truth_set(m, ineq.rhs)) == 0;
}

bool eval_quasi(const KripkeModel& m, const System& sys) {
  for (const auto& ineq : sys.antecedent) {
    if (!eval_inequality(m, ineq)) return true;
  }
  return eval_inequality(m, sys.head());
}

bool eval_quasiset(const KripkeModel& m, const std::vector<System>& systems) {
  return std::all_of(systems.begin(), systems.end(),
                     [&](const System& s) { return eval_quasi(m, s); });
}

namespace {

class FOEvaluator {
 public:
  FOEvaluator(const KripkeModel& m, std::vector<std::pair<std::string, int>> env)
      : m_(m), env_(std::move(env)) {}

  bool run(const FOFormula& f) {
    switch (f.op()) {
      case FOOp::True: return true;
      case FOOp::False: return false;
      case FOOp::Rel:
        return m_.frame.related(static_cast<std::size_t>(term(f.term(0))),
                                static_cast<std::size_t>(term(f.term(1))));
      case FOOp::Pred: {
        auto it = m_.props.find(f.name());
        if (it == m_.props.end()) throw UninterpretedSymbol(f.name());
        return (it->second >> term(f.term(0))) & 1U;
      }
      case FOOp::Eq: return term(f.term(0)) == term(f.term(1));
      case FOOp::Not: return !run(f.child(0));
      case FOOp::And: return run(f.child(0)) && run(f.child(1));
      case FOOp::Or: return run(f.child(0)) || run(f.child(1));
      case FOOp::Implies: return !run(f.child(0)) || run(f.child(1));
      case FOOp::Forall:
      case FOOp::Exists: {
        const bool universal = f.op() == FOOp::Forall;
        env_.emplace_back(f.name(), 0);
        bool result = universal;
        for (std::size_t w = 0; w < m_.frame.size(); ++w) {
          env_.back().second = static_cast<int>(w);
          if (run(f.child(0)) != universal) {
            result = !universal;
            break;
          }
        }
        env_.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  int term(const FOTerm& t) const {
    if (!t.is_variable()) return nominal_world(m_, t.name);
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == t.name) return it->second;
    }
    throw UninterpretedSymbol(t.name);
  }

  const KripkeModel& m_;
  std::vector<std::pair<std::string, int>> env_;
};

}  // namespace

bool eval_fo(const KripkeModel& m, const FOFormula& f) { return FOEvaluator(m, {}).run(f); }

bool eval_fo(const KripkeModel& m, const FOFormula& f,
             const std::vector<std::pair<std::string, int>>& assignment) {
  return FOEvaluator(m, assignment).run(f);
}

SymbolTable::SymbolTable(const Symbols& s)
    : vars_(s.vars.begin(), s.vars.end()), noms_(s.noms.begin(), s.noms.end()) {}

int SymbolTable::var_index(const std::string& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) throw UninterpretedSymbol(v);
  return static_cast<int>(it - vars_.begin());
}

int SymbolTable::nom_index(const std::string& n) const {
  auto it = std::lower_bound(noms_.begin(), noms_.end(), n);
  if (it == noms_.end() || *it != n) throw UninterpretedSymbol("'" + n);
  return static_cast<int>(it - noms_.begin());
}

namespace {

void compile_rec(const Formula& f, const SymbolTable& table, std::vector<std::pair<Op, int>>& code) {
  for (std::size_t i = 0; i < f.arity(); ++i) compile_rec(f.child(i), table, code);
  int index = -1;
  if (f.is(Op::Var)) index = table.var_index(f.name());
  if (f.is(Op::Nom) || f.is(Op::At)) index = table.nom_index(f.name());
  code.emplace_back(f.op(), index);
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, const SymbolTable& table) {
  std::vector<std::pair<Op, int>> code;
  compile_rec(f, table, code);
  code_.reserve(code.size());
  for (auto [op, index] : code) code_.push_back({op, index});
}

WorldSet CompiledFormula::run(const Frame& fr, const Valuation& v) const {
  WorldSet stack[128];
  std::vector<WorldSet> heap;
  WorldSet* st = stack;
  if (code_.size() > 128) {
    heap.resize(code_.size());
    st = heap.data();
  }
  std::size_t top = 0;
  const WorldSet all = fr.all();
  for (const Instr& ins : code_) {
    switch (ins.op) {
      case Op::Var: st[top++] = v.props[ins.index] & all; break;
      case Op::Nom: st[top++] = WorldSet{1} << v.noms[ins.index]; break;
      case Op::Bottom: st[top++] = 0; break;
      case Op::Top: st[top++] = all; break;
      case Op::Not: st[top - 1] = all & ~st[top - 1]; break;
      case Op::And:
        --top;
        st[top - 1] &= st[top];
        break;
      case Op::Or:
        --top;
        st[top - 1] |= st[top];
        break;
      case Op::Implies:
        --top;
        st[top - 1] = (all & ~st[top - 1]) | st[top];
        break;
      case Op::Box: st[top - 1] = box_of(fr, st[top - 1]); break;
      case Op::Dia: st[top - 1] = dia_of(fr, st[top - 1]); break;
      case Op::InvBox: st[top - 1] = inv_box_of(fr, st[top - 1]); break;
      case Op::InvDia: st[top - 1] = inv_dia_of(fr, st[top - 1]); break;
      case Op::At: st[top - 1] = ((st[top - 1] >> v.noms[ins.index]) & 1U) ? all : 0; break;
    }
  }
  return st[0];
}

CompiledSystem::CompiledSystem(const System& sys, const SymbolTable& table)
    : head_left_(table.nom_index(sys.head_left)), head_right_(table.nom_index(sys.head_right)) {
  for (const auto& ineq : sys.antecedent) {
    antecedent_.emplace_back(CompiledFormula(ineq.lhs, table), CompiledFormula(ineq.rhs, table));
  }
}

bool CompiledSystem::holds(const Frame& fr, const Valuation& v) const {
  for (const auto& [lhs, rhs] : antecedent_) {
    if (lhs.run(fr, v) & ~rhs.run(fr, v)) return true;
  }
  return v.noms[head_left_] != v.noms[head_right_];
}

double valuation_bits(std::size_t vars, std::size_t noms, std::size_t worlds) {
  return static_cast<double>(vars * worlds) +
         static_cast<double>(noms) * std::log2(static_cast<double>(worlds));
}

namespace {

void check_budget(const SymbolTable& table, const Frame& fr, double budget) {
  const double bits = valuation_bits(table.vars().size(), table.noms().size(), fr.size());
  if (bits > budget) throw BudgetExceeded(bits, budget);
}

}  // namespace

bool frame_valid(const Frame& fr, const Formula& f, double budget) {
  SymbolTable table(vars_and_nominals(f));
  check_budget(table, fr, budget);
  CompiledFormula c(f, table);
  const WorldSet all = fr.all();
  return for_each_valuation(fr, table, [&](const Valuation& v) { return c.run(fr, v) == all; });
}

bool frame_valid(const Frame& fr, const Inequality& ineq, double budget) {
  Symbols s = vars_and_nominals(ineq.lhs);
  collect_symbols(ineq.rhs, s);
  SymbolTable table(s);
  check_budget(table, fr, budget);
  CompiledFormula lhs(ineq.lhs, table);
  CompiledFormula rhs(ineq.rhs, table);
  return for_each_valuation(fr, table,
                            [&](const Valuation& v) { return (lhs.run(fr, v) & ~rhs.run(fr, v)) == 0; });
}

bool frame_valid(const Frame& fr, const System& sys, double budget) {
  SymbolTable table(sys.symbols());
  check_budget(table, fr, budget);
  CompiledSystem c(sys, table);
  return for_each_valuation(fr, table, [&](const Valuation& v) { return c.holds(fr, v); });
}

bool frame_valid(const Frame& fr, const std::vector<System>& systems, double budget) {
  // Each system is checked on its own symbols, so the budget applies per system.
  for (const auto& sys : systems) {
    if (!frame_valid(fr, sys, budget)) return false;
  }
  return true;
}

bool frame_satisfies(const Frame& fr, const FOFormula& sentence) {
  KripkeModel m{fr, {}, {}};
  return eval_fo(m, sentence);
}

std::vector<Frame> enumerate_frames(std::size_t max_size) {
  if (max_size > 4) throw std::invalid_argument("enumerate_frames: max_size above 4");
  std::vector<Frame> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (n * n);
    for (std::uint64_t bits = 0; bits < count; ++bits) out.push_back(Frame::from_bits(n, bits));
  }
  return out;
}

KripkeModel random_model(std::uint64_t seed, std::size_t size, const std::vector<std::string>& vars,
                         const std::vector<std::string>& noms, double edge_probability) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(edge_probability);
  std::bernoulli_distribution member(0.5);
  std::uniform_int_distribution<int> world(0, static_cast<int>(size) - 1);
  KripkeModel m{Frame(size), {}, {}};
  for (std::size_t u = 0; u < size; ++u) {
    for (std::size_t v = 0; v < size; ++v) {
      if (edge(rng)) m.frame.add_edge(u, v);
    }
  }
  for (const auto& p : vars) {
    WorldSet s = 0;
    for (std::size_t w = 0; w < size; ++w) {
      if (member(rng)) s |= WorldSet{1} << w;
    }
    m.props[p] = s;
  }
  for (const auto& n : noms) m.noms[n] = world(rng);
  return m;
}

}  // namespace alba
