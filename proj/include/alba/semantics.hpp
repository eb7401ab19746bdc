#ifndef ALBA_SEMANTICS_HPP
#define ALBA_SEMANTICS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alba/fol.hpp"
#include "alba/formula.hpp"
#include "alba/system.hpp"

namespace alba {

/// Bit w is set iff world w is in the set.
using WorldSet = std::uint64_t;
inline constexpr std::size_t kMaxWorlds = 64;

class UninterpretedSymbol : public std::runtime_error {
 public:
  explicit UninterpretedSymbol(const std::string& symbol)
      : std::runtime_error("uninterpreted symbol: " + symbol), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double bits, double budget);
  double bits() const { return bits_; }

 private:
  double bits_;
};

/// Finite frame over worlds 0..size-1.
class Frame {
 public:
  explicit Frame(std::size_t size = 1);
  Frame(std::size_t size, const std::vector<std::pair<int, int>>& edges);
  /// Relation from a row-major bit matrix: bit (u*size + v) means R(u, v).
  static Frame from_bits(std::size_t size, std::uint64_t bits);

  std::size_t size() const { return size_; }
  WorldSet all() const { return size_ == 64 ? ~WorldSet{0} : (WorldSet{1} << size_) - 1; }
  bool related(std::size_t u, std::size_t v) const { return (succ_[u] >> v) & 1U; }
  WorldSet successors(std::size_t u) const { return succ_[u]; }
  WorldSet predecessors(std::size_t v) const { return pred_[v]; }
  void add_edge(std::size_t u, std::size_t v);
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.size_ == b.size_ && a.succ_ == b.succ_;
  }

 private:
  std::size_t size_;
  std::vector<WorldSet> succ_;
  std::vector<WorldSet> pred_;
};

struct KripkeModel {
  Frame frame;
  std::map<std::string, WorldSet> props;
  std::map<std::string, int> noms;
};

WorldSet truth_set(const KripkeModel& m, const Formula& f);
bool eval(const KripkeModel& m, int w, const Formula& f);
bool globally_true(const KripkeModel& m, const Formula& f);
bool eval_inequality(const KripkeModel& m, const Inequality& ineq);
bool eval_quasi(const KripkeModel& m, const System& sys);
bool eval_quasiset(const KripkeModel& m, const std::vector<System>& systems);
/// Tarskian truth; predicates P_p read the valuation of p, constants the nominals.
bool eval_fo(const KripkeModel& m, const FOFormula& f);
/// Truth of f under an explicit assignment of free variables.
bool eval_fo(const KripkeModel& m, const FOFormula& f,
             const std::vector<std::pair<std::string, int>>& assignment);

/// Default cap on log2(number of valuations) for frame-validity checks.
inline constexpr double kDefaultValuationBudget = 24.0;

/** log2 of the number of valuations needed for the given symbols on a frame
    of `worlds` worlds: vars * |W| + noms * log2|W|. */
double valuation_bits(std::size_t vars, std::size_t noms, std::size_t worlds);

bool frame_valid(const Frame& fr, const Formula& f, double budget = kDefaultValuationBudget);
bool frame_valid(const Frame& fr, const Inequality& ineq, double budget = kDefaultValuationBudget);
bool frame_valid(const Frame& fr, const System& sys, double budget = kDefaultValuationBudget);
bool frame_valid(const Frame& fr, const std::vector<System>& systems,
                 double budget = kDefaultValuationBudget);
/// Frame truth of a sentence that mentions no predicates or constants.
bool frame_satisfies(const Frame& fr, const FOFormula& sentence);

/// All frames with 1..max_size worlds; 2^(n*n) relations per size, in bit order.
std::vector<Frame> enumerate_frames(std::size_t max_size = 3);
KripkeModel random_model(std::uint64_t seed, std::size_t size, const std::vector<std::string>& vars,
                         const std::vector<std::string>& noms, double edge_probability = 0.4);

/** Formula compiled against a fixed symbol table, for the enumeration loops.

    The valuation is positional: prop masks in `vars` order, nominal worlds in
    `noms` order. */
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(const Symbols& s);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<std::string>& noms() const { return noms_; }
  int var_index(const std::string& v) const;
  int nom_index(const std::string& n) const;

 private:
  std::vector<std::string> vars_;
  std::vector<std::string> noms_;
};

struct Valuation {
  std::vector<WorldSet> props;
  std::vector<int> noms;
};

class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const SymbolTable& table);
  WorldSet run(const Frame& fr, const Valuation& v) const;

 private:
  struct Instr {
    Op op;
    int index;
  };
  std::vector<Instr> code_;
};

/// A system compiled for repeated evaluation under positional valuations.
class CompiledSystem {
 public:
  CompiledSystem(const System& sys, const SymbolTable& table);
  bool holds(const Frame& fr, const Valuation& v) const;

 private:
  std::vector<std::pair<CompiledFormula, CompiledFormula>> antecedent_;
  int head_left_;
  int head_right_;
};

/** Calls fn(valuation) for every valuation of the table's symbols on fr,
    stopping early when fn returns false. Returns false iff stopped early. */
template <typename Fn>
bool for_each_valuation(const Frame& fr, const SymbolTable& table, Fn&& fn) {
  Valuation v;
  v.props.assign(table.vars().size(), 0);
  v.noms.assign(table.noms().size(), 0);
  const WorldSet limit = fr.all();
  const int worlds = static_cast<int>(fr.size());
  for (;;) {
    if (!fn(static_cast<const Valuation&>(v))) return false;
    std::size_t k = 0;
    for (; k < v.props.size(); ++k) {
      if (v.props[k] < limit) {
        ++v.props[k];
        break;
      }
      v.props[k] = 0;
    }
    if (k < v.props.size()) continue;
    std::size_t n = 0;
    for (; n < v.noms.size(); ++n) {
      if (v.noms[n] + 1 < worlds) {
        ++v.noms[n];
        break;
      }
      v.noms[n] = 0;
    }
    if (n == v.noms.size()) return true;
  }
}

}  // namespace alba

#endif  // ALBA_SEMANTICS_HPP
