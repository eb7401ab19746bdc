#ifndef ALBA_ENGINE_HPP
#define ALBA_ENGINE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alba/fol.hpp"
#include "alba/formula.hpp"
#include "alba/signed_tree.hpp"
#include "alba/system.hpp"

namespace alba {

enum class Mode : std::uint8_t { Full, Restricted };

enum class Stage : std::uint8_t {
  FirstApproximation,
  AtDecomposition,  // P3 part: @ holes replaced by true/false
  Outer,            // P2 part: splitting, approximation, residuation on i <= a / a <= ~i
  Inner,            // P1 part: residuation into the expanded language
  Ackermann,
};

const char* stage_name(Stage s);

enum class Side : std::uint8_t { Lhs, Rhs };
enum class Handedness : std::uint8_t { Right, Left };

class RuleNotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AckermannBlocked : public std::runtime_error {
 public:
  AckermannBlocked(std::string var, std::string witness);
  const std::string& var() const { return var_; }
  /// The inequality that breaks the side conditions, printed.
  const std::string& witness() const { return witness_; }

 private:
  std::string var_;
  std::string witness_;
};

/// One rule application: the resulting systems and, per system, the antecedent
/// indices that hold the inequalities the rule produced.
struct RuleResult {
  Stage stage;
  std::string rule;
  std::vector<std::size_t> consumed;
  std::vector<System> systems;
  std::vector<std::vector<std::size_t>> produced;
};

/** `lhs <= rhs` becomes `'i0 <= lhs & rhs <= ~'i1 => 'i0 <= ~'i1`.

    The head nominals are 'i0 and 'i1 unless the input already uses them, in
    which case fresh names are drawn. All nominals end up reserved in `supply`. */
System first_approximation(const Inequality& ineq, NominalSupply& supply);

/** Replaces the @ at `hole` by false and by true, giving two systems.

    `hole` addresses an @ inside the non-nominal side of `i <= theta` or
    `theta <= ~i`. For a positive hole the children are (false) and
    (true & j <= alpha); for a negative one (true) and (false & alpha <= ~j). */
RuleResult stage21_decompose(const System& sys, std::size_t target, const Path& hole);

/// Outer rule on `i <= beta` or `beta <= ~i`, dispatched on the main connective.
/// `side` picks the shape when both match; by default the nominal lhs wins.
RuleResult stage22_apply(const System& sys, std::size_t target, NominalSupply& supply,
                         std::optional<Side> side = std::nullopt);

/** Inner rule on the main connective of one side of the target inequality.

    `isolate` names the child (0 or 1) of a binary connective that ends up
    alone; by default the second child on the right, the first on the left. */
RuleResult stage23_apply(const System& sys, std::size_t target, Side side,
                         std::optional<int> isolate = std::nullopt);

/// Eliminates p. Throws AckermannBlocked when the side conditions fail.
RuleResult ackermann(const System& sys, const std::string& p, Handedness hand);

enum class NodeStatus : std::uint8_t { Open, Pure, Stuck };

struct DerivationNode {
  System system;
  /// Rule applied at this node; empty at leaves.
  std::optional<RuleResult> step;
  std::vector<std::size_t> children;
  NodeStatus status = NodeStatus::Open;
  std::string diagnostic;
};

struct Derivation {
  Inequality input;
  /// nodes[0] is the system after first approximation.
  std::vector<DerivationNode> nodes;

  std::vector<std::size_t> leaves() const;
  bool uses_stage(Stage s) const;
};

struct AlbaOutput {
  bool success = false;
  std::vector<System> pure_systems;
  FOFormula fo_sentence;
  Derivation trace;
  OrderType epsilon;
  DependenceOrder omega;
  /// No certificate for the mode's fragment was found; the run was best effort.
  bool not_in_fragment = false;
  std::string diagnostic;
};

struct AlbaOptions {
  Mode mode = Mode::Full;
  /// When set, used as is; otherwise the classifier supplies one.
  std::optional<Certificate> certificate;
  std::size_t max_steps = 20000;
};

/// Runs the derivation for one certificate.
AlbaOutput run_alba(const Inequality& ineq, const Certificate& cert, Mode mode,
                    std::size_t max_steps = 20000);
/// Classifies first when no certificate is given. Without one, every order-type
/// is tried and the first successful run (or the all-1 failure) is returned.
AlbaOutput run_alba(const Inequality& ineq, const AlbaOptions& options = {});
AlbaOutput run_alba(const Formula& f, const AlbaOptions& options = {});

/// Conjunction over systems of the universally closed standard translation.
FOFormula output_fo(const std::vector<System>& pure_systems);

/// Renames reserved nominals ('n<k>) in order of first appearance, for comparing
/// outputs up to the choice of fresh names.
System canonical_fresh_names(const System& sys);

/// Trace as JSON text: {input, certificate, tree, status, pure_systems, fo}.
std::string trace_json(const AlbaOutput& out, int indent = 2);

}  // namespace alba

#endif  // ALBA_ENGINE_HPP
