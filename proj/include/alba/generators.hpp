#ifndef ALBA_GENERATORS_HPP
#define ALBA_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "alba/formula.hpp"
#include "alba/signed_tree.hpp"
#include "alba/system.hpp"

namespace alba {

struct RandomFormulaOptions {
  std::vector<std::string> vars{"p", "q"};
  std::vector<std::string> noms{"i", "j"};
  std::size_t max_depth = 5;
  bool inverse = false;
  /// Chance of stopping at a leaf before the depth runs out.
  double leaf_bias = 0.25;
};

/// Uniform-ish random formula over all connectives.
Formula random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opts);

struct CorpusOptions {
  Flavor flavor = Flavor::ExtendedInductive;
  std::size_t max_vars = 3;
  /// Depth bound of the whole implication.
  std::size_t max_depth = 5;
  std::vector<std::string> noms{"i", "j"};
  std::size_t max_attempts = 100000;
  /// Share of the corpus that must lie outside the base fragment (inductive
  /// for the extended-inductive flavor, skeletal for extended-skeletal).
  double strict_fraction = 0.5;
};

/** Random implications that classify into `flavor`, built by planting
    critical branches segment by segment and filtered through classify.
    Distinct formulas, deterministic in the seed. Throws std::runtime_error if
    `n` formulas cannot be found within the attempt budget. */
std::vector<Formula> generate_corpus(std::uint64_t seed, std::size_t n, const CorpusOptions& opts);

/// One attempt; may return a formula outside the flavor.
Formula plant_formula(std::mt19937_64& rng, const CorpusOptions& opts);

}  // namespace alba

#endif  // ALBA_GENERATORS_HPP
