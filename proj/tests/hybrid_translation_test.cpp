#include <gtest/gtest.h>

#include <random>

#include "alba/generators.hpp"
#include "alba/hybrid_translation.hpp"
#include "alba/semantics.hpp"
#include "test_support.hpp"

namespace alba {
namespace {

using testing::I;
using testing::P;
using testing::S;

TEST(Tr, Inequalities) {
  EXPECT_EQ(tr_inequality(I("'i", "<>p")), P("@'i <>p"));
  EXPECT_EQ(tr_inequality(I("[]p", "~'j")), P("~@'j []p"));
  EXPECT_EQ(tr_inequality(I("'i", "~'j")), P("@'i ~'j"));
  EXPECT_THROW(tr_inequality(I("p", "q")), UntranslatableShape);
}

TEST(Tr, Quasi) {
  EXPECT_EQ(tr_quasi(S({})), P("true -> ~@'i0 'i1"));
  EXPECT_EQ(tr_quasi(S({{"'i0", "<>'j"}, {"[]'j", "~'i1"}})),
            P("@'i0 <>'j & ~@'i1 []'j -> ~@'i0 'i1"));
  EXPECT_EQ(tr_quasiset({}), P("true"));
}

TEST(Tr, GlobalTruthMatchesQuasiInequality) {
  std::mt19937_64 rng(17);
  RandomFormulaOptions opts;
  opts.max_depth = 3;
  opts.noms = {"i", "j", "k"};
  for (int k = 0; k < 300; ++k) {
    System sys;
    sys.head_left = "i";
    sys.head_right = "j";
    const int n = static_cast<int>(rng() % 3);
    for (int a = 0; a < n; ++a) {
      const Formula g = random_formula(rng, opts);
      const std::string nom = opts.noms[rng() % 3];
      sys.antecedent.push_back(rng() % 2 ? Inequality{Formula::nom(nom), g}
                                         : Inequality{g, Formula::neg(Formula::nom(nom))});
    }
    const KripkeModel m = random_model(static_cast<std::uint64_t>(k), 1 + k % 4, {"p", "q"}, opts.noms);
    const auto naive = testing::to_naive(m);
    const bool expected = testing::naive_quasi(naive, sys);
    const Formula t = tr_quasi(sys);
    for (int w = 0; w < static_cast<int>(m.frame.size()); ++w) {
      ASSERT_EQ(testing::naive_eval(naive, w, t), expected) << print(sys);
    }
  }
}

TEST(AtDecompositionLaw, ValidOnSmallModels) {
  // @i t(@j a) <-> @i t(false) | (@i t(true) & @j a), for a positive hole.
  const std::vector<std::string> contexts{"[]<>X", "X | q", "<>(q & X)", "~(q -> ~X)", "@'k X"};
  for (const auto& ctx : contexts) {
    auto fill = [&](const std::string& hole) {
      std::string s = ctx;
      s.replace(s.find('X'), 1, "(" + hole + ")");
      return P(s);
    };
    const Formula lhs = Formula::at("i", fill("@'j p"));
    const Formula rhs = Formula::disj(Formula::at("i", fill("false")),
                                      Formula::conj(Formula::at("i", fill("true")), P("@'j p")));
    const Formula law = P("(" + print(lhs) + ") <-> (" + print(rhs) + ")");
    for (const Frame& fr : enumerate_frames(2)) {
      EXPECT_TRUE(testing::naive_all_valuations(fr, {"p", "q"}, {"i", "j", "k"}, [&](const auto& m) {
        for (int w = 0; w < m.size; ++w) {
          if (!testing::naive_eval(m, w, law)) return false;
        }
        return true;
      })) << ctx;
    }
  }
}

}  // namespace
}  // namespace alba
