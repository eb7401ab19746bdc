#include <gtest/gtest.h>

#include <random>

#include "alba/fol.hpp"
#include "alba/generators.hpp"
#include "alba/semantics.hpp"
#include "test_support.hpp"

namespace alba {
namespace {

using testing::P;

const FOTerm kX = FOTerm::variable("x");

TEST(StandardTranslation, Examples) {
  EXPECT_EQ(print(st_formula(P("p"), kX)), "P_p(x)");
  EXPECT_EQ(print(st_formula(P("'i"), kX)), "x = 'i");
  EXPECT_EQ(print(st_formula(P("<>p"), kX)), "exists y0. (R(x,y0) & P_p(y0))");
  EXPECT_EQ(print(st_formula(P("[]p"), kX)), "forall y0. (R(x,y0) -> P_p(y0))");
  EXPECT_EQ(print(st_formula(P("<^>p"), kX)), "exists y0. (R(y0,x) & P_p(y0))");
  EXPECT_EQ(print(st_formula(P("@'i <>p"), kX)), "exists y0. (R('i,y0) & P_p(y0))");
  EXPECT_EQ(print(st_formula(P("[]<>p"), kX)), "forall y0. (R(x,y0) -> exists y1. (R(y0,y1) & P_p(y1)))");
  EXPECT_EQ(print(st_inequality(testing::I("p", "<>p"))),
            "forall x. (P_p(x) -> exists y0. (R(x,y0) & P_p(y0)))");
}

TEST(StandardTranslation, QuasiAndClosure) {
  const System s = testing::S({{"'i0", "<>'j"}});
  const FOFormula q = st_quasi(s);
  EXPECT_EQ(constants_of(q), (std::set<std::string>{"i0", "i1", "j"}));
  EXPECT_TRUE(free_variables(q).empty());
  const FOFormula closed = universal_closure(q, {"i0", "i1", "j"});
  EXPECT_TRUE(constants_of(closed).empty());
  EXPECT_EQ(print(closed).rfind("forall v_i0. forall v_i1. forall v_j. ", 0), 0u) << print(closed);
}

TEST(StandardTranslation, FreeVariables) {
  EXPECT_EQ(free_variables(st_formula(P("[]p & q"), kX)), (std::set<std::string>{"x"}));
  EXPECT_TRUE(free_variables(st_inequality(testing::I("p", "q"))).empty());
}

TEST(StandardTranslation, AgreesWithModalTruth) {
  std::mt19937_64 rng(21);
  RandomFormulaOptions opts;
  opts.inverse = true;
  for (int k = 0; k < 400; ++k) {
    const Formula f = random_formula(rng, opts);
    const KripkeModel m = random_model(static_cast<std::uint64_t>(k), 1 + k % 4, {"p", "q"}, {"i", "j"});
    const auto naive = testing::to_naive(m);
    const FOFormula st = st_formula(f, kX);
    for (int w = 0; w < static_cast<int>(m.frame.size()); ++w) {
      const bool modal = testing::naive_eval(naive, w, f);
      ASSERT_EQ(testing::naive_fo(naive, st, {{"x", w}}), modal) << print(f);
      ASSERT_EQ(eval_fo(m, st, {{"x", w}}), modal) << print(f);
    }
  }
}

TEST(StandardTranslation, InequalityMatchesGlobalTruth) {
  std::mt19937_64 rng(22);
  RandomFormulaOptions opts;
  opts.max_depth = 3;
  for (int k = 0; k < 300; ++k) {
    const Inequality ineq{random_formula(rng, opts), random_formula(rng, opts)};
    const KripkeModel m = random_model(500 + static_cast<std::uint64_t>(k), 1 + k % 4, {"p", "q"}, {"i", "j"});
    EXPECT_EQ(eval_fo(m, st_inequality(ineq)), testing::naive_inequality(testing::to_naive(m), ineq));
  }
}

TEST(FrameSatisfies, ClosedSentence) {
  const FOFormula reflexive = FOFormula::forall("x", FOFormula::rel(kX, kX));
  EXPECT_TRUE(frame_satisfies(Frame(2, {{0, 0}, {1, 1}}), reflexive));
  EXPECT_FALSE(frame_satisfies(Frame(2, {{0, 0}}), reflexive));
  EXPECT_TRUE(frame_satisfies(Frame(1), FOFormula::truth()));
  EXPECT_FALSE(frame_satisfies(Frame(1), FOFormula::falsity()));
}

TEST(FOFormulaTest, EqualityAndPrinting) {
  const FOFormula a = FOFormula::neg(FOFormula::eq(kX, FOTerm::constant("i")));
  EXPECT_EQ(print(a), "x != 'i");
  EXPECT_EQ(a, FOFormula::neg(FOFormula::eq(kX, FOTerm::constant("i"))));
  EXPECT_NE(a, FOFormula::eq(kX, FOTerm::constant("i")));
  EXPECT_EQ(print(fo_conj_all({})), "true");
  EXPECT_EQ(print(FOFormula::forall("x", FOFormula::forall("y", FOFormula::truth()))),
            "forall x. forall y. true");
}

}  // namespace
}  // namespace alba
