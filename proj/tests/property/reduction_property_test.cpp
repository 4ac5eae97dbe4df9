#include <gtest/gtest.h>

#include "heaplive/access_pattern.hpp"
#include "oracles.hpp"

using namespace heaplive;

TEST(ReductionProperty, EveryOrderReachesTheSameNormalForm) {
  for (const auto& w : hl_test::all_words(7, true)) {
    auto forms = hl_test::all_order_normal_forms(w);
    ASSERT_EQ(forms.size(), 1u) << w.str();
    EXPECT_EQ(*forms.begin(), reduce_to_canonical(w)) << w.str();
  }
}

TEST(ReductionProperty, ResultIsCanonicalAndIdempotent) {
  for (const auto& w : hl_test::all_words(6, true)) {
    AccessPattern r = reduce_to_canonical(w);
    EXPECT_TRUE(r.is_canonical()) << w.str();
    EXPECT_EQ(reduce_to_canonical(r), r);
  }
}

TEST(ReductionProperty, CanonicalWordsAreFixed) {
  for (const auto& w : hl_test::all_words(8, false)) EXPECT_EQ(reduce_to_canonical(w), w);
}

TEST(ReductionProperty, ReducingAPrefixFirstChangesNothing) {
  auto ws = hl_test::all_words(4, true);
  for (const auto& a : ws) {
    // Unmatched bars are only bottom at the end of a word.
    AccessPattern ra = reduce_to_canonical(a);
    if (ra.is_bottom()) continue;
    for (const auto& b : ws) {
      EXPECT_EQ(reduce_to_canonical(ra + b).str(), reduce_to_canonical(a + b).str()) << a.str() << " " << b.str();
    }
  }
}

TEST(ReductionProperty, OneStepReductsMatchOracle) {
  for (const auto& w : hl_test::all_words(6, true)) {
    auto core = one_step_reducts(w);
    auto oracle = hl_test::redexes_rewritten(w);
    EXPECT_EQ(std::set<AccessPattern>(core.begin(), core.end()),
              std::set<AccessPattern>(oracle.begin(), oracle.end()))
        << w.str();
  }
}

TEST(ReductionProperty, ReduceAllDistributes) {
  auto ws = hl_test::all_words(3, true);
  PatternSet a, b;
  for (std::size_t i = 0; i < ws.size(); i += 3) a.insert(ws[i]);
  for (std::size_t i = 1; i < ws.size(); i += 5) b.insert(ws[i]);
  PatternSet expect;
  for (const auto& x : a) {
    for (const auto& y : b) expect.insert(reduce_to_canonical(x + y));
  }
  EXPECT_EQ(reduce_all(concat_sets(a, b)), expect);
}

TEST(WitnessOracle, BoundedSearchImpliesExact) {
  auto corpus = hl_test::random_corpus(60, hl_test::test_seed() + 1);
  for (const auto& n : corpus) {
    hl_test::Machine m(n);
    for (const auto& beta : hl_test::all_words(3, false)) {
      bool bounded = hl_test::bounded_reduction_witness(n, beta, 6);
      bool exact = m.reduces_into(beta);
      if (bounded) EXPECT_TRUE(exact) << beta.str();
    }
  }
}

TEST(WitnessOracle, ReductsOfAcceptedWordsHaveWitnesses) {
  auto corpus = hl_test::random_corpus(60, hl_test::test_seed() + 2);
  for (const auto& n : corpus) {
    hl_test::Machine m(n);
    for (const auto& w : m.enumerate(6, true)) {
      AccessPattern r = hl_test::stack_reduce(w);
      if (!r.is_bottom()) {
        EXPECT_TRUE(m.reduces_into(r)) << w.str();
        EXPECT_TRUE(hl_test::bounded_reduction_witness(n, r, 6)) << w.str();
      }
    }
  }
}
