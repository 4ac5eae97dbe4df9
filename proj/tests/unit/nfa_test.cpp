#include <gtest/gtest.h>

#include "heaplive/nfa.hpp"
#include "oracles.hpp"
#include "reference_automata.hpp"

using namespace heaplive;
using hl_test::word;
using hl_test::words;
using hl_test::Words;

namespace {

GrammarSymbol t(const char* s) { return word(s)[0]; }

}  // namespace

TEST(Nfa, Construction) {
  Nfa n;
  EXPECT_EQ(n.states(), (std::set<StateId>{0}));
  EXPECT_EQ(n.start(), 0);
  StateId q = n.add_state();
  n.add_edge(0, Label::One, q);
  n.set_final(q);
  EXPECT_TRUE(n.is_final(q));
  EXPECT_EQ(n.out_edges(0).size(), 1u);
  EXPECT_TRUE(n.has_label(Label::One));
  EXPECT_FALSE(n.has_label(Label::Zero));
  EXPECT_ANY_THROW(n.add_edge(0, Label::One, 42));
  n.remove_state(q);
  EXPECT_TRUE(n.edges().empty());
  EXPECT_TRUE(n.finals().empty());
}

TEST(Nfa, Labels) {
  EXPECT_EQ(label_of(Symbol::BarOne), Label::BarOne);
  EXPECT_EQ(symbol_of(Label::Zero), Symbol::Zero);
  EXPECT_FALSE(symbol_of(Label::Epsilon).has_value());
  EXPECT_EQ(label_text(Label::BarZero), "0~");
  EXPECT_EQ(label_text(Label::Epsilon), "ε");
}

TEST(Membership, AcceptsCanonicalOnly) {
  Nfa w = hl_test::ref_after_w14();
  EXPECT_TRUE(accepts(w, word("")));
  EXPECT_TRUE(accepts(w, word("10")));
  EXPECT_TRUE(accepts(w, word("10011")));
  EXPECT_FALSE(accepts(w, word("0")));
  EXPECT_FALSE(accepts(w, word("11")));
  EXPECT_THROW(accepts(w, word("1~")), std::invalid_argument);
  EXPECT_THROW(accepts(w, AccessPattern::bottom()), std::invalid_argument);
}

TEST(Membership, AgreesWithOracle) {
  auto corpus = hl_test::random_corpus(40, hl_test::test_seed());
  for (const auto& n : corpus) {
    EXPECT_EQ(words_upto(n, 5), hl_test::enumerate(n, 5, true));
    EXPECT_EQ(language_upto(n, 5), hl_test::enumerate(n, 5, false));
    for (const auto& w : hl_test::all_words(4, true)) {
      EXPECT_EQ(accepts_word(n, w), hl_test::simulate(n, w));
    }
  }
}

TEST(EpsilonRemoval, KeepsStatesAndLanguage) {
  Nfa n = hl_test::make_nfa(3, {2}, {{0, "ε", 1}, {1, "1", 2}, {2, "ε", 0}, {1, "0~", 1}});
  Nfa m = remove_epsilon_moves(n);
  EXPECT_EQ(m.states(), n.states());
  EXPECT_FALSE(m.has_label(Label::Epsilon));
  EXPECT_EQ(words_upto(m, 5), words_upto(n, 5));
}

TEST(EpsilonRemoval, FinalThroughClosure) {
  Nfa n = hl_test::make_nfa(2, {1}, {{0, "ε", 1}});
  Nfa m = remove_epsilon_moves(n);
  EXPECT_TRUE(m.is_final(0));
}

TEST(BarElimination, W14HasNoBars) {
  Nfa w = hl_test::ref_before_w14();
  Nfa e = eliminate_bar_symbols(w);
  EXPECT_TRUE(nfa_equal(e, w));
  EXPECT_EQ(w.states().size(), 4u);
  EXPECT_EQ(w.edges().size(), 5u);
}

TEST(BarElimination, Z12MatchesDrawnResult) {
  EliminationTrace t = eliminate_bar_symbols_traced(hl_test::ref_before_z12());
  ASSERT_GE(t.iterates.size(), 2u);
  EXPECT_TRUE(t.iterates[1].edges().contains(Edge{0, Label::Zero, 2}));
  Nfa pruned = prune_dead_states(t.result);
  EXPECT_TRUE(nfa_equal(pruned, hl_test::ref_after_z12()));
  EXPECT_EQ(language_upto(pruned, 6), language_upto(hl_test::ref_after_z12(), 6));
}

TEST(BarElimination, Y12AddsDrawnEdges) {
  EliminationTrace t = eliminate_bar_symbols_traced(hl_test::ref_before_y12());
  const Nfa& fix = t.iterates.back();
  // nc -0-> mc and nb -0-> md.
  EXPECT_TRUE(fix.edges().contains(Edge{2, Label::Zero, 4}));
  EXPECT_TRUE(fix.edges().contains(Edge{1, Label::Zero, 5}));
  EXPECT_FALSE(t.result.has_label(Label::BarZero));
  EXPECT_FALSE(t.result.has_label(Label::BarOne));
}

TEST(BarElimination, Y12PrunesToThreeStates) {
  Nfa pruned = prune_dead_states(eliminate_bar_symbols(hl_test::ref_before_y12()));
  EXPECT_EQ(pruned.states(), (std::set<StateId>{0, 1, 5}));
  EXPECT_EQ(pruned.edges().size(), 5u);
  // Unlike the drawn result, nb is final: 0 0~ 1~ 1 0 reduces to 0.
  EXPECT_TRUE(pruned.is_final(1));
  EXPECT_TRUE(accepts(pruned, word("0")));
  EXPECT_EQ(hl_test::stack_reduce(word("00~1~10")), word("0"));
}

TEST(BarElimination, IteratesAreDistinct) {
  EliminationTrace t = eliminate_bar_symbols_traced(hl_test::ref_before_y12());
  for (std::size_t i = 1; i < t.iterates.size(); ++i) {
    EXPECT_FALSE(nfa_equal(t.iterates[i - 1], t.iterates[i]));
  }
}

TEST(Prune, KeepsStartAlways) {
  Nfa n = hl_test::make_nfa(3, {}, {{0, "1", 1}, {1, "0", 2}});
  Nfa p = prune_dead_states(n);
  EXPECT_EQ(p.states(), (std::set<StateId>{0}));
  EXPECT_TRUE(p.edges().empty());
}

TEST(Dot, Format) {
  Nfa n = hl_test::make_nfa(2, {1}, {{0, "1~", 1}});
  std::string dot = to_dot(n, "p1_x");
  EXPECT_EQ(dot.rfind("digraph \"p1_x\"", 0), 0u);
  EXPECT_NE(dot.find("q1 [shape=doublecircle]"), std::string::npos);
  EXPECT_NE(dot.find("__start -> q0"), std::string::npos);
  EXPECT_NE(dot.find("q0 -> q1 [label=\"1~\"]"), std::string::npos);
  EXPECT_EQ(dot, to_dot(n, "p1_x"));
}

TEST(Approximation, StronglyRegularInputUnchanged) {
  Nonterminal s = Nonterminal::aux("S");
  Grammar g;
  g.add_start(s);
  g.add({s, {}});
  g.add({s, {t("1"), s}});
  EXPECT_TRUE(is_strongly_regular(g));
  EXPECT_EQ(approximate_strongly_regular(g), g);
}

TEST(Approximation, BalancedLanguageOverApproximated) {
  Nonterminal s = Nonterminal::aux("S");
  Grammar g;
  g.add_start(s);
  g.add({s, {}});
  g.add({s, {t("1"), s, t("1~")}});
  EXPECT_FALSE(is_strongly_regular(g));
  EXPECT_THROW(grammar_to_nfa(g, s), std::invalid_argument);
  Grammar h = approximate_strongly_regular(g);
  EXPECT_TRUE(is_strongly_regular(h));
  Nfa n = grammar_to_nfa(h, s);
  Words exact = words({"", "11~", "111~1~"});
  for (const auto& w : exact) EXPECT_TRUE(accepts_word(n, w)) << w.str();
  EXPECT_TRUE(accepts_word(n, word("11~1~")));  // 1* 1~* after approximation
}

TEST(GrammarToNfa, LeftLinear) {
  Nonterminal s = Nonterminal::aux("S");
  Grammar g;
  g.add_start(s);
  g.add({s, {}});
  g.add({s, {s, t("1~")}});
  Nfa n = grammar_to_nfa(g, s);
  EXPECT_EQ(words_upto(n, 3), words({"", "1~", "1~1~", "1~1~1~"}));
}

TEST(GrammarToNfa, MixedComponents) {
  Nonterminal s = Nonterminal::aux("S"), a = Nonterminal::aux("A"), b = Nonterminal::aux("B");
  Grammar g;
  g.add_start(s);
  g.add({s, {a, t("0"), b}});
  g.add({a, {}});
  g.add({a, {t("1"), a}});
  g.add({b, {}});
  g.add({b, {b, t("0~")}});
  Nfa n = grammar_to_nfa(g, s);
  EXPECT_EQ(words_upto(n, 3), words({"0", "10", "00~", "110", "100~", "00~0~"}));
}

TEST(AutomataStore, Lookup) {
  AutomataStore s;
  s.scopes[3] = {"x", "y"};
  s.automata[3]["x"] = Nfa{};
  EXPECT_NE(s.find(3, "x"), nullptr);
  EXPECT_EQ(s.find(3, "y"), nullptr);
  EXPECT_TRUE(s.in_scope(3, "y"));
  EXPECT_FALSE(s.in_scope(3, "z"));
  EXPECT_FALSE(s.in_scope(4, "x"));
  EXPECT_TRUE(s.has_point(3));
}
