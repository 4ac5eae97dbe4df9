#include "reference_automata.hpp"

#include <stdexcept>
#include <string_view>

namespace hl_test {

using heaplive::Label;
using heaplive::Nfa;

namespace {

Label parse_label(std::string_view s) {
  if (s == "0") return Label::Zero;
  if (s == "1") return Label::One;
  if (s == "0~") return Label::BarZero;
  if (s == "1~") return Label::BarOne;
  if (s == "ε") return Label::Epsilon;
  throw std::invalid_argument("bad label " + std::string(s));
}

}  // namespace

Nfa make_nfa(int states, std::initializer_list<int> finals, std::initializer_list<EdgeSpec> edges) {
  Nfa n;
  for (int i = 1; i < states; ++i) n.add_state(i);
  for (int f : finals) n.set_final(f);
  for (const auto& e : edges) n.add_edge(e.from, parse_label(e.label), e.to);
  return n;
}

Nfa ref_s_pgm() { return make_nfa(1, {0}, {{0, "0", 0}, {0, "1", 0}}); }

Nfa ref_find_app1() { return make_nfa(1, {0}, {{0, "1", 0}}); }

Nfa ref_fdep_app1() {
  return make_nfa(3, {2}, {{0, "1", 0}, {0, "0", 1}, {1, "0~", 2}, {2, "1~", 2}});
}

Nfa ref_fdep_app2() { return make_nfa(1, {0}, {{0, "1~", 0}}); }

// na=0 nb=1 nc=2 nd=3
Nfa ref_before_w14() {
  return make_nfa(4, {0, 1, 2, 3},
                  {{0, "1", 1}, {1, "0", 2}, {2, "0", 3}, {3, "0", 3}, {3, "1", 3}});
}

// na=0 nb=1 nc=ma=2 mb=3 mc=4 md=5
Nfa ref_before_y12() {
  return make_nfa(6, {0, 2, 3, 4, 5},
                  {{0, "1", 0},
                   {0, "0", 1},
                   {1, "0~", 2},
                   {2, "1~", 2},
                   {2, "1", 3},
                   {3, "0", 4},
                   {4, "0", 5},
                   {5, "0", 5},
                   {5, "1", 5}});
}

// ma=na=0 nb=1 nc=2 nd=3
Nfa ref_before_z12() {
  return make_nfa(4, {0, 1, 2, 3},
                  {{0, "1~", 0}, {0, "1", 1}, {1, "0", 2}, {2, "0", 3}, {3, "0", 3}, {3, "1", 3}});
}

Nfa ref_after_w14() { return ref_before_w14(); }

// na=0 nb=1 md=2
Nfa ref_after_y12() {
  return make_nfa(3, {0, 2}, {{0, "1", 0}, {0, "0", 1}, {1, "0", 2}, {2, "0", 2}, {2, "1", 2}});
}

// ma=na=0 nb=1 nc=2 nd=3
Nfa ref_after_z12() {
  return make_nfa(4, {0, 1, 2, 3},
                  {{0, "1", 1}, {0, "0", 2}, {1, "0", 2}, {2, "0", 3}, {3, "0", 3}, {3, "1", 3}});
}

}  // namespace hl_test
