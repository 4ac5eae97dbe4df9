#pragma once

// Finite automata over {0, 1, 0~, 1~} with ε-edges: regular approximation of
// the liveness grammar, ε-removal, bar-symbol elimination and membership.

#include <compare>
#include <map>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heaplive/access_pattern.hpp"
#include "heaplive/grammar.hpp"

namespace heaplive {

enum class Label : std::uint8_t { Zero, One, BarZero, BarOne, Epsilon };

Label label_of(Symbol s);
std::optional<Symbol> symbol_of(Label l);
std::string_view label_text(Label l);  // "0", "1", "0~", "1~", "ε"

using StateId = int;

struct Edge {
  StateId from = 0;
  Label label = Label::Epsilon;
  StateId to = 0;

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

class Nfa {
 public:
  /// An automaton with one non-final start state (id 0).
  Nfa();

  StateId add_state();
  /// Adds a state with a caller-chosen id (ids stay stable across passes).
  void add_state(StateId id);
  void remove_state(StateId id);
  void add_edge(StateId from, Label label, StateId to);
  bool remove_edge(const Edge& e) { return edges_.erase(e) > 0; }
  void set_start(StateId id);
  void set_final(StateId id, bool final = true);

  const std::set<StateId>& states() const { return states_; }
  const std::set<Edge>& edges() const { return edges_; }
  StateId start() const { return start_; }
  const std::set<StateId>& finals() const { return finals_; }
  bool is_final(StateId id) const { return finals_.contains(id); }

  std::vector<Edge> out_edges(StateId id) const;
  bool has_label(Label l) const;

  bool operator==(const Nfa& other) const;

 private:
  std::set<StateId> states_;
  std::set<Edge> edges_;
  std::set<StateId> finals_;
  StateId start_ = 0;
  StateId next_ = 0;
};

/// Mohri-Nederhof style approximation: every mutually recursive component
/// that is neither all right-linear nor all left-linear is rewritten with
/// primed copies A' so the language only grows.
Grammar approximate_strongly_regular(const Grammar& g);

/// True iff every recursive component is right- or left-linear.
bool is_strongly_regular(const Grammar& g);

/// Automaton for the language of `start` in a strongly regular grammar.
/// Throws std::invalid_argument if g is not strongly regular.
Nfa grammar_to_nfa(const Grammar& g, const Nonterminal& start);

/// States whose ε-closure (including themselves) holds a final become final,
/// and copy the non-ε out-edges of their closure; ε-edges are then dropped.
/// No states are added or removed.
Nfa remove_epsilon_moves(const Nfa& n);

struct EliminationTrace {
  std::vector<Nfa> iterates;  // N_0, N_1, ..., N_m; N_m is the fixpoint
  Nfa result;                 // N_m without bar edges
};

/// Repeatedly bypasses q'-x~->q-x->q'' with ε-edges q'->q'' and removes ε-moves
/// until the automaton stops changing, then deletes the barred edges.
Nfa eliminate_bar_symbols(const Nfa& n);
EliminationTrace eliminate_bar_symbols_traced(const Nfa& n);

/// Keeps states reachable from start and co-reachable to a final; the start
/// state always survives.
Nfa prune_dead_states(const Nfa& n);

/// Membership of a canonical, non-⊥ pattern in a bar-free automaton. Throws
/// std::invalid_argument for a non-canonical or ⊥ pattern.
bool accepts(const Nfa& n, const AccessPattern& p);

/// Membership of an arbitrary (non-⊥) word, ε-edges allowed.
bool accepts_word(const Nfa& n, const AccessPattern& p);

/// Accepted strings over {0, 1} of length <= k (bar edges are ignored).
std::set<AccessPattern> language_upto(const Nfa& n, std::size_t k);

/// Accepted strings over the full alphabet of length <= k.
std::set<AccessPattern> words_upto(const Nfa& n, std::size_t k);

/// Literal equality of states, edges, start and finals.
bool nfa_equal(const Nfa& a, const Nfa& b);

/// Graphviz rendering with a fixed node and edge order.
std::string to_dot(const Nfa& n, const std::string& name = "nfa");

/// grammar_to_nfa, eliminate_bar_symbols, prune_dead_states.
Nfa liveness_automaton(const Grammar& strongly_regular, const Nonterminal& start);

/// Final automata of the main-expression points, plus the variables in scope
/// at each point. A variable in scope without an automaton has the empty
/// liveness language.
struct AutomataStore {
  std::map<ProgramPoint, std::vector<std::string>> scopes;
  std::map<ProgramPoint, std::map<std::string, Nfa>> automata;

  const Nfa* find(ProgramPoint pi, const std::string& var) const;
  bool has_point(ProgramPoint pi) const { return scopes.contains(pi); }
  bool in_scope(ProgramPoint pi, const std::string& var) const;
};

}  // namespace heaplive
