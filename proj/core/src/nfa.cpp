#include "heaplive/nfa.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace heaplive {

Label label_of(Symbol s) {
  switch (s) {
    case Symbol::Zero: return Label::Zero;
    case Symbol::One: return Label::One;
    case Symbol::BarZero: return Label::BarZero;
    case Symbol::BarOne: return Label::BarOne;
  }
  return Label::Epsilon;
}

std::optional<Symbol> symbol_of(Label l) {
  switch (l) {
    case Label::Zero: return Symbol::Zero;
    case Label::One: return Symbol::One;
    case Label::BarZero: return Symbol::BarZero;
    case Label::BarOne: return Symbol::BarOne;
    case Label::Epsilon: return std::nullopt;
  }
  return std::nullopt;
}

std::string_view label_text(Label l) {
  if (auto s = symbol_of(l)) return symbol_text(*s);
  return "ε";
}

Nfa::Nfa() { start_ = add_state(); }

StateId Nfa::add_state() {
  while (states_.contains(next_)) ++next_;
  states_.insert(next_);
  return next_++;
}

void Nfa::add_state(StateId id) {
  states_.insert(id);
  next_ = std::max(next_, id + 1);
}

void Nfa::remove_state(StateId id) {
  if (id == start_) throw std::logic_error("cannot remove the start state");
  states_.erase(id);
  finals_.erase(id);
  std::erase_if(edges_, [id](const Edge& e) { return e.from == id || e.to == id; });
}

void Nfa::add_edge(StateId from, Label label, StateId to) {
  if (!states_.contains(from) || !states_.contains(to)) {
    throw std::invalid_argument("edge references an unknown state");
  }
  edges_.insert({from, label, to});
}

void Nfa::set_start(StateId id) {
  add_state(id);
  start_ = id;
}

void Nfa::set_final(StateId id, bool final) {
  if (!states_.contains(id)) throw std::invalid_argument("unknown state");
  if (final) finals_.insert(id);
  else finals_.erase(id);
}

std::vector<Edge> Nfa::out_edges(StateId id) const {
  auto lo = edges_.lower_bound({id, Label::Zero, std::numeric_limits<StateId>::min()});
  std::vector<Edge> out;
  for (auto it = lo; it != edges_.end() && it->from == id; ++it) out.push_back(*it);
  return out;
}

bool Nfa::has_label(Label l) const {
  return std::any_of(edges_.begin(), edges_.end(), [l](const Edge& e) { return e.label == l; });
}

bool Nfa::operator==(const Nfa& o) const {
  return start_ == o.start_ && states_ == o.states_ && edges_ == o.edges_ && finals_ == o.finals_;
}

bool nfa_equal(const Nfa& a, const Nfa& b) { return a == b; }

// ---------------------------------------------------------------------------
// Strongly regular approximation

namespace {

struct Components {
  std::map<Nonterminal, int> id;
  std::vector<std::set<Nonterminal>> members;
  std::vector<bool> recursive;
};

std::vector<Nonterminal> body_nonterminals(const Production& p) {
  std::vector<Nonterminal> out;
  for (const auto& sym : p.body) {
    if (const auto* n = std::get_if<Nonterminal>(&sym)) out.push_back(*n);
  }
  return out;
}

// Tarjan's algorithm over the "occurs in a body of" relation.
Components strongly_connected(const Grammar& g) {
  std::map<Nonterminal, std::vector<Nonterminal>> succ;
  for (const auto& p : g.productions()) {
    for (const auto& n : body_nonterminals(p)) succ[p.head].push_back(n);
  }
  Components c;
  std::map<Nonterminal, int> index, low;
  std::vector<Nonterminal> stack;
  std::set<Nonterminal> on_stack;
  int counter = 0;
  std::function<void(const Nonterminal&)> visit = [&](const Nonterminal& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : succ[v]) {
      if (!index.contains(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.contains(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::set<Nonterminal> comp;
    Nonterminal w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack.erase(w);
      comp.insert(w);
      c.id[w] = static_cast<int>(c.members.size());
    } while (!(w == v));
    bool rec = comp.size() > 1;
    for (const auto& x : succ[v]) rec = rec || x == v;
    c.members.push_back(std::move(comp));
    c.recursive.push_back(rec);
  };
  for (const auto& n : g.nonterminals()) {
    if (!index.contains(n)) visit(n);
  }
  return c;
}

enum class Linearity { Right, Left, Neither };

// Positions of M-symbols in the body.
std::vector<std::size_t> component_positions(const Production& p, const std::set<Nonterminal>& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.body.size(); ++i) {
    if (const auto* n = std::get_if<Nonterminal>(&p.body[i]); n && m.contains(*n)) out.push_back(i);
  }
  return out;
}

Linearity component_linearity(const Grammar& g, const std::set<Nonterminal>& m) {
  bool right = true;
  bool left = true;
  for (const auto& p : g.productions()) {
    if (!m.contains(p.head)) continue;
    auto pos = component_positions(p, m);
    if (pos.size() > 1) return Linearity::Neither;
    if (pos.size() == 1) {
      right = right && pos[0] + 1 == p.body.size();
      left = left && pos[0] == 0;
    }
  }
  if (right) return Linearity::Right;
  if (left) return Linearity::Left;
  return Linearity::Neither;
}

}  // namespace

bool is_strongly_regular(const Grammar& g) {
  Components c = strongly_connected(g);
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (c.recursive[i] && component_linearity(g, c.members[i]) == Linearity::Neither) return false;
  }
  return true;
}

Grammar approximate_strongly_regular(const Grammar& g) {
  Components c = strongly_connected(g);
  std::set<Nonterminal> rewritten;
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (c.recursive[i] && component_linearity(g, c.members[i]) == Linearity::Neither) {
      rewritten.insert(c.members[i].begin(), c.members[i].end());
    }
  }
  Grammar out;
  for (const auto& s : g.starts()) out.add_start(s);
  for (const auto& p : g.productions()) {
    if (!rewritten.contains(p.head)) {
      out.add(p);
      continue;
    }
    const auto& m = c.members[c.id.at(p.head)];
    auto pos = component_positions(p, m);
    auto slice = [&](std::size_t from, std::size_t to) {
      return std::vector<GrammarSymbol>(p.body.begin() + static_cast<std::ptrdiff_t>(from),
                                        p.body.begin() + static_cast<std::ptrdiff_t>(to));
    };
    if (pos.empty()) {
      auto body = p.body;
      body.emplace_back(p.head.prime());
      out.add({p.head, std::move(body)});
      continue;
    }
    // A -> w0 B1
    auto first = slice(0, pos[0] + 1);
    out.add({p.head, std::move(first)});
    // Bi' -> wi B(i+1)
    for (std::size_t k = 0; k + 1 < pos.size(); ++k) {
      const auto& b = std::get<Nonterminal>(p.body[pos[k]]);
      out.add({b.prime(), slice(pos[k] + 1, pos[k + 1] + 1)});
    }
    // Bm' -> wm A'
    const auto& last = std::get<Nonterminal>(p.body[pos.back()]);
    auto tail = slice(pos.back() + 1, p.body.size());
    tail.emplace_back(p.head.prime());
    out.add({last.prime(), std::move(tail)});
  }
  for (const auto& a : rewritten) out.add({a.prime(), {}});
  return out;
}

// ---------------------------------------------------------------------------
// Grammar to automaton

namespace {

class FaBuilder {
 public:
  FaBuilder(const Grammar& g, Nfa& nfa) : nfa_(nfa), comps_(strongly_connected(g)) {
    for (const auto& p : g.productions()) by_head_[p.head].push_back(p);
    for (std::size_t i = 0; i < comps_.members.size(); ++i) {
      Linearity lin = comps_.recursive[i] ? component_linearity(g, comps_.members[i])
                                          : Linearity::Right;
      if (lin == Linearity::Neither) {
        throw std::invalid_argument("grammar is not strongly regular");
      }
      linearity_.push_back(lin);
    }
  }

  void make(StateId q0, const std::vector<GrammarSymbol>& alpha, StateId q1) {
    if (alpha.empty()) {
      nfa_.add_edge(q0, Label::Epsilon, q1);
      return;
    }
    if (alpha.size() > 1) {
      StateId q = nfa_.add_state();
      make(q0, {alpha.front()}, q);
      make(q, std::vector<GrammarSymbol>(alpha.begin() + 1, alpha.end()), q1);
      return;
    }
    if (const auto* t = std::get_if<Symbol>(&alpha[0])) {
      nfa_.add_edge(q0, label_of(*t), q1);
      return;
    }
    make_nonterminal(q0, std::get<Nonterminal>(alpha[0]), q1);
  }

 private:
  void make_nonterminal(StateId q0, const Nonterminal& a, StateId q1) {
    auto cid = comps_.id.find(a);
    if (cid == comps_.id.end()) return;  // no productions: empty language
    int c = cid->second;
    if (!comps_.recursive[c]) {
      for (const auto& p : by_head_[a]) make(q0, p.body, q1);
      return;
    }
    const auto& m = comps_.members[c];
    std::map<Nonterminal, StateId> q;
    for (const auto& b : m) q[b] = nfa_.add_state();
    if (linearity_[c] == Linearity::Right) {
      nfa_.add_edge(q0, Label::Epsilon, q.at(a));
      for (const auto& b : m) {
        for (const auto& p : by_head_[b]) {
          if (!p.body.empty()) {
            const auto* tail = std::get_if<Nonterminal>(&p.body.back());
            if (tail && m.contains(*tail)) {
              make(q.at(b), std::vector<GrammarSymbol>(p.body.begin(), p.body.end() - 1), q.at(*tail));
              continue;
            }
          }
          make(q.at(b), p.body, q1);
        }
      }
    } else {
      nfa_.add_edge(q.at(a), Label::Epsilon, q1);
      for (const auto& b : m) {
        for (const auto& p : by_head_[b]) {
          if (!p.body.empty()) {
            const auto* head = std::get_if<Nonterminal>(&p.body.front());
            if (head && m.contains(*head)) {
              make(q.at(*head), std::vector<GrammarSymbol>(p.body.begin() + 1, p.body.end()), q.at(b));
              continue;
            }
          }
          make(q0, p.body, q.at(b));
        }
      }
    }
  }

  Nfa& nfa_;
  Components comps_;
  std::vector<Linearity> linearity_;
  std::map<Nonterminal, std::vector<Production>> by_head_;
};

}  // namespace

Nfa grammar_to_nfa(const Grammar& g, const Nonterminal& start) {
  Nfa nfa;
  StateId final_state = nfa.add_state();
  nfa.set_final(final_state);
  FaBuilder(g, nfa).make(nfa.start(), {start}, final_state);
  return nfa;
}

// ---------------------------------------------------------------------------
// ε-removal, bar elimination, pruning

namespace {

std::set<StateId> epsilon_closure(const Nfa& n, std::set<StateId> seed) {
  std::vector<StateId> work(seed.begin(), seed.end());
  while (!work.empty()) {
    StateId q = work.back();
    work.pop_back();
    for (const auto& e : n.out_edges(q)) {
      if (e.label == Label::Epsilon && seed.insert(e.to).second) work.push_back(e.to);
    }
  }
  return seed;
}

}  // namespace

Nfa remove_epsilon_moves(const Nfa& n) {
  Nfa out = n;
  for (const auto& e : n.edges()) {
    if (e.label == Label::Epsilon) out.remove_edge(e);
  }
  for (StateId q : n.states()) {
    for (StateId r : epsilon_closure(n, {q})) {
      if (r == q) continue;
      if (n.is_final(r)) out.set_final(q);
      for (const auto& e : n.out_edges(r)) {
        if (e.label != Label::Epsilon) out.add_edge(q, e.label, e.to);
      }
    }
  }
  return out;
}

EliminationTrace eliminate_bar_symbols_traced(const Nfa& n) {
  EliminationTrace trace;
  Nfa current = remove_epsilon_moves(n);
  trace.iterates.push_back(current);
  for (;;) {
    Nfa bypassed = current;
    for (const auto& e1 : current.edges()) {
      if (e1.label != Label::BarZero && e1.label != Label::BarOne) continue;
      Label want = e1.label == Label::BarZero ? Label::Zero : Label::One;
      for (const auto& e2 : current.out_edges(e1.to)) {
        if (e2.label == want) bypassed.add_edge(e1.from, Label::Epsilon, e2.to);
      }
    }
    Nfa next = remove_epsilon_moves(bypassed);
    if (next == current) break;
    current = std::move(next);
    trace.iterates.push_back(current);
  }
  trace.result = current;
  for (const auto& e : current.edges()) {
    if (e.label == Label::BarZero || e.label == Label::BarOne) trace.result.remove_edge(e);
  }
  return trace;
}

Nfa eliminate_bar_symbols(const Nfa& n) { return eliminate_bar_symbols_traced(n).result; }

Nfa prune_dead_states(const Nfa& n) {
  std::map<StateId, std::vector<StateId>> fwd, bwd;
  for (const auto& e : n.edges()) {
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
  }
  auto sweep = [](std::map<StateId, std::vector<StateId>>& adj, std::vector<StateId> work) {
    std::set<StateId> seen(work.begin(), work.end());
    while (!work.empty()) {
      StateId q = work.back();
      work.pop_back();
      for (StateId r : adj[q]) {
        if (seen.insert(r).second) work.push_back(r);
      }
    }
    return seen;
  };
  std::set<StateId> reach = sweep(fwd, {n.start()});
  std::set<StateId> coreach =
      sweep(bwd, std::vector<StateId>(n.finals().begin(), n.finals().end()));
  Nfa out = n;
  for (StateId q : n.states()) {
    if (q != n.start() && !(reach.contains(q) && coreach.contains(q))) out.remove_state(q);
  }
  if (!coreach.contains(n.start())) {
    for (const auto& e : out.out_edges(n.start())) out.remove_edge(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Membership and enumeration

namespace {

std::set<StateId> step(const Nfa& n, const std::set<StateId>& from, Label l) {
  std::set<StateId> to;
  for (StateId q : from) {
    for (const auto& e : n.out_edges(q)) {
      if (e.label == l) to.insert(e.to);
    }
  }
  return epsilon_closure(n, std::move(to));
}

bool any_final(const Nfa& n, const std::set<StateId>& s) {
  return std::any_of(s.begin(), s.end(), [&](StateId q) { return n.is_final(q); });
}

void enumerate(const Nfa& n, const std::set<StateId>& cur, AccessPattern& word, std::size_t k,
               const std::vector<Label>& alphabet, std::set<AccessPattern>& out) {
  if (cur.empty()) return;
  if (any_final(n, cur)) out.insert(word);
  if (word.size() == k) return;
  for (Label l : alphabet) {
    AccessPattern next = word;
    next.push_back(*symbol_of(l));
    enumerate(n, step(n, cur, l), next, k, alphabet, out);
  }
}

}  // namespace

bool accepts_word(const Nfa& n, const AccessPattern& p) {
  if (p.is_bottom()) throw std::invalid_argument("accepts_word: ⊥ query");
  std::set<StateId> cur = epsilon_closure(n, {n.start()});
  for (Symbol s : p.symbols()) {
    cur = step(n, cur, label_of(s));
    if (cur.empty()) return false;
  }
  return any_final(n, cur);
}

bool accepts(const Nfa& n, const AccessPattern& p) {
  if (p.is_bottom() || !p.is_canonical()) {
    throw std::invalid_argument("membership query must be canonical and not ⊥: " + p.str());
  }
  return accepts_word(n, p);
}

std::set<AccessPattern> language_upto(const Nfa& n, std::size_t k) {
  std::set<AccessPattern> out;
  AccessPattern word;
  enumerate(n, epsilon_closure(n, {n.start()}), word, k, {Label::Zero, Label::One}, out);
  return out;
}

std::set<AccessPattern> words_upto(const Nfa& n, std::size_t k) {
  std::set<AccessPattern> out;
  AccessPattern word;
  enumerate(n, epsilon_closure(n, {n.start()}), word, k,
            {Label::Zero, Label::One, Label::BarZero, Label::BarOne}, out);
  return out;
}

std::string to_dot(const Nfa& n, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  os << "  __start [shape=point];\n";
  for (StateId q : n.states()) {
    os << "  q" << q;
    if (n.is_final(q)) os << " [shape=doublecircle]";
    os << ";\n";
  }
  os << "  __start -> q" << n.start() << ";\n";
  for (const auto& e : n.edges()) {
    os << "  q" << e.from << " -> q" << e.to << " [label=\"" << label_text(e.label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Nfa liveness_automaton(const Grammar& strongly_regular, const Nonterminal& start) {
  return prune_dead_states(eliminate_bar_symbols(grammar_to_nfa(strongly_regular, start)));
}

const Nfa* AutomataStore::find(ProgramPoint pi, const std::string& var) const {
  auto it = automata.find(pi);
  if (it == automata.end()) return nullptr;
  auto jt = it->second.find(var);
  return jt == it->second.end() ? nullptr : &jt->second;
}

bool AutomataStore::in_scope(ProgramPoint pi, const std::string& var) const {
  auto it = scopes.find(pi);
  return it != scopes.end() && std::find(it->second.begin(), it->second.end(), var) != it->second.end();
}

}  // namespace heaplive
