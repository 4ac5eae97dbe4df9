#include "heaplive/nullify.hpp"

#include <map>
#include <stdexcept>

namespace heaplive {

std::string Candidate::str() const {
  return "pi=" + std::to_string(point) + " " + path.str() + " [" + status + "]";
}

namespace {

// States that can still reach a final state.
std::set<StateId> live_states(const Nfa& n) {
  std::map<StateId, std::vector<StateId>> back;
  for (const auto& e : n.edges()) back[e.to].push_back(e.from);
  std::set<StateId> seen(n.finals().begin(), n.finals().end());
  std::vector<StateId> work(seen.begin(), seen.end());
  while (!work.empty()) {
    StateId q = work.back();
    work.pop_back();
    for (StateId r : back[q]) {
      if (seen.insert(r).second) work.push_back(r);
    }
  }
  return seen;
}

std::set<StateId> closure(const Nfa& n, std::set<StateId> s) {
  std::vector<StateId> work(s.begin(), s.end());
  while (!work.empty()) {
    StateId q = work.back();
    work.pop_back();
    for (const auto& e : n.out_edges(q)) {
      if (e.label == Label::Epsilon && s.insert(e.to).second) work.push_back(e.to);
    }
  }
  return s;
}

void explore(const Nfa& n, const std::set<StateId>& live, const std::set<StateId>& cur,
             AccessPattern& alpha, std::size_t depth, std::vector<AccessPattern>& out) {
  bool alive = false;
  for (StateId q : cur) alive = alive || live.contains(q);
  if (!alive) {
    out.push_back(alpha);
    return;
  }
  if (alpha.size() == depth) return;
  for (Symbol s : {Symbol::Zero, Symbol::One}) {
    std::set<StateId> next;
    for (StateId q : cur) {
      for (const auto& e : n.out_edges(q)) {
        if (e.label == label_of(s)) next.insert(e.to);
      }
    }
    AccessPattern longer = alpha;
    longer.push_back(s);
    explore(n, live, closure(n, next), longer, depth, out);
  }
}

}  // namespace

std::vector<Candidate> nullification_candidates(const AutomataStore& automata, ProgramPoint pi,
                                                std::size_t depth) {
  auto scope = automata.scopes.find(pi);
  if (scope == automata.scopes.end()) {
    throw std::out_of_range("no automata for program point " + std::to_string(pi));
  }
  std::vector<Candidate> out;
  for (const auto& v : scope->second) {
    std::vector<AccessPattern> dead;
    AccessPattern alpha;
    if (const Nfa* n = automata.find(pi, v)) {
      explore(*n, live_states(*n), closure(*n, {n->start()}), alpha, depth, dead);
    } else {
      dead.push_back(alpha);
    }
    for (auto& a : dead) out.push_back({pi, {v, std::move(a)}, kUnsafeUnchecked});
  }
  return out;
}

}  // namespace heaplive
