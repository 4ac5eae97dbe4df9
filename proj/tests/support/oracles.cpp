#include "oracles.hpp"

#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hl_test {

using heaplive::Edge;
using heaplive::FactorKind;
using heaplive::FnArg;
using heaplive::Label;
using heaplive::StateId;
using heaplive::Symbol;
using heaplive::SymbolicSet;

AccessPattern word(const std::string& text) { return AccessPattern::parse(text); }

Words words(std::initializer_list<const char*> texts) {
  Words out;
  for (const char* t : texts) out.insert(word(t));
  return out;
}

std::string show(const Words& w) {
  std::string out = "{";
  for (const auto& p : w) {
    if (out.size() > 1) out += ", ";
    out += p.str();
  }
  return out + "}";
}

AccessPattern stack_reduce(const AccessPattern& p) {
  if (p.is_bottom()) return p;
  std::vector<Symbol> stack;
  for (Symbol s : p.symbols()) {
    bool plain = s == Symbol::Zero || s == Symbol::One;
    if (plain && !stack.empty() && heaplive::is_bar(stack.back())) {
      if (heaplive::unbarred(stack.back()) != s) return AccessPattern::bottom();
      stack.pop_back();
      continue;
    }
    stack.push_back(s);
  }
  if (!stack.empty() && heaplive::is_bar(stack.back())) return AccessPattern::bottom();
  return AccessPattern(stack);
}

std::vector<AccessPattern> redexes_rewritten(const AccessPattern& p) {
  std::vector<AccessPattern> out;
  if (p.is_bottom()) return out;
  auto syms = p.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (!heaplive::is_bar(syms[i])) continue;
    if (i + 1 == syms.size()) {
      out.push_back(AccessPattern::bottom());
    } else if (!heaplive::is_bar(syms[i + 1])) {
      if (heaplive::unbarred(syms[i]) != syms[i + 1]) {
        out.push_back(AccessPattern::bottom());
      } else {
        std::vector<Symbol> rest(syms.begin(), syms.begin() + i);
        rest.insert(rest.end(), syms.begin() + i + 2, syms.end());
        out.emplace_back(std::move(rest));
      }
    }
  }
  return out;
}

std::set<AccessPattern> all_order_normal_forms(const AccessPattern& p) {
  std::set<AccessPattern> out;
  std::set<AccessPattern> seen{p};
  std::vector<AccessPattern> work{p};
  while (!work.empty()) {
    AccessPattern cur = work.back();
    work.pop_back();
    auto next = redexes_rewritten(cur);
    if (next.empty()) out.insert(cur);
    for (auto& n : next) {
      if (seen.insert(n).second) work.push_back(std::move(n));
    }
  }
  return out;
}

std::vector<AccessPattern> all_words(std::size_t k, bool with_bars) {
  std::vector<Symbol> alphabet{Symbol::Zero, Symbol::One};
  if (with_bars) {
    alphabet.push_back(Symbol::BarZero);
    alphabet.push_back(Symbol::BarOne);
  }
  std::vector<AccessPattern> out{AccessPattern{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= k; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Symbol s : alphabet) {
        AccessPattern w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

Machine::Machine(const Nfa& n) {
  if (n.states().size() > 64) throw std::invalid_argument("oracle machine limited to 64 states");
  std::map<StateId, int> index;
  for (StateId q : n.states()) index.emplace(q, static_cast<int>(index.size()));
  size_ = index.size();
  for (auto& row : next_) row.assign(size_, 0);
  std::vector<Set> eps(size_, 0);
  for (const Edge& e : n.edges()) {
    Set bit = Set{1} << index.at(e.to);
    if (e.label == Label::Epsilon) eps[index.at(e.from)] |= bit;
    else next_[static_cast<int>(e.label)][index.at(e.from)] |= bit;
  }
  for (StateId q : n.finals()) finals_ |= Set{1} << index.at(q);
  // ε-closure of each state, then of every single-step successor set.
  closure_.assign(size_, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    Set c = Set{1} << i, prev = 0;
    while (c != prev) {
      prev = c;
      for (std::size_t j = 0; j < size_; ++j) {
        if (c >> j & 1) c |= eps[j];
      }
    }
    closure_[i] = c;
  }
  for (auto& row : next_) {
    for (auto& s : row) s = close(s, closure_);
  }
  start_ = closure_[index.at(n.start())];

  // bal_[p]: states reachable from p reading a word of D.
  bal_ = closure_;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < size_; ++p) {
      Set add = 0;
      for (auto [open, shut] : {std::pair{Label::BarZero, Label::Zero}, {Label::BarOne, Label::One}}) {
        Set mids = close(raw_step(Set{1} << p, open), bal_);
        add |= close(raw_step(mids, shut), bal_);
      }
      Set grown = close(bal_[p] | add, bal_);
      if (grown != bal_[p]) {
        bal_[p] = grown;
        changed = true;
      }
    }
  }
}

Machine::Set Machine::close(Set s, const std::vector<Set>& rel) const {
  Set out = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    if (s >> i & 1) out |= rel[i];
  }
  return out;
}

Machine::Set Machine::raw_step(Set s, Label l) const {
  Set out = 0;
  const auto& row = next_[static_cast<int>(l)];
  for (std::size_t i = 0; i < size_; ++i) {
    if (s >> i & 1) out |= row[i];
  }
  return out;
}

Machine::Set Machine::step(Set s, Symbol sym) const { return raw_step(s, heaplive::label_of(sym)); }

bool Machine::accepts(const AccessPattern& w) const {
  if (w.is_bottom()) return false;
  Set s = start_;
  for (Symbol sym : w.symbols()) s = step(s, sym);
  return accepting(s);
}

namespace {

void enumerate_from(const Machine& m, Machine::Set cur, const AccessPattern& w, std::size_t k,
                    const std::vector<Symbol>& alphabet, Words& out) {
  if (m.accepting(cur)) out.insert(w);
  if (w.size() == k) return;
  for (Symbol s : alphabet) {
    auto next = m.step(cur, s);
    if (next == 0) continue;
    AccessPattern longer = w;
    longer.push_back(s);
    enumerate_from(m, next, longer, k, alphabet, out);
  }
}

}  // namespace

Words Machine::enumerate(std::size_t k, bool with_bars) const {
  std::vector<Symbol> alphabet{Symbol::Zero, Symbol::One};
  if (with_bars) {
    alphabet.push_back(Symbol::BarZero);
    alphabet.push_back(Symbol::BarOne);
  }
  Words out;
  enumerate_from(*this, start_, AccessPattern{}, k, alphabet, out);
  return out;
}

bool Machine::reduces_into(const AccessPattern& target) const {
  Set cur = close(start_, bal_);
  for (Symbol s : target.symbols()) cur = close(step(cur, s), bal_);
  return accepting(cur);
}

bool simulate(const Nfa& n, const AccessPattern& w) { return Machine(n).accepts(w); }

Words enumerate(const Nfa& n, std::size_t k, bool with_bars) { return Machine(n).enumerate(k, with_bars); }

bool has_reduction_witness(const Nfa& n, const AccessPattern& target) {
  return Machine(n).reduces_into(target);
}

bool bounded_reduction_witness(const Nfa& n, const AccessPattern& target, std::size_t max_depth) {
  using Config = std::tuple<StateId, std::size_t, std::vector<Symbol>>;
  auto syms = target.symbols();
  std::set<Config> seen;
  std::deque<Config> queue;
  auto push = [&](Config c) {
    if (seen.insert(c).second) queue.push_back(std::move(c));
  };
  push({n.start(), 0, {}});
  while (!queue.empty()) {
    auto [q, pos, stack] = queue.front();
    queue.pop_front();
    if (pos == syms.size() && stack.empty() && n.is_final(q)) return true;
    for (const Edge& e : n.edges()) {
      if (e.from != q) continue;
      if (e.label == Label::Epsilon) {
        push({e.to, pos, stack});
        continue;
      }
      Symbol s = *heaplive::symbol_of(e.label);
      if (stack.empty() && pos < syms.size() && syms[pos] == s) push({e.to, pos + 1, stack});
      if (heaplive::is_bar(s) && stack.size() < max_depth) {
        auto longer = stack;
        longer.push_back(heaplive::unbarred(s));
        push({e.to, pos, std::move(longer)});
      } else if (!heaplive::is_bar(s) && !stack.empty() && stack.back() == s) {
        auto shorter = stack;
        shorter.pop_back();
        push({e.to, pos, std::move(shorter)});
      }
    }
  }
  return false;
}

std::uint32_t test_seed() {
  if (const char* s = std::getenv("HEAPLIVE_SEED")) {
    return static_cast<std::uint32_t>(std::strtoul(s, nullptr, 10));
  }
  return 20240611u;
}

Nfa random_nfa(std::mt19937& rng, RandomNfaShape shape) {
  std::uniform_int_distribution<int> n_states(1, shape.max_states);
  std::uniform_int_distribution<int> n_edges(0, shape.max_edges);
  std::uniform_int_distribution<int> label(0, 4);
  std::bernoulli_distribution final_bit(0.35);
  Nfa n;
  int states = n_states(rng);
  for (int i = 1; i < states; ++i) n.add_state();
  std::uniform_int_distribution<int> pick(0, states - 1);
  int edges = n_edges(rng);
  for (int i = 0; i < edges; ++i) {
    n.add_edge(pick(rng), static_cast<Label>(label(rng)), pick(rng));
  }
  for (int i = 0; i < states; ++i) {
    if (final_bit(rng)) n.set_final(i);
  }
  if (n.finals().empty()) n.set_final(pick(rng));
  return n;
}

std::vector<Nfa> random_corpus(std::size_t count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Nfa> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_nfa(rng));
  return out;
}

Words binary_strings_where(std::size_t k, const std::function<bool(const std::string&)>& pred) {
  Words out;
  for (const auto& w : all_words(k, false)) {
    std::string text = w.is_epsilon() ? "" : w.str();
    if (pred(text)) out.insert(w);
  }
  return out;
}

Words concat_upto(const Words& a, const Words& b, std::size_t k) {
  Words out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x.size() + y.size() <= k) out.insert(x + y);
    }
  }
  return out;
}

namespace {

using XfKey = std::pair<FnArg, Words>;

struct XfTable {
  const heaplive::XfEquationSet& eqs;
  std::size_t k;
  std::map<XfKey, Words> values;
  bool grew = false;

  Words lookup(const XfKey& key) {
    auto [it, inserted] = values.try_emplace(key);
    grew = grew || inserted;
    return it->second;
  }

  Words eval(const SymbolicSet& s, const Words& sigma) {
    Words out;
    for (const auto& m : s.monomials()) {
      Words acc{AccessPattern{}};
      for (const auto& f : m) {
        Words part;
        switch (f.kind) {
          case FactorKind::Word: part = {f.word}; break;
          case FactorKind::Sigma: part = sigma; break;
          case FactorKind::Xf: part = lookup({f.target, eval(*f.arg, sigma)}); break;
          default: throw std::logic_error("unexpected factor " + f.str());
        }
        acc = concat_upto(acc, part, k);
      }
      out.insert(acc.begin(), acc.end());
    }
    return out;
  }
};

}  // namespace

Words direct_xf(const heaplive::XfEquationSet& eqs, const FnArg& target, const Words& sigma,
                std::size_t k) {
  Words start;
  for (const auto& w : sigma) {
    if (w.size() <= k) start.insert(w);
  }
  XfTable table{eqs, k, {}, false};
  table.values[{target, start}] = {};
  bool changed = true;
  while (changed) {
    changed = false;
    table.grew = false;
    auto keys = table.values;
    for (const auto& [key, old] : keys) {
      Words now = table.eval(eqs.at(key.first), key.second);
      if (now != table.values[key]) {
        table.values[key] = std::move(now);
        changed = true;
      }
    }
    changed = changed || table.grew;
  }
  return table.values[{target, start}];
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data_path(const std::string& name) { return std::string(HEAPLIVE_TEST_DATA_DIR) + "/" + name; }

}  // namespace hl_test
