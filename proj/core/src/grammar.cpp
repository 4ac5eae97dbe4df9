#include "heaplive/grammar.hpp"

#include <algorithm>
#include <stdexcept>

namespace heaplive {

std::string Nonterminal::str() const {
  std::string out;
  switch (kind) {
    case Kind::Find: out = "Find[" + name + "," + std::to_string(index) + "]"; break;
    case Kind::Fdep: out = "Fdep[" + name + "," + std::to_string(index) + "]"; break;
    case Kind::SPgm: out = "S_pgm"; break;
    case Kind::SPoint: out = "S[p" + std::to_string(index) + "," + name + "]"; break;
    case Kind::Aux: out = "Aux[" + name + "]"; break;
  }
  return primed ? out + "'" : out;
}

std::string Production::str() const {
  std::string out = head.str() + " ->";
  if (body.empty()) return out + " ε";
  for (const auto& sym : body) {
    out += ' ';
    if (const auto* t = std::get_if<Symbol>(&sym)) out += symbol_text(*t);
    else out += std::get<Nonterminal>(sym).str();
  }
  return out;
}

std::vector<Production> Grammar::productions_of(const Nonterminal& n) const {
  std::vector<Production> out;
  for (const auto& p : productions_) {
    if (p.head == n) out.push_back(p);
  }
  return out;
}

std::set<Nonterminal> Grammar::nonterminals() const {
  std::set<Nonterminal> out = starts_;
  for (const auto& p : productions_) {
    out.insert(p.head);
    for (const auto& sym : p.body) {
      if (const auto* n = std::get_if<Nonterminal>(&sym)) out.insert(*n);
    }
  }
  return out;
}

std::string Grammar::dump() const {
  std::string out;
  for (const auto& p : productions_) out += p.str() + "\n";
  return out;
}

std::map<FnArg, AffineForm> decompose_equations(const XfEquationSet& eqs) {
  std::map<FnArg, AffineForm> out;
  for (const auto& [key, rhs] : eqs) out[key] = normalize_affine(rhs);
  return out;
}

std::vector<GrammarSymbol> monomial_body(const Monomial& m) {
  std::vector<GrammarSymbol> body;
  for (const auto& f : m) {
    switch (f.kind) {
      case FactorKind::Word:
        for (Symbol s : f.word.symbols()) body.emplace_back(s);
        break;
      case FactorKind::SigmaPgm: body.emplace_back(Nonterminal::s_pgm()); break;
      case FactorKind::Find: body.emplace_back(Nonterminal::find(f.target)); break;
      case FactorKind::Fdep: body.emplace_back(Nonterminal::fdep(f.target)); break;
      case FactorKind::Sigma:
      case FactorKind::Xf:
        throw std::invalid_argument("cannot flatten " + f.str() + " into a production");
    }
  }
  return body;
}

namespace {

void add_alternatives(Grammar& g, const Nonterminal& head, const SymbolicSet& s) {
  for (const auto& m : s.monomials()) g.add({head, monomial_body(m)});
}

}  // namespace

Grammar build_grammar(const std::map<FnArg, AffineForm>& constraints,
                      const AnnotationStore& store, const Program& p) {
  Grammar g;
  for (const auto& [key, form] : constraints) {
    g.add_start(Nonterminal::find(key));
    g.add_start(Nonterminal::fdep(key));
    add_alternatives(g, Nonterminal::find(key), form.indep);
    add_alternatives(g, Nonterminal::fdep(key), form.coef);
  }
  const Nonterminal pgm = Nonterminal::s_pgm();
  g.add_start(pgm);
  g.add({pgm, {}});
  g.add({pgm, {Symbol::Zero, pgm}});
  g.add({pgm, {Symbol::One, pgm}});
  for (ProgramPoint pi : main_points(p)) {
    const LivenessEnv* env = store.find(pi);
    if (!env) continue;
    for (const auto& [v, s] : *env) {
      Nonterminal head = Nonterminal::s_point(pi, v);
      g.add_start(head);
      add_alternatives(g, head, expand_calls(s));
    }
  }
  return g;
}

Grammar eliminate_useless_nonterminals(const Grammar& g) {
  std::set<Nonterminal> productive;
  auto body_ok = [&](const Production& p) {
    return std::all_of(p.body.begin(), p.body.end(), [&](const GrammarSymbol& sym) {
      const auto* n = std::get_if<Nonterminal>(&sym);
      return !n || productive.contains(*n);
    });
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (!productive.contains(p.head) && body_ok(p)) {
        productive.insert(p.head);
        changed = true;
      }
    }
  }

  std::set<Nonterminal> reachable;
  std::vector<Nonterminal> work(g.starts().begin(), g.starts().end());
  while (!work.empty()) {
    Nonterminal n = work.back();
    work.pop_back();
    if (!reachable.insert(n).second) continue;
    for (const auto& p : g.productions_of(n)) {
      if (!body_ok(p)) continue;
      for (const auto& sym : p.body) {
        if (const auto* m = std::get_if<Nonterminal>(&sym)) work.push_back(*m);
      }
    }
  }

  Grammar out;
  for (const auto& s : g.starts()) out.add_start(s);
  for (const auto& p : g.productions()) {
    if (productive.contains(p.head) && reachable.contains(p.head) && body_ok(p)) out.add(p);
  }
  return out;
}

std::map<Nonterminal, std::set<AccessPattern>> enumerate_upto(const Grammar& g, std::size_t k) {
  std::map<Nonterminal, std::set<AccessPattern>> lang;
  for (const auto& n : g.nonterminals()) lang[n];
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions()) {
      std::set<AccessPattern> partial = {AccessPattern{}};
      for (const auto& sym : p.body) {
        std::set<AccessPattern> next;
        if (const auto* t = std::get_if<Symbol>(&sym)) {
          for (const auto& a : partial) {
            if (a.size() < k) next.insert(a + AccessPattern{*t});
          }
        } else {
          for (const auto& a : partial) {
            for (const auto& b : lang[std::get<Nonterminal>(sym)]) {
              if (a.size() + b.size() <= k) next.insert(a + b);
            }
          }
        }
        partial = std::move(next);
        if (partial.empty()) break;
      }
      auto& target = lang[p.head];
      for (const auto& a : partial) {
        if (target.insert(a).second) changed = true;
      }
    }
  }
  return lang;
}

}  // namespace heaplive
