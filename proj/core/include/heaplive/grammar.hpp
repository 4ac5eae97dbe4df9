#pragma once

// Context-free grammars over the pattern alphabet, built from the affine
// decomposition of the transfer equations and the main-expression
// annotations.

#include <compare>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "heaplive/access_pattern.hpp"
#include "heaplive/symbolic.hpp"
#include "heaplive/transfer.hpp"

namespace heaplive {

struct Nonterminal {
  enum class Kind { Find, Fdep, SPgm, SPoint, Aux };

  Kind kind = Kind::Aux;
  std::string name;  // function (Find/Fdep), variable (SPoint) or label (Aux)
  int index = 0;     // argument index (Find/Fdep) or program point (SPoint)
  bool primed = false;

  static Nonterminal find(const FnArg& t) { return {Kind::Find, t.fn, t.index}; }
  static Nonterminal fdep(const FnArg& t) { return {Kind::Fdep, t.fn, t.index}; }
  static Nonterminal s_pgm() { return {Kind::SPgm, "", 0}; }
  static Nonterminal s_point(ProgramPoint pi, const std::string& var) {
    return {Kind::SPoint, var, pi};
  }
  static Nonterminal aux(const std::string& label) { return {Kind::Aux, label, 0}; }

  Nonterminal prime() const {
    Nonterminal n = *this;
    n.primed = true;
    return n;
  }

  /// "Find[app,1]", "Fdep[app,2]", "S_pgm", "S[p14,w]", "Aux[A]"; primed
  /// copies get a trailing "'".
  std::string str() const;

  auto operator<=>(const Nonterminal&) const = default;
  bool operator==(const Nonterminal&) const = default;
};

using GrammarSymbol = std::variant<Symbol, Nonterminal>;

struct Production {
  Nonterminal head;
  std::vector<GrammarSymbol> body;

  /// "NT -> sym sym", "NT -> ε" for an empty body.
  std::string str() const;

  auto operator<=>(const Production&) const = default;
  bool operator==(const Production&) const = default;
};

class Grammar {
 public:
  void add(Production p) { productions_.insert(std::move(p)); }
  void add_start(const Nonterminal& n) { starts_.insert(n); }

  const std::set<Production>& productions() const { return productions_; }
  const std::set<Nonterminal>& starts() const { return starts_; }

  std::vector<Production> productions_of(const Nonterminal& n) const;
  /// Heads, body nonterminals and starts.
  std::set<Nonterminal> nonterminals() const;

  /// One production per line, sorted.
  std::string dump() const;

  bool operator==(const Grammar&) const = default;

 private:
  std::set<Production> productions_;
  std::set<Nonterminal> starts_;
};

/// Find/Fdep parts of every transfer equation, xf applications resolved to
/// Find/Fdep factors. Throws AffineError.
std::map<FnArg, AffineForm> decompose_equations(const XfEquationSet& eqs);

/// Productions for Find/Fdep of every (f,i), S_pgm, and S[π,v] for every
/// main-expression point π and every variable bound in its annotation.
Grammar build_grammar(const std::map<FnArg, AffineForm>& constraints,
                      const AnnotationStore& store, const Program& p);

/// Removes unproductive nonterminals (and every production mentioning one),
/// then nonterminals unreachable from the starts. Starts stay in the start
/// set even when they lose all productions.
Grammar eliminate_useless_nonterminals(const Grammar& g);

/// All raw (unreduced) strings of length <= k derivable from each
/// nonterminal, computed as a least fixpoint with truncation.
std::map<Nonterminal, std::set<AccessPattern>> enumerate_upto(const Grammar& g, std::size_t k);

/// The flattened productions of one union branch: words become terminals,
/// Find/Fdep/σ_pgm become nonterminals. Throws std::invalid_argument on σ or
/// an unexpanded xf factor.
std::vector<GrammarSymbol> monomial_body(const Monomial& m);

}  // namespace heaplive
