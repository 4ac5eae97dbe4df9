#pragma once

// Symbolic liveness sets. A SymbolicSet is kept as a union of monomials; each
// monomial is a concatenation of factors (literal words, σ, σ_pgm, the
// Find/Fdep unknowns of a function argument, or an unexpanded application of
// a function's transfer function). Constructors normalise on the fly:
// concatenation distributes over union, adjacent words merge, {ε} is the
// unit, ∅ is absorbing for concatenation and neutral for union.

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "heaplive/access_pattern.hpp"
#include "heaplive/frontend.hpp"

namespace heaplive {

/// A (function, 1-based argument index) pair.
struct FnArg {
  std::string fn;
  int index = 0;

  std::string str() const { return fn + "," + std::to_string(index); }
  auto operator<=>(const FnArg&) const = default;
  bool operator==(const FnArg&) const = default;
};

class SymbolicSet;

enum class FactorKind { Word, Sigma, SigmaPgm, Find, Fdep, Xf };

struct Factor {
  FactorKind kind = FactorKind::Word;
  AccessPattern word;                      // Word: non-empty, bar symbols allowed
  FnArg target;                            // Find, Fdep, Xf
  std::shared_ptr<const SymbolicSet> arg;  // Xf

  std::string str() const;
};

std::strong_ordering operator<=>(const Factor& a, const Factor& b);
bool operator==(const Factor& a, const Factor& b);

using Monomial = std::vector<Factor>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class SymbolicSet {
 public:
  /// ∅.
  SymbolicSet() = default;

  static SymbolicSet empty() { return {}; }
  static SymbolicSet epsilon();
  static SymbolicSet lit(const PatternSet& patterns);
  static SymbolicSet word(const AccessPattern& pattern);
  static SymbolicSet sigma();
  static SymbolicSet sigma_pgm();
  static SymbolicSet find(FnArg target);
  static SymbolicSet fdep(FnArg target);
  static SymbolicSet xf_app(FnArg target, SymbolicSet argument);
  static SymbolicSet from_monomial(Monomial m);

  friend SymbolicSet operator|(const SymbolicSet& a, const SymbolicSet& b);  // union
  friend SymbolicSet operator*(const SymbolicSet& a, const SymbolicSet& b);  // concatenation
  SymbolicSet& operator|=(const SymbolicSet& other);

  bool is_empty() const { return terms_.empty(); }
  bool is_epsilon() const;
  /// True iff every monomial is a plain word (or ε).
  bool is_literal() const;
  bool mentions_sigma() const;
  bool mentions_xf() const;

  const std::set<Monomial, MonomialLess>& monomials() const { return terms_; }

  /// Literal members, only meaningful when is_literal().
  PatternSet literal_patterns() const;

  /// Text such as "{ε, 1, 10} ∪ {100}·σpgm",
  /// "{1}·xf[app,1]({1~}·σ)", "∅".
  std::string str() const;

  friend std::strong_ordering operator<=>(const SymbolicSet& a, const SymbolicSet& b);
  friend bool operator==(const SymbolicSet& a, const SymbolicSet& b);

 private:
  std::set<Monomial, MonomialLess> terms_;
};

/// Variable -> live patterns. Bindings to ∅ are never stored.
using LivenessEnv = std::map<std::string, SymbolicSet>;

LivenessEnv env_union(const LivenessEnv& a, const LivenessEnv& b);
LivenessEnv env_remove_binding(const LivenessEnv& a, const std::string& v);
SymbolicSet env_lookup_patterns(const LivenessEnv& a, const std::string& v);
/// a with s unioned into v's binding.
LivenessEnv env_add(LivenessEnv a, const std::string& v, const SymbolicSet& s);
/// "{list1.(...), list2.(...)}"
std::string env_str(const LivenessEnv& env);

class AnnotationStore {
 public:
  /// Throws std::logic_error if the point is already annotated.
  void record(ProgramPoint point, LivenessEnv env);
  const LivenessEnv* find(ProgramPoint point) const;
  const std::map<ProgramPoint, LivenessEnv>& entries() const { return entries_; }

 private:
  std::map<ProgramPoint, LivenessEnv> entries_;
};

/// indep ∪ coef·σ with both parts σ-free.
struct AffineForm {
  SymbolicSet indep;
  SymbolicSet coef;

  bool operator==(const AffineForm&) const = default;
};

class AffineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rewrites every xf[f,i](S) as Find[f,i] ∪ Fdep[f,i]·S, recursively.
SymbolicSet expand_calls(const SymbolicSet& s);

/// Splits s (after expand_calls) into its σ-independent part and the
/// coefficient of a trailing σ. Throws AffineError if some monomial has σ in
/// a non-final position or more than once.
AffineForm normalize_affine(const SymbolicSet& s);

/// Replaces σ by t everywhere, including inside xf arguments.
SymbolicSet substitute_sigma(const SymbolicSet& s, const SymbolicSet& t);

}  // namespace heaplive
