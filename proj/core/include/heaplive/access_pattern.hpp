#pragma once

// Access patterns over the selector alphabet {0, 1, 0~, 1~} and the failure
// value ⊥. "0" selects the car link of a cons cell and "1" the cdr link; the
// barred symbols are the inverse selectors introduced when liveness is pushed
// backwards through cons.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heaplive {

enum class Symbol : std::uint8_t { Zero, One, BarZero, BarOne };

constexpr bool is_bar(Symbol s) { return s == Symbol::BarZero || s == Symbol::BarOne; }

/// The plain selector a barred symbol cancels against (0~ -> 0, 1~ -> 1).
constexpr Symbol unbarred(Symbol s) {
  switch (s) {
    case Symbol::BarZero: return Symbol::Zero;
    case Symbol::BarOne: return Symbol::One;
    default: return s;
  }
}

constexpr Symbol barred(Symbol s) {
  switch (s) {
    case Symbol::Zero: return Symbol::BarZero;
    case Symbol::One: return Symbol::BarOne;
    default: return s;
  }
}

/// ASCII rendering: "0", "1", "0~", "1~".
std::string_view symbol_text(Symbol s);

class AccessPattern {
 public:
  /// The empty pattern ε.
  AccessPattern() = default;
  AccessPattern(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}
  explicit AccessPattern(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  static AccessPattern bottom();

  /// Parses "ε" / "" / "⊥" or a sequence of 0, 1, 0~, 1~ (bars may also be
  /// written with a combining macron). Throws std::invalid_argument.
  static AccessPattern parse(std::string_view text);

  bool is_bottom() const { return bottom_; }
  bool is_epsilon() const { return !bottom_ && symbols_.empty(); }
  /// ⊥ or a string over {0,1}.
  bool is_canonical() const;
  bool has_bar() const;

  std::size_t size() const { return symbols_.size(); }
  std::span<const Symbol> symbols() const { return symbols_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  /// Concatenation; ⊥ is absorbing.
  AccessPattern operator+(const AccessPattern& rhs) const;
  AccessPattern& operator+=(const AccessPattern& rhs);
  AccessPattern& push_back(Symbol s);

  /// "ε", "⊥", or the symbols' ASCII renderings concatenated ("10", "00~").
  std::string str() const;

  /// Shortlex order: ⊥ first, then by length, then lexicographically.
  std::strong_ordering operator<=>(const AccessPattern& rhs) const;
  bool operator==(const AccessPattern& rhs) const = default;

 private:
  std::vector<Symbol> symbols_;
  bool bottom_ = false;
};

/// Rewrites the leftmost redex until the pattern is canonical: x~x -> ε,
/// x~y -> ⊥ for x != y, and a trailing x~ -> ⊥. A redex is a barred symbol
/// followed by a plain selector or by the end of the pattern.
AccessPattern reduce_to_canonical(const AccessPattern& pattern);

/// All patterns reachable in exactly one reduction step, at any redex.
std::vector<AccessPattern> one_step_reducts(const AccessPattern& pattern);

/// True iff p is a (possibly equal) prefix of q. Both must be canonical and
/// not ⊥; throws std::invalid_argument otherwise.
bool is_prefix(const AccessPattern& p, const AccessPattern& q);

/// A finite set of access patterns. ⊥ is never stored: inserting it is a no-op.
class PatternSet {
 public:
  using const_iterator = std::set<AccessPattern>::const_iterator;

  PatternSet() = default;
  PatternSet(std::initializer_list<AccessPattern> patterns);

  static PatternSet epsilon() { return PatternSet{AccessPattern{}}; }

  void insert(const AccessPattern& p);
  void insert(const PatternSet& other);
  bool contains(const AccessPattern& p) const { return items_.contains(p); }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  /// "{ε, 1, 10}" or "∅".
  std::string str() const;

  auto operator<=>(const PatternSet&) const = default;
  bool operator==(const PatternSet&) const = default;

 private:
  std::set<AccessPattern> items_;
};

/// Pairwise concatenation σ1·σ2, no reduction applied.
PatternSet concat_sets(const PatternSet& lhs, const PatternSet& rhs);

/// Reduces every member; ⊥ results are dropped.
PatternSet reduce_all(const PatternSet& set);

/// An access expression v.α.
struct RootedPath {
  std::string var;
  AccessPattern pattern;

  std::string str() const { return var + "." + pattern.str(); }
  auto operator<=>(const RootedPath&) const = default;
  bool operator==(const RootedPath&) const = default;
};

/// Parses a membership query pattern: canonical only, i.e. characters 0 and 1,
/// or "" / "ε" for the empty pattern. Throws std::invalid_argument.
AccessPattern parse_canonical_query(std::string_view text);

}  // namespace heaplive
