#include "heaplive/access_pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace heaplive {

namespace {

constexpr std::string_view kEpsilon = "ε";
constexpr std::string_view kBottom = "⊥";
constexpr std::string_view kMacron = "\xCC\x84";  // U+0304 COMBINING MACRON

}  // namespace

std::string_view symbol_text(Symbol s) {
  switch (s) {
    case Symbol::Zero: return "0";
    case Symbol::One: return "1";
    case Symbol::BarZero: return "0~";
    case Symbol::BarOne: return "1~";
  }
  return "?";
}

AccessPattern AccessPattern::bottom() {
  AccessPattern p;
  p.bottom_ = true;
  return p;
}

AccessPattern AccessPattern::parse(std::string_view text) {
  if (text.empty() || text == kEpsilon) return AccessPattern{};
  if (text == kBottom) return bottom();
  AccessPattern p;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bad access pattern '" + std::string(text) + "'");
    }
    Symbol s = c == '0' ? Symbol::Zero : Symbol::One;
    ++i;
    if (i < text.size() && text[i] == '~') {
      s = barred(s);
      ++i;
    } else if (text.substr(i, kMacron.size()) == kMacron) {
      s = barred(s);
      i += kMacron.size();
    }
    p.symbols_.push_back(s);
  }
  return p;
}

bool AccessPattern::is_canonical() const {
  return bottom_ || !has_bar();
}

bool AccessPattern::has_bar() const {
  return std::any_of(symbols_.begin(), symbols_.end(), is_bar);
}

AccessPattern AccessPattern::operator+(const AccessPattern& rhs) const {
  AccessPattern out = *this;
  out += rhs;
  return out;
}

AccessPattern& AccessPattern::operator+=(const AccessPattern& rhs) {
  if (bottom_ || rhs.bottom_) {
    *this = bottom();
    return *this;
  }
  symbols_.insert(symbols_.end(), rhs.symbols_.begin(), rhs.symbols_.end());
  return *this;
}

AccessPattern& AccessPattern::push_back(Symbol s) {
  if (!bottom_) symbols_.push_back(s);
  return *this;
}

std::string AccessPattern::str() const {
  if (bottom_) return std::string(kBottom);
  if (symbols_.empty()) return std::string(kEpsilon);
  std::string out;
  for (Symbol s : symbols_) out += symbol_text(s);
  return out;
}

std::strong_ordering AccessPattern::operator<=>(const AccessPattern& rhs) const {
  if (bottom_ != rhs.bottom_) return bottom_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = symbols_.size() <=> rhs.symbols_.size(); c != 0) return c;
  return symbols_ <=> rhs.symbols_;
}

namespace {

// Index of the leftmost redex, or npos.
std::size_t leftmost_redex(const std::vector<Symbol>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_bar(s[i]) && (i + 1 == s.size() || !is_bar(s[i + 1]))) return i;
  }
  return std::string::npos;
}

// Rewrites the redex at i; returns false when it produces ⊥.
bool rewrite_at(std::vector<Symbol>& s, std::size_t i) {
  if (i + 1 == s.size() || s[i + 1] != unbarred(s[i])) return false;
  s.erase(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  return true;
}

}  // namespace

AccessPattern reduce_to_canonical(const AccessPattern& pattern) {
  if (pattern.is_bottom()) return pattern;
  std::vector<Symbol> s(pattern.symbols().begin(), pattern.symbols().end());
  for (std::size_t i = leftmost_redex(s); i != std::string::npos; i = leftmost_redex(s)) {
    if (!rewrite_at(s, i)) return AccessPattern::bottom();
  }
  return AccessPattern(std::move(s));
}

std::vector<AccessPattern> one_step_reducts(const AccessPattern& pattern) {
  std::vector<AccessPattern> out;
  if (pattern.is_bottom()) return out;
  const auto syms = pattern.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (!is_bar(syms[i]) || (i + 1 < syms.size() && is_bar(syms[i + 1]))) continue;
    std::vector<Symbol> s(syms.begin(), syms.end());
    out.push_back(rewrite_at(s, i) ? AccessPattern(std::move(s)) : AccessPattern::bottom());
  }
  return out;
}

bool is_prefix(const AccessPattern& p, const AccessPattern& q) {
  if (p.is_bottom() || q.is_bottom()) throw std::invalid_argument("is_prefix: ⊥ argument");
  if (!p.is_canonical() || !q.is_canonical()) {
    throw std::invalid_argument("is_prefix: non-canonical argument");
  }
  if (p.size() > q.size()) return false;
  return std::equal(p.symbols().begin(), p.symbols().end(), q.symbols().begin());
}

PatternSet::PatternSet(std::initializer_list<AccessPattern> patterns) {
  for (const auto& p : patterns) insert(p);
}

void PatternSet::insert(const AccessPattern& p) {
  if (!p.is_bottom()) items_.insert(p);
}

void PatternSet::insert(const PatternSet& other) {
  items_.insert(other.items_.begin(), other.items_.end());
}

std::string PatternSet::str() const {
  if (items_.empty()) return "∅";
  std::string out = "{";
  bool first = true;
  for (const auto& p : items_) {
    if (!first) out += ", ";
    out += p.str();
    first = false;
  }
  return out + "}";
}

PatternSet concat_sets(const PatternSet& lhs, const PatternSet& rhs) {
  PatternSet out;
  for (const auto& a : lhs) {
    for (const auto& b : rhs) out.insert(a + b);
  }
  return out;
}

PatternSet reduce_all(const PatternSet& set) {
  PatternSet out;
  for (const auto& p : set) out.insert(reduce_to_canonical(p));
  return out;
}

AccessPattern parse_canonical_query(std::string_view text) {
  if (text.empty() || text == kEpsilon) return AccessPattern{};
  std::vector<Symbol> s;
  for (char c : text) {
    if (c == '0') {
      s.push_back(Symbol::Zero);
    } else if (c == '1') {
      s.push_back(Symbol::One);
    } else {
      throw std::invalid_argument("query pattern must be canonical (only 0 and 1): '" +
                                  std::string(text) + "'");
    }
  }
  return AccessPattern(std::move(s));
}

}  // namespace heaplive
