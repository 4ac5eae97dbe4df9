#include "heaplive/symbolic.hpp"

#include <algorithm>

namespace heaplive {

namespace {

int rank(FactorKind k) { return static_cast<int>(k); }

std::strong_ordering compare_words(const AccessPattern& a, const AccessPattern& b) {
  auto sa = a.symbols();
  auto sb = b.symbols();
  return std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
}

std::strong_ordering compare_monomials(const Monomial& a, const Monomial& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool is_literal_monomial(const Monomial& m) {
  return m.empty() || (m.size() == 1 && m[0].kind == FactorKind::Word);
}

// Concatenation of two monomials, merging a word boundary.
Monomial join(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  auto it = b.begin();
  if (!out.empty() && it != b.end() && out.back().kind == FactorKind::Word &&
      it->kind == FactorKind::Word) {
    out.back().word += it->word;
    ++it;
  }
  out.insert(out.end(), it, b.end());
  return out;
}

Factor simple_factor(FactorKind kind, FnArg target = {}) {
  Factor f;
  f.kind = kind;
  f.target = std::move(target);
  return f;
}

}  // namespace

std::string Factor::str() const {
  switch (kind) {
    case FactorKind::Word: return "{" + word.str() + "}";
    case FactorKind::Sigma: return "σ";
    case FactorKind::SigmaPgm: return "σpgm";
    case FactorKind::Find: return "Find[" + target.str() + "]";
    case FactorKind::Fdep: return "Fdep[" + target.str() + "]";
    case FactorKind::Xf: return "xf[" + target.str() + "](" + arg->str() + ")";
  }
  return "?";
}

std::strong_ordering operator<=>(const Factor& a, const Factor& b) {
  if (auto c = rank(a.kind) <=> rank(b.kind); c != 0) return c;
  switch (a.kind) {
    case FactorKind::Word: return compare_words(a.word, b.word);
    case FactorKind::Sigma:
    case FactorKind::SigmaPgm: return std::strong_ordering::equal;
    case FactorKind::Find:
    case FactorKind::Fdep: return a.target <=> b.target;
    case FactorKind::Xf:
      if (auto c = a.target <=> b.target; c != 0) return c;
      return *a.arg <=> *b.arg;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Factor& a, const Factor& b) { return (a <=> b) == 0; }

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  return compare_monomials(a, b) < 0;
}

SymbolicSet SymbolicSet::epsilon() { return from_monomial({}); }

SymbolicSet SymbolicSet::lit(const PatternSet& patterns) {
  SymbolicSet s;
  for (const auto& p : patterns) s |= word(p);
  return s;
}

SymbolicSet SymbolicSet::word(const AccessPattern& pattern) {
  if (pattern.is_bottom()) return {};
  if (pattern.is_epsilon()) return epsilon();
  Factor f;
  f.kind = FactorKind::Word;
  f.word = pattern;
  return from_monomial({f});
}

SymbolicSet SymbolicSet::sigma() { return from_monomial({simple_factor(FactorKind::Sigma)}); }

SymbolicSet SymbolicSet::sigma_pgm() {
  return from_monomial({simple_factor(FactorKind::SigmaPgm)});
}

SymbolicSet SymbolicSet::find(FnArg target) {
  return from_monomial({simple_factor(FactorKind::Find, std::move(target))});
}

SymbolicSet SymbolicSet::fdep(FnArg target) {
  return from_monomial({simple_factor(FactorKind::Fdep, std::move(target))});
}

SymbolicSet SymbolicSet::xf_app(FnArg target, SymbolicSet argument) {
  Factor f = simple_factor(FactorKind::Xf, std::move(target));
  f.arg = std::make_shared<const SymbolicSet>(std::move(argument));
  return from_monomial({f});
}

SymbolicSet SymbolicSet::from_monomial(Monomial m) {
  SymbolicSet s;
  s.terms_.insert(std::move(m));
  return s;
}

SymbolicSet operator|(const SymbolicSet& a, const SymbolicSet& b) {
  SymbolicSet out = a;
  out |= b;
  return out;
}

SymbolicSet& SymbolicSet::operator|=(const SymbolicSet& other) {
  terms_.insert(other.terms_.begin(), other.terms_.end());
  return *this;
}

SymbolicSet operator*(const SymbolicSet& a, const SymbolicSet& b) {
  SymbolicSet out;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) out.terms_.insert(join(x, y));
  }
  return out;
}

bool SymbolicSet::is_epsilon() const {
  return terms_.size() == 1 && terms_.begin()->empty();
}

bool SymbolicSet::is_literal() const {
  return std::all_of(terms_.begin(), terms_.end(), is_literal_monomial);
}

namespace {

bool any_factor(const SymbolicSet& s, FactorKind kind) {
  for (const auto& m : s.monomials()) {
    for (const auto& f : m) {
      if (f.kind == kind) return true;
      if (f.kind == FactorKind::Xf && any_factor(*f.arg, kind)) return true;
    }
  }
  return false;
}

}  // namespace

bool SymbolicSet::mentions_sigma() const { return any_factor(*this, FactorKind::Sigma); }
bool SymbolicSet::mentions_xf() const { return any_factor(*this, FactorKind::Xf); }

PatternSet SymbolicSet::literal_patterns() const {
  PatternSet out;
  for (const auto& m : terms_) {
    if (m.empty()) out.insert(AccessPattern{});
    else if (is_literal_monomial(m)) out.insert(m[0].word);
  }
  return out;
}

std::string SymbolicSet::str() const {
  if (terms_.empty()) return "∅";
  std::vector<std::string> parts;
  PatternSet lits = literal_patterns();
  if (!lits.empty()) parts.push_back(lits.str());
  for (const auto& m : terms_) {
    if (is_literal_monomial(m)) continue;
    std::string text;
    for (const auto& f : m) {
      if (!text.empty()) text += "·";
      text += f.str();
    }
    parts.push_back(std::move(text));
  }
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " ∪ ";
    out += p;
  }
  return out;
}

std::strong_ordering operator<=>(const SymbolicSet& a, const SymbolicSet& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (auto c = compare_monomials(*ia, *ib); c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const SymbolicSet& a, const SymbolicSet& b) { return (a <=> b) == 0; }

LivenessEnv env_union(const LivenessEnv& a, const LivenessEnv& b) {
  LivenessEnv out = a;
  for (const auto& [v, s] : b) out = env_add(std::move(out), v, s);
  return out;
}

LivenessEnv env_remove_binding(const LivenessEnv& a, const std::string& v) {
  LivenessEnv out = a;
  out.erase(v);
  return out;
}

SymbolicSet env_lookup_patterns(const LivenessEnv& a, const std::string& v) {
  auto it = a.find(v);
  return it == a.end() ? SymbolicSet{} : it->second;
}

LivenessEnv env_add(LivenessEnv a, const std::string& v, const SymbolicSet& s) {
  if (s.is_empty()) return a;
  a[v] |= s;
  return a;
}

std::string env_str(const LivenessEnv& env) {
  std::string out = "{";
  for (const auto& [v, s] : env) {
    if (out.size() > 1) out += ", ";
    out += v + ".(" + s.str() + ")";
  }
  return out + "}";
}

void AnnotationStore::record(ProgramPoint point, LivenessEnv env) {
  if (!entries_.emplace(point, std::move(env)).second) {
    throw std::logic_error("program point " + std::to_string(point) + " annotated twice");
  }
}

const LivenessEnv* AnnotationStore::find(ProgramPoint point) const {
  auto it = entries_.find(point);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

// Applies `rewrite` to every factor and multiplies the results out.
template <typename F>
SymbolicSet map_factors(const SymbolicSet& s, F&& rewrite) {
  SymbolicSet out;
  for (const auto& m : s.monomials()) {
    SymbolicSet product = SymbolicSet::epsilon();
    for (const auto& f : m) product = product * rewrite(f);
    out |= product;
  }
  return out;
}

}  // namespace

SymbolicSet expand_calls(const SymbolicSet& s) {
  return map_factors(s, [](const Factor& f) {
    if (f.kind != FactorKind::Xf) return SymbolicSet::from_monomial({f});
    return SymbolicSet::find(f.target) | SymbolicSet::fdep(f.target) * expand_calls(*f.arg);
  });
}

AffineForm normalize_affine(const SymbolicSet& s) {
  AffineForm out;
  const SymbolicSet expanded = expand_calls(s);
  for (const auto& m : expanded.monomials()) {
    auto sigmas = std::count_if(m.begin(), m.end(),
                                [](const Factor& f) { return f.kind == FactorKind::Sigma; });
    if (sigmas == 0) {
      out.indep |= SymbolicSet::from_monomial(m);
    } else if (sigmas == 1 && m.back().kind == FactorKind::Sigma) {
      out.coef |= SymbolicSet::from_monomial(Monomial(m.begin(), m.end() - 1));
    } else {
      throw AffineError("term is not affine in σ: " + SymbolicSet::from_monomial(m).str());
    }
  }
  return out;
}

SymbolicSet substitute_sigma(const SymbolicSet& s, const SymbolicSet& t) {
  return map_factors(s, [&](const Factor& f) {
    if (f.kind == FactorKind::Sigma) return t;
    if (f.kind == FactorKind::Xf) return SymbolicSet::xf_app(f.target, substitute_sigma(*f.arg, t));
    return SymbolicSet::from_monomial({f});
  });
}

}  // namespace heaplive
