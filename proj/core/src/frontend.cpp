#include "heaplive/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace heaplive {

std::string_view primitive_name(Primitive p) {
  switch (p) {
    case Primitive::Car: return "car";
    case Primitive::Cdr: return "cdr";
    case Primitive::Cons: return "cons";
    case Primitive::IsNull: return "null?";
    case Primitive::IsPair: return "pair?";
    case Primitive::Plus: return "+";
  }
  return "?";
}

int primitive_arity(Primitive p) {
  return (p == Primitive::Cons || p == Primitive::Plus) ? 2 : 1;
}

Expr Expr::constant(std::int64_t v) {
  Expr e;
  e.kind = ExprKind::Const;
  e.value = v;
  return e;
}

Expr Expr::var(std::string v) {
  Expr e;
  e.kind = ExprKind::Var;
  e.name = std::move(v);
  return e;
}

Expr Expr::nil() { return Expr{}; }

Expr Expr::prim_app(Primitive p, std::vector<Expr> operands) {
  Expr e;
  e.kind = ExprKind::Prim;
  e.prim = p;
  e.args = std::move(operands);
  return e;
}

Expr Expr::if_(Expr cond, Expr then_branch, Expr else_branch) {
  Expr e;
  e.kind = ExprKind::If;
  e.args = {std::move(cond), std::move(then_branch), std::move(else_branch)};
  return e;
}

Expr Expr::let(std::string v, Expr bound, Expr body) {
  Expr e;
  e.kind = ExprKind::Let;
  e.name = std::move(v);
  e.args = {std::move(bound), std::move(body)};
  return e;
}

Expr Expr::call(std::string f, std::vector<Expr> operands) {
  Expr e;
  e.kind = ExprKind::Call;
  e.name = std::move(f);
  e.args = std::move(operands);
  return e;
}

bool Expr::same_shape(const Expr& o) const {
  if (kind != o.kind || pin != o.pin || args.size() != o.args.size()) return false;
  switch (kind) {
    case ExprKind::Const: if (value != o.value) return false; break;
    case ExprKind::Prim: if (prim != o.prim) return false; break;
    case ExprKind::Var:
    case ExprKind::Let:
    case ExprKind::Call: if (name != o.name) return false; break;
    default: break;
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].same_shape(o.args[i])) return false;
  }
  return true;
}

const FunctionDef* Program::find(std::string_view name) const {
  for (const auto& d : definitions) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

bool Program::same_shape(const Program& o) const {
  if (definitions.size() != o.definitions.size()) return false;
  for (std::size_t i = 0; i < definitions.size(); ++i) {
    const auto& a = definitions[i];
    const auto& b = o.definitions[i];
    if (a.name != b.name || a.params != b.params || !a.body.same_shape(b.body)) return false;
  }
  return main.same_shape(o.main);
}

namespace {

std::string located(SourceLoc loc, const std::string& message) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message;
}

}  // namespace

ParseError::ParseError(SourceLoc loc, const std::string& message)
    : std::runtime_error(located(loc, message)), loc_(loc) {}

ValidationError::ValidationError(SourceLoc loc, const std::string& message)
    : std::runtime_error(located(loc, message)), loc_(loc) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class TokKind { LParen, RParen, Semi, Atom, End };

struct Token {
  TokKind kind;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      SourceLoc loc{line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back({TokKind::End, "", loc});
        return out;
      }
      char c = text_[pos_];
      if (c == '(' || c == ')') {
        advance(1);
        out.push_back({c == '(' ? TokKind::LParen : TokKind::RParen, std::string(1, c), loc});
      } else if (c == ';') {
        advance(1);
        out.push_back({TokKind::Semi, ";", loc});
      } else if (starts_with("﹔")) {
        advance(std::string_view("﹔").size());
        out.push_back({TokKind::Semi, ";", loc});
      } else {
        std::size_t start = pos_;
        while (pos_ < text_.size() && !is_delim(text_[pos_]) && !starts_with("﹔")) advance(1);
        out.push_back({TokKind::Atom, std::string(text_.substr(start, pos_ - start)), loc});
      }
    }
  }

 private:
  static bool is_delim(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';';
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance(1);
      } else if (starts_with(";;")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::set<std::string, std::less<>> kReserved = {
    "define", "if", "let", "cons", "car", "cdr", "pair?", "null?", "+", "Nil", "<-", "←"};

bool is_identifier(std::string_view s) {
  if (s.empty() || kReserved.contains(s)) return false;
  unsigned char c0 = static_cast<unsigned char>(s[0]);
  if (std::isdigit(c0) || c0 == '@' || c0 == '-' || c0 == '~') return false;
  return std::none_of(s.begin(), s.end(), [](char c) { return c == '.' || c == ','; });
}

std::optional<std::int64_t> as_integer(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    std::optional<Expr> main;
    while (peek().kind != TokKind::End) {
      if (main) throw ParseError(peek().loc, "unexpected expression after the main expression");
      if (peek().kind == TokKind::LParen && peek(1).kind == TokKind::Atom && peek(1).text == "define") {
        p.definitions.push_back(definition());
      } else {
        main = expr();
      }
    }
    if (!main) throw ParseError(peek().loc, "program has no main expression");
    p.main = std::move(*main);
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  const Token& expect(TokKind k, std::string_view what) {
    if (peek().kind != k) {
      throw ParseError(peek().loc, "expected " + std::string(what) + ", found " + describe(peek()));
    }
    return next();
  }
  static std::string describe(const Token& t) {
    return t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
  }

  std::string identifier(std::string_view what) {
    const Token& t = expect(TokKind::Atom, what);
    if (!is_identifier(t.text)) {
      throw ParseError(t.loc, "expected " + std::string(what) + ", found '" + t.text + "'");
    }
    return t.text;
  }

  FunctionDef definition() {
    FunctionDef d;
    d.loc = expect(TokKind::LParen, "'('").loc;
    next();  // define
    expect(TokKind::LParen, "'(' before function header");
    d.name = identifier("function name");
    while (peek().kind == TokKind::Atom) d.params.push_back(identifier("parameter name"));
    expect(TokKind::RParen, "')' after parameters");
    d.body = expr();
    expect(TokKind::RParen, "')' closing define");
    return d;
  }

  Expr expr() {
    std::optional<ProgramPoint> pin;
    SourceLoc pin_loc = peek().loc;
    if (peek().kind == TokKind::Atom && peek().text.starts_with('@')) {
      const Token& t = next();
      auto n = as_integer(std::string_view(t.text).substr(1));
      if (!n || *n < 1) throw ParseError(t.loc, "bad program point pin '" + t.text + "'");
      pin = static_cast<ProgramPoint>(*n);
    }
    Expr e = bare_expr();
    e.pin = pin;
    if (pin) e.loc = pin_loc;
    return e;
  }

  Expr bare_expr() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Atom: {
        next();
        Expr e;
        if (auto v = as_integer(t.text)) {
          e = Expr::constant(*v);
        } else if (t.text == "Nil") {
          e = Expr::nil();
        } else if (is_identifier(t.text)) {
          e = Expr::var(t.text);
        } else {
          throw ParseError(t.loc, "unknown keyword '" + t.text + "' in expression position");
        }
        e.loc = t.loc;
        return e;
      }
      case TokKind::LParen: return compound();
      default: throw ParseError(t.loc, "expected expression, found " + describe(t));
    }
  }

  Expr compound() {
    SourceLoc open = next().loc;
    const Token& head = peek();
    if (head.kind != TokKind::Atom) {
      throw ParseError(head.loc, "expected operator after '(', found " + describe(head));
    }
    next();
    Expr e;
    const std::string& h = head.text;
    if (h == "if") {
      Expr c = expr();
      Expr a = expr();
      Expr b = expr();
      e = Expr::if_(std::move(c), std::move(a), std::move(b));
    } else if (h == "let") {
      std::string v = identifier("variable name after let");
      const Token& arrow = expect(TokKind::Atom, "'<-'");
      if (arrow.text != "<-" && arrow.text != "←") {
        throw ParseError(arrow.loc, "expected '<-' in let, found '" + arrow.text + "'");
      }
      Expr bound = expr();
      expect(TokKind::Semi, "';' in let");
      Expr body = expr();
      e = Expr::let(std::move(v), std::move(bound), std::move(body));
    } else if (auto prim = primitive_of(h)) {
      std::vector<Expr> ops = operands();
      int arity = primitive_arity(*prim);
      if (static_cast<int>(ops.size()) != arity) {
        throw ParseError(head.loc, "'" + h + "' takes " + std::to_string(arity) + " operand" +
                                       (arity == 1 ? "" : "s") + ", got " +
                                       std::to_string(ops.size()));
      }
      e = Expr::prim_app(*prim, std::move(ops));
    } else if (is_identifier(h)) {
      e = Expr::call(h, operands());
    } else {
      throw ParseError(head.loc, "unknown keyword '" + h + "'");
    }
    expect(TokKind::RParen, "')'");
    e.loc = open;
    return e;
  }

  std::vector<Expr> operands() {
    std::vector<Expr> ops;
    while (peek().kind != TokKind::RParen && peek().kind != TokKind::End) ops.push_back(expr());
    return ops;
  }

  static std::optional<Primitive> primitive_of(std::string_view h) {
    if (h == "car") return Primitive::Car;
    if (h == "cdr") return Primitive::Cdr;
    if (h == "cons") return Primitive::Cons;
    if (h == "null?") return Primitive::IsNull;
    if (h == "pair?") return Primitive::IsPair;
    if (h == "+") return Primitive::Plus;
    return std::nullopt;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
  return Parser(Lexer(text).run()).program();
}

// ---------------------------------------------------------------------------
// Labeling

namespace {

template <typename F>
void for_each_mut(Expr& e, F&& f) {
  f(e);
  for (auto& a : e.args) for_each_mut(a, f);
}

template <typename F>
void for_each_program_expr(Program& p, F&& f) {
  for (auto& d : p.definitions) for_each_mut(d.body, f);
  for_each_mut(p.main, f);
}

}  // namespace

Program label_program_points(Program p) {
  std::size_t count = 0;
  std::map<ProgramPoint, SourceLoc> pinned;
  for_each_program_expr(p, [&](Expr& e) {
    ++count;
    if (!e.pin) return;
    if (auto [it, fresh] = pinned.emplace(*e.pin, e.loc); !fresh) {
      throw ValidationError(e.loc, "program point @" + std::to_string(*e.pin) + " pinned twice");
    }
  });
  for (const auto& [pt, loc] : pinned) {
    if (pt < 1 || static_cast<std::size_t>(pt) > count) {
      throw ValidationError(loc, "pinned program point @" + std::to_string(pt) +
                                     " outside 1.." + std::to_string(count));
    }
  }
  ProgramPoint counter = 1;
  for_each_program_expr(p, [&](Expr& e) {
    if (e.pin) {
      e.point = *e.pin;
      return;
    }
    while (pinned.contains(counter)) ++counter;
    e.point = counter++;
  });
  return p;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Validator {
 public:
  explicit Validator(Program& p) : p_(p) {
    for (const auto& d : p_.definitions) {
      if (!functions_.emplace(d.name, &d).second) {
        throw ValidationError(d.loc, "function '" + d.name + "' defined more than once");
      }
    }
    // Every original binder name is reserved so fresh names cannot capture.
    for (auto& d : p_.definitions) {
      for (const auto& v : d.params) taken_.insert(v);
    }
    for_each_program_expr(p_, [&](Expr& e) {
      if (e.kind == ExprKind::Let) taken_.insert(e.name);
    });
  }

  void run() {
    for_each_program_expr(p_, [&](Expr& e) {
      if (e.point == kNoPoint) throw ValidationError(e.loc, "program is not labeled");
    });
    for (auto& d : p_.definitions) {
      std::map<std::string, std::string> scope;
      std::set<std::string> local;
      for (auto& v : d.params) {
        if (!local.insert(v).second) {
          throw ValidationError(d.loc, "parameter '" + v + "' repeated in '" + d.name + "'");
        }
        std::string fresh = bind(v);
        scope[v] = fresh;
        v = fresh;
      }
      walk(d.body, scope);
    }
    std::map<std::string, std::string> scope;
    walk(p_.main, scope);
  }

 private:
  // Returns the unique name for a new binder of `name`.
  std::string bind(const std::string& name) {
    if (used_.insert(name).second) return name;
    for (int k = 1;; ++k) {
      std::string candidate = name + "_" + std::to_string(k);
      if (!taken_.contains(candidate) && used_.insert(candidate).second) return candidate;
    }
  }

  void walk(Expr& e, std::map<std::string, std::string>& scope) {
    switch (e.kind) {
      case ExprKind::Var: {
        auto it = scope.find(e.name);
        if (it == scope.end()) {
          if (functions_.contains(e.name)) {
            throw ValidationError(e.loc, "function '" + e.name + "' used as a value");
          }
          throw ValidationError(e.loc, "unbound variable '" + e.name + "'");
        }
        e.name = it->second;
        return;
      }
      case ExprKind::Let: {
        walk(e.args[0], scope);
        std::string fresh = bind(e.name);
        auto saved = scope.find(e.name) != scope.end() ? std::optional(scope[e.name]) : std::nullopt;
        std::string original = e.name;
        scope[original] = fresh;
        e.name = fresh;
        walk(e.args[1], scope);
        if (saved) scope[original] = *saved; else scope.erase(original);
        return;
      }
      case ExprKind::Call: {
        auto it = functions_.find(e.name);
        if (it == functions_.end()) {
          throw ValidationError(e.loc, "unknown function '" + e.name + "'");
        }
        if (it->second->params.size() != e.args.size()) {
          throw ValidationError(e.loc, "arity mismatch: '" + e.name + "' expects " +
                                           std::to_string(it->second->params.size()) +
                                           " argument(s), got " + std::to_string(e.args.size()));
        }
        break;
      }
      case ExprKind::Prim:
        if (static_cast<int>(e.args.size()) != primitive_arity(e.prim)) {
          throw ValidationError(e.loc, "arity mismatch for '" + std::string(primitive_name(e.prim)) + "'");
        }
        break;
      default: break;
    }
    for (auto& a : e.args) walk(a, scope);
  }

  Program& p_;
  std::unordered_map<std::string, const FunctionDef*> functions_;
  std::set<std::string> taken_;
  std::set<std::string> used_;
};

}  // namespace

Program validate(Program p) {
  Validator(p).run();
  std::set<ProgramPoint> seen;
  for_each_program_expr(p, [&](Expr& e) {
    if (!seen.insert(e.point).second) {
      throw ValidationError(e.loc, "program point " + std::to_string(e.point) + " used twice");
    }
  });
  return p;
}

Program load_program(std::string_view text) {
  return validate(label_program_points(parse_program(text)));
}

// ---------------------------------------------------------------------------
// Printing and queries

namespace {

void print(std::ostream& os, const Expr& e) {
  if (e.pin) os << '@' << *e.pin << ' ';
  switch (e.kind) {
    case ExprKind::Const: os << e.value; return;
    case ExprKind::Var: os << e.name; return;
    case ExprKind::Nil: os << "Nil"; return;
    case ExprKind::Prim: os << '(' << primitive_name(e.prim); break;
    case ExprKind::If: os << "(if"; break;
    case ExprKind::Let:
      os << "(let " << e.name << " <- ";
      print(os, e.args[0]);
      os << " ; ";
      print(os, e.args[1]);
      os << ')';
      return;
    case ExprKind::Call: os << '(' << e.name; break;
  }
  for (const auto& a : e.args) {
    os << ' ';
    print(os, a);
  }
  os << ')';
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  for (const auto& d : p.definitions) {
    os << "(define (" << d.name;
    for (const auto& v : d.params) os << ' ' << v;
    os << ")\n  ";
    print(os, d.body);
    os << ")\n";
  }
  print(os, p.main);
  os << '\n';
  return os.str();
}

std::vector<ProgramPoint> main_points(const Program& p) {
  std::vector<ProgramPoint> out;
  for_each_expr(p.main, [&](const Expr& e) { out.push_back(e.point); });
  std::sort(out.begin(), out.end());
  return out;
}

std::map<ProgramPoint, std::vector<std::string>> main_scopes(const Program& p) {
  std::map<ProgramPoint, std::vector<std::string>> out;
  std::vector<std::string> scope;
  std::function<void(const Expr&)> go = [&](const Expr& e) {
    out[e.point] = scope;
    if (e.kind == ExprKind::Let) {
      go(e.args[0]);
      scope.push_back(e.name);
      go(e.args[1]);
      scope.pop_back();
      return;
    }
    for (const auto& a : e.args) go(a);
  };
  go(p.main);
  return out;
}

const Expr* find_point(const Program& p, ProgramPoint point) {
  const Expr* found = nullptr;
  auto visit = [&](const Expr& e) {
    if (e.point == point) found = &e;
  };
  for (const auto& d : p.definitions) for_each_expr(d.body, visit);
  for_each_expr(p.main, visit);
  return found;
}

}  // namespace heaplive
