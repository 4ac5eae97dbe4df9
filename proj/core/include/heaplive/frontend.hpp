#pragma once

// Abstract syntax, parser and structural checks for the first-order eager
// list language:
//
//   p ::= (define (f v1 ... vn) e)* e
//   e ::= k | v | Nil | (cons e e) | (car e) | (cdr e) | (pair? e) | (null? e)
//       | (+ e e) | (if e e e) | (let v <- e ; e) | (f e ... e)
//
// Any expression may be preceded by a pin `@N` fixing its program point.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heaplive {

using ProgramPoint = int;
inline constexpr ProgramPoint kNoPoint = -1;

struct SourceLoc {
  int line = 0;
  int column = 0;
};

enum class Primitive { Car, Cdr, Cons, IsNull, IsPair, Plus };

std::string_view primitive_name(Primitive p);
int primitive_arity(Primitive p);

enum class ExprKind { Const, Var, Nil, Prim, If, Let, Call };

struct Expr {
  ExprKind kind = ExprKind::Nil;
  ProgramPoint point = kNoPoint;
  std::optional<ProgramPoint> pin;
  SourceLoc loc;

  std::int64_t value = 0;   // Const
  Primitive prim = Primitive::Car;  // Prim
  std::string name;         // Var: variable, Let: bound variable, Call: function
  std::vector<Expr> args;   // Prim/Call operands; If: cond, then, else; Let: bound, body

  static Expr constant(std::int64_t v);
  static Expr var(std::string v);
  static Expr nil();
  static Expr prim_app(Primitive p, std::vector<Expr> operands);
  static Expr if_(Expr cond, Expr then_branch, Expr else_branch);
  static Expr let(std::string v, Expr bound, Expr body);
  static Expr call(std::string f, std::vector<Expr> operands);

  /// Structural equality; ignores points and source locations, compares pins.
  bool same_shape(const Expr& other) const;
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  Expr body;
  SourceLoc loc;
};

struct Program {
  std::vector<FunctionDef> definitions;
  Expr main;

  const FunctionDef* find(std::string_view name) const;
  bool same_shape(const Program& other) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, const std::string& message);
  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(SourceLoc loc, const std::string& message);
  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

Program parse_program(std::string_view text);

/// Assigns dense pre-order ids 1..N, definitions first, then main. Pinned
/// expressions keep their pin and the counter skips pinned numbers. Throws
/// ValidationError on duplicate or out-of-range pins.
Program label_program_points(Program p);

/// Renames shadowed/reused variable names to globally unique ones (x, x_1,
/// x_2, ...), then checks scoping, arity and call targets. Requires a labeled
/// program. Throws ValidationError.
Program validate(Program p);

/// parse + label + validate.
Program load_program(std::string_view text);

/// Concrete syntax; parse_program(pretty_print(p)) has the same shape as p.
std::string pretty_print(const Program& p);
std::string pretty_print(const Expr& e);

/// Calls f(e) for every node in pre-order.
template <typename F>
void for_each_expr(const Expr& e, F&& f) {
  f(e);
  for (const auto& a : e.args) for_each_expr(a, f);
}

/// Points of the main expression, ascending.
std::vector<ProgramPoint> main_points(const Program& p);

/// Variables in scope at every point of the main expression, in binding order.
std::map<ProgramPoint, std::vector<std::string>> main_scopes(const Program& p);

const Expr* find_point(const Program& p, ProgramPoint point);

}  // namespace heaplive
