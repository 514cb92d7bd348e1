#pragma once
#include <array>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

namespace lambda1 {

// Position-tagged syntax error (0-based character offset into the source).
struct ParseError : std::runtime_error {
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg),
        pos(pos) {}
  std::size_t pos;
};

// Domain fault during evaluation (log of nonpositive, division by zero, ...).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Variable valuation for expression evaluation over grid coordinates.
// t = |z|^2 and r = |z| are derived from the coordinates unless bound
// explicitly.
struct Env {
  std::array<double, 4> x{};  // x1, y1, x2, y2
  bool t_bound = false;
  double t = 0;

  static Env at_point(std::array<double, 4> coords) {
    Env e;
    e.x = coords;
    return e;
  }
  static Env with_t(double t) {
    Env e;
    e.t_bound = true;
    e.t = t;
    return e;
  }
  double norm2() const {
    if (t_bound) return t;
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
  }
};

struct ExprNode;

// Immutable parse tree over the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?        (constant exponent, right-assoc)
//   unary  := '-'? atom
//   atom   := number | variable | func '(' expr (',' expr)* ')' | '(' expr ')'
//   func   in {min, max, abs, exp, log, sqrt, sin, cos}
//   variable in {x1, y1, x2, y2, t, r}
class Expr {
 public:
  Expr() = default;

  double eval(const Env& env) const;
  std::string str() const;  // pretty-print; reparses to an equivalent tree
  std::set<std::string> variables() const;
  bool empty() const { return !root_; }

  // true if every referenced coordinate exists in complex dimension n
  bool valid_for_dimension(int n) const;

  friend Expr parse(const std::string& src);

 private:
  std::shared_ptr<const ExprNode> root_;
  std::string src_;
};

Expr parse(const std::string& src);

}  // namespace lambda1
