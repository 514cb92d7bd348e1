#include "lambda1/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace lambda1 {

enum class Op { num, var, neg, add, sub, mul, div, pow, call };
enum class Var { x1, y1, x2, y2, t, r };
enum class Fn { min, max, abs, exp, log, sqrt, sin, cos };

struct ExprNode {
  Op op;
  double num = 0;       // Op::num and the folded exponent of Op::pow
  Var var = Var::t;     // Op::var
  Fn fn = Fn::min;      // Op::call
  std::size_t pos = 0;  // source offset, for diagnostics
  std::vector<std::shared_ptr<const ExprNode>> kids;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::min: return "min";
    case Fn::max: return "max";
    case Fn::abs: return "abs";
    case Fn::exp: return "exp";
    case Fn::log: return "log";
    case Fn::sqrt: return "sqrt";
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
  }
  return "?";
}

const char* var_name(Var v) {
  switch (v) {
    case Var::x1: return "x1";
    case Var::y1: return "y1";
    case Var::x2: return "x2";
    case Var::y2: return "y2";
    case Var::t: return "t";
    case Var::r: return "r";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(const std::string& src) : s_(src) {}

  NodePtr run() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(pos_, "empty expression");
    NodePtr e = expr();
    skip_ws();
    if (pos_ < s_.size())
      throw ParseError(pos_, std::string("unexpected character '") + s_[pos_] + "'");
    return e;
  }

 private:
  static NodePtr binary(Op op, std::size_t pos, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_shared<ExprNode>();
    node->op = op;
    node->pos = pos;
    node->kids = {std::move(lhs), std::move(rhs)};
    return node;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      skip_ws();
      if (peek('+')) {
        std::size_t p = pos_++;
        lhs = binary(Op::add, p, lhs, term());
      } else if (peek('-')) {
        std::size_t p = pos_++;
        lhs = binary(Op::sub, p, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      skip_ws();
      if (peek('*')) {
        std::size_t p = pos_++;
        lhs = binary(Op::mul, p, lhs, factor());
      } else if (peek('/')) {
        std::size_t p = pos_++;
        lhs = binary(Op::div, p, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    skip_ws();
    if (peek('^')) {
      std::size_t caret = pos_++;
      NodePtr exp = factor();  // right-associative
      double folded = fold_constant(exp, caret);
      auto node = std::make_shared<ExprNode>();
      node->op = Op::pow;
      node->pos = caret;
      node->num = folded;
      node->kids = {base};
      return node;
    }
    return base;
  }

  NodePtr unary() {
    skip_ws();
    if (peek('-')) {
      std::size_t p = pos_++;
      auto node = std::make_shared<ExprNode>();
      node->op = Op::neg;
      node->pos = p;
      node->kids = {atom_or_unary()};
      return node;
    }
    return atom();
  }

  // after '-' another '-' is allowed (e.g. "--1" is rejected by most calculators;
  // we keep it: unary chains parse naturally)
  NodePtr atom_or_unary() { return unary(); }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    std::size_t start = pos_;
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError(pos_, "malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto node = std::make_shared<ExprNode>();
    node->op = Op::num;
    node->num = v;
    node->pos = start;
    return node;
  }

  NodePtr ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    static const std::pair<const char*, Var> vars[] = {
        {"x1", Var::x1}, {"y1", Var::y1}, {"x2", Var::x2},
        {"y2", Var::y2}, {"t", Var::t},   {"r", Var::r}};
    for (auto& [nm, v] : vars)
      if (name == nm) {
        auto node = std::make_shared<ExprNode>();
        node->op = Op::var;
        node->var = v;
        node->pos = start;
        return node;
      }
    static const std::pair<const char*, Fn> fns[] = {
        {"min", Fn::min}, {"max", Fn::max}, {"abs", Fn::abs}, {"exp", Fn::exp},
        {"log", Fn::log}, {"sqrt", Fn::sqrt}, {"sin", Fn::sin}, {"cos", Fn::cos}};
    for (auto& [nm, f] : fns)
      if (name == nm) {
        skip_ws();
        expect('(');
        auto node = std::make_shared<ExprNode>();
        node->op = Op::call;
        node->fn = f;
        node->pos = start;
        node->kids.push_back(expr());
        skip_ws();
        while (peek(',')) {
          ++pos_;
          node->kids.push_back(expr());
          skip_ws();
        }
        expect(')');
        const std::size_t arity = node->kids.size();
        const bool binary_fn = (f == Fn::min || f == Fn::max);
        if (binary_fn ? arity != 2 : arity != 1)
          throw ParseError(start, std::string(nm) + ": wrong number of arguments");
        return node;
      }
    throw ParseError(start, "unknown identifier '" + name + "'");
  }

  double fold_constant(const NodePtr& e, std::size_t caret) {
    if (!is_constant(e))
      throw ParseError(caret, "exponent of '^' must be a constant");
    return e->op == Op::num ? e->num : eval_const(e);
  }

  static bool is_constant(const NodePtr& e) {
    if (e->op == Op::var) return false;
    for (auto& k : e->kids)
      if (!is_constant(k)) return false;
    return true;
  }

  static double eval_const(const NodePtr& e);

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void expect(char c) {
    skip_ws();
    if (!peek(c))
      throw ParseError(pos_, pos_ >= s_.size()
                                 ? std::string("expected '") + c + "' before end of input"
                                 : std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval_node(const ExprNode& e, const Env& env) {
  switch (e.op) {
    case Op::num:
      return e.num;
    case Op::var:
      switch (e.var) {
        case Var::x1: return env.x[0];
        case Var::y1: return env.x[1];
        case Var::x2: return env.x[2];
        case Var::y2: return env.x[3];
        case Var::t: return env.norm2();
        case Var::r: return std::sqrt(env.norm2());
      }
      return 0;
    case Op::neg:
      return -eval_node(*e.kids[0], env);
    case Op::add:
      return eval_node(*e.kids[0], env) + eval_node(*e.kids[1], env);
    case Op::sub:
      return eval_node(*e.kids[0], env) - eval_node(*e.kids[1], env);
    case Op::mul:
      return eval_node(*e.kids[0], env) * eval_node(*e.kids[1], env);
    case Op::div: {
      double d = eval_node(*e.kids[1], env);
      if (d == 0.0)
        throw EvalError("division by zero at position " + std::to_string(e.pos));
      return eval_node(*e.kids[0], env) / d;
    }
    case Op::pow: {
      double b = eval_node(*e.kids[0], env);
      double p = e.num;
      if (b < 0 && p != std::floor(p))
        throw EvalError("non-integer power of negative base at position " +
                        std::to_string(e.pos));
      if (b == 0 && p < 0)
        throw EvalError("zero raised to negative power at position " +
                        std::to_string(e.pos));
      return std::pow(b, p);
    }
    case Op::call: {
      double a = eval_node(*e.kids[0], env);
      switch (e.fn) {
        case Fn::min: return std::min(a, eval_node(*e.kids[1], env));
        case Fn::max: return std::max(a, eval_node(*e.kids[1], env));
        case Fn::abs: return std::abs(a);
        case Fn::exp: return std::exp(a);
        case Fn::log:
          if (a <= 0)
            throw EvalError("log of nonpositive value at position " +
                            std::to_string(e.pos));
          return std::log(a);
        case Fn::sqrt:
          if (a < 0)
            throw EvalError("sqrt of negative value at position " +
                            std::to_string(e.pos));
          return std::sqrt(a);
        case Fn::sin: return std::sin(a);
        case Fn::cos: return std::cos(a);
      }
      return 0;
    }
  }
  throw std::logic_error("eval: bad node");
}

double Parser::eval_const(const NodePtr& e) { return eval_node(*e, Env{}); }

void print_node(const ExprNode& e, std::ostringstream& os) {
  switch (e.op) {
    case Op::num: {
      os.precision(17);
      os << e.num;
      break;
    }
    case Op::var:
      os << var_name(e.var);
      break;
    case Op::neg:
      os << "(-";
      print_node(*e.kids[0], os);
      os << ")";
      break;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      const char* sym = e.op == Op::add ? " + " : e.op == Op::sub ? " - "
                        : e.op == Op::mul ? " * " : " / ";
      os << "(";
      print_node(*e.kids[0], os);
      os << sym;
      print_node(*e.kids[1], os);
      os << ")";
      break;
    }
    case Op::pow: {
      os << "(";
      print_node(*e.kids[0], os);
      os.precision(17);
      os << " ^ " << e.num << ")";
      break;
    }
    case Op::call: {
      os << fn_name(e.fn) << "(";
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) os << ", ";
        print_node(*e.kids[i], os);
      }
      os << ")";
      break;
    }
  }
}

void collect_vars(const ExprNode& e, std::set<std::string>& out) {
  if (e.op == Op::var) out.insert(var_name(e.var));
  for (auto& k : e.kids) collect_vars(*k, out);
}

}  // namespace

Expr parse(const std::string& src) {
  Expr e;
  e.root_ = Parser(src).run();
  e.src_ = src;
  return e;
}

double Expr::eval(const Env& env) const {
  if (!root_) throw EvalError("eval of empty expression");
  return eval_node(*root_, env);
}

std::string Expr::str() const {
  if (!root_) return "";
  std::ostringstream os;
  print_node(*root_, os);
  return os.str();
}

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  if (root_) collect_vars(*root_, out);
  return out;
}

bool Expr::valid_for_dimension(int n) const {
  auto vars = variables();
  if (n < 2 && (vars.count("x2") || vars.count("y2"))) return false;
  return true;
}

}  // namespace lambda1
