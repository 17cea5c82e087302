#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace levichk {

using Complex = std::complex<double>;

/// Named real parameters of a problem (ordered for deterministic output).
using ParamTable = std::map<std::string, double>;

enum class Func { Sin, Cos, Exp, Sqrt, Abs, Log };

enum class NodeKind {
  Const,  // complex literal
  Imag,   // the imaginary unit `i`
  Time,   // `t`
  Space,  // `x<k>`, k >= 1
  Param,  // named parameter
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Call,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DiffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExprNode;

/// Immutable expression tree over t, x1..xn, named parameters and complex
/// constants. Copies share structure.
class Expr {
 public:
  /// The zero constant.
  Expr();

  static Expr constant(Complex value);
  static Expr imag_unit();
  static Expr time();
  static Expr space(int index);
  static Expr param(std::string name);
  static Expr call(Func f, Expr arg);

  /// Node constructors that skip constant folding (used by the parser so
  /// that printed and reparsed trees stay structurally identical).
  static Expr raw_unary(NodeKind kind, Expr operand);
  static Expr raw_call(Func f, Expr arg);
  static Expr raw_binary(NodeKind kind, Expr lhs, Expr rhs);

  NodeKind kind() const;
  Complex value() const;          // Const only
  int space_index() const;        // Space only
  const std::string& name() const;  // Param only
  Func func() const;              // Call only
  const Expr& lhs() const;        // unary operand, or left operand
  const Expr& rhs() const;

  bool depends_on_time() const;
  bool depends_on_space() const;
  /// No t, x or parameter reachable.
  bool is_numeric() const;
  bool is_zero_literal() const;
  bool is_one_literal() const;
  int max_space_index() const;
  void collect_params(std::set<std::string>& out) const;
  std::size_t node_count() const;

  const ExprNode* id() const { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, const Expr& exponent);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  explicit Expr(std::nullptr_t) {}
  std::shared_ptr<const ExprNode> node_;

  friend struct ExprNode;
};

const char* func_name(Func f);

struct Bindings {
  double t = 0.0;
  std::vector<double> x;
  const ParamTable* params = nullptr;
};

Expr parse(std::string_view source);

/// Round-trippable text form: parse(print(e)) == e for parser-shaped trees.
std::string print(const Expr& e);

Complex eval(const Expr& e, const Bindings& b);

/// Evaluation with a per-point cache keyed on shared subtrees. Symbol
/// coefficients built by matrix algebra are DAGs with heavy sharing.
class CachedEvaluator {
 public:
  explicit CachedEvaluator(const Bindings& b) : bindings_(b) {}
  Complex operator()(const Expr& e);

 private:
  const Bindings& bindings_;
  std::unordered_map<const ExprNode*, Complex> cache_;
};

/// Real partial derivative in t.
Expr d_dt(const Expr& e);

/// Replace parameters by their values.
Expr substitute_params(const Expr& e, const ParamTable& params);

}  // namespace levichk
