#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "levichk/expr.hpp"

namespace levichk {

class SymbolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Key of one symbol term c(t,x) * xi^alpha * <xi>^(-weight).
struct TermKey {
  int weight = 0;
  std::vector<int> alpha;

  int degree() const;
  int nominal_order() const { return degree() - weight; }
  auto operator<=>(const TermKey&) const = default;
};

/// Finite sum of terms c(t,x) * xi^alpha * <xi>^(-p), <xi> = (1+|xi|^2)^(1/2).
///
/// Terms are kept merged by (p, alpha) and literal-zero coefficients are
/// dropped after every operation. Weights are signed: products with the
/// companion superdiagonal and the canonical rewrite of xi_1^2 can produce
/// positive powers of <xi>.
class SymbolPoly {
 public:
  explicit SymbolPoly(int dim = 1);

  static SymbolPoly constant(int dim, Expr c);
  static SymbolPoly monomial(std::vector<int> alpha, int weight, Expr c);
  /// c * xi_axis, axis is 0-based.
  static SymbolPoly xi(int dim, int axis, Expr c = Expr::constant(1.0));
  /// <xi>^power.
  static SymbolPoly bracket(int dim, int power);
  /// sum_j c_j * xi_j.
  static SymbolPoly linear_form(std::span<const Expr> coeffs);

  int dim() const { return dim_; }
  const std::map<TermKey, Expr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// max |alpha| - p over stored terms; empty for the zero symbol.
  std::optional<int> nominal_order() const;
  bool depends_on_time() const;
  bool depends_on_space() const;

  SymbolPoly operator-() const;
  friend SymbolPoly operator+(const SymbolPoly& a, const SymbolPoly& b);
  friend SymbolPoly operator-(const SymbolPoly& a, const SymbolPoly& b);
  friend SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b);

  SymbolPoly scaled(const Expr& c) const;
  /// Adds q to every weight; throws if a resulting weight is negative.
  SymbolPoly shift_weight(int q) const;
  /// Multiplies by <xi>^power with no sign restriction on the result.
  SymbolPoly times_bracket(int power) const;

  /// D_t = -i d/dt applied to every coefficient.
  SymbolPoly d_t() const;

  /// Rewrites xi_1^2 = <xi>^2 - 1 - xi_2^2 - ... - xi_n^2 until every term
  /// has alpha_1 <= 1. The result is unique for a given function, so
  /// nominal orders of canonical forms are true orders (given non-vanishing
  /// coefficients).
  SymbolPoly canonical() const;

  Complex evaluate(const Bindings& b, std::span<const double> xi) const;
  Complex evaluate(CachedEvaluator& coeffs, std::span<const double> xi) const;

  /// Debug form: (<coeff>)*xi1^a1*...*xin^an*<xi>^(-p), terms in (p, alpha) order.
  std::string to_string() const;

  void add_term(const TermKey& key, const Expr& c);

 private:
  int dim_;
  std::map<TermKey, Expr> terms_;
};

SymbolPoly add(const SymbolPoly& a, const SymbolPoly& b);
SymbolPoly mul(const SymbolPoly& a, const SymbolPoly& b);
SymbolPoly scale(const SymbolPoly& a, const Expr& c);
SymbolPoly shift_weight(const SymbolPoly& a, int q);
SymbolPoly d_t(const SymbolPoly& a);
SymbolPoly canonicalize(const SymbolPoly& a);

/// <xi> evaluated at a frequency vector.
double japanese_bracket(std::span<const double> xi);

/// Square matrix of symbols, 0-based indexing.
class SymbolMatrix {
 public:
  SymbolMatrix() = default;
  SymbolMatrix(int size, int dim);

  int size() const { return size_; }
  int dim() const { return dim_; }
  SymbolPoly& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * size_ + j)]; }
  const SymbolPoly& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * size_ + j)]; }

  friend SymbolMatrix operator*(const SymbolMatrix& a, const SymbolMatrix& b);
  SymbolMatrix d_t() const;
  SymbolMatrix canonical() const;

  /// Row-major complex values at one point.
  std::vector<Complex> evaluate(const Bindings& b, std::span<const double> xi) const;
  std::string to_string() const;

 private:
  int size_ = 0;
  int dim_ = 1;
  std::vector<SymbolPoly> entries_;
};

}  // namespace levichk
