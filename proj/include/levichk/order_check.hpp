#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levichk/symbol.hpp"

namespace levichk {

enum class Verdict { Pass, Fail, Inconclusive };
enum class OrderMethod { Canonical, RaySampling };

const char* to_string(Verdict v);
const char* to_string(OrderMethod m);

/// Where a symbol was seen to violate (or could not be shown to satisfy) an
/// order bound.
struct OrderWitness {
  TermKey term;
  double t = 0.0;
  std::vector<double> x;
  Complex value{};
  /// Ray sampling only: direction and fitted log-log slope.
  std::vector<double> direction;
  double slope = 0.0;
};

struct OrderVerdict {
  int target = 0;
  Verdict verdict = Verdict::Inconclusive;
  OrderMethod method = OrderMethod::Canonical;
  std::optional<OrderWitness> witness;
  std::string note;
};

/// Sample points used to decide "identically zero" for coefficients and to
/// fit growth rates along rays.
struct SampleGrid {
  std::vector<double> times;
  std::vector<std::vector<double>> space;  // node values per axis
  ParamTable params;
  std::vector<std::vector<double>> directions;
  std::vector<double> radii;
  double zero_tol = 1e-10;
  double slope_slack = 0.1;

  /// 17 t-points on [t0, t1], x_points per axis on [-pi, pi], unit rays
  /// (16 in 2D, +-1 in 1D) and |xi| in {2^4, ..., 2^14}.
  static SampleGrid standard(int dim, double t0, double t1, ParamTable params, int t_points = 17,
                             int x_points = 9);

  int dim() const { return static_cast<int>(space.size()); }
  std::vector<std::vector<double>> space_points() const;
};

enum class ZeroTest { Zero, NonZero, Error };

struct ZeroTestResult {
  ZeroTest outcome = ZeroTest::Zero;
  double t = 0.0;
  std::vector<double> x;
  Complex value{};
  std::string error;
};

/// Samples a coefficient over the grid; reports the first point where
/// |c| > zero_tol or evaluation fails.
ZeroTestResult test_vanishes(const Expr& c, const SampleGrid& grid);

/// Decides whether `a` is a symbol of order <= target uniformly over the
/// sampled (t, x) box.
OrderVerdict check_order(const SymbolPoly& a, int target, const SampleGrid& grid);

}  // namespace levichk
