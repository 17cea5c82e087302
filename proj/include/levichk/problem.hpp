#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "levichk/expr.hpp"

namespace levichk {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient a_{k,beta}(t,x) of the lower-order term a_{k,beta} D_x^beta D_t^k.
struct LowerOrderTerm {
  int dt = 0;
  std::vector<int> dx;
  Expr coeff;
};

struct SolverOptions {
  int modes = 64;
  double cfl = 0.5;
  double sobolev_s = 0.0;
  /// Number of output intervals over the time window.
  int cadence = 50;
  bool dealias = false;
};

struct SweepOptions {
  std::vector<int> n_list{16, 32, 64, 128, 256};
  double mode_fraction = 0.25;
};

/// An order-m equation with x-independent principal part given through its
/// characteristic roots lambda_i(t, xi) = sum_j c_ij(t) xi_j.
struct ProblemSpec {
  int order = 2;
  int dim = 1;
  /// Start of the time window (0 unless the coefficients are singular there).
  double t_start = 0.0;
  double horizon = 1.0;
  ParamTable parameters;
  std::vector<std::vector<Expr>> roots;
  std::vector<LowerOrderTerm> lower_order;
  Expr forcing;
  std::vector<Expr> data;
  SolverOptions solver;
  SweepOptions sweep;

  /// Throws SpecError describing the first violated rule.
  void validate() const;
};

}  // namespace levichk
