#pragma once

#include <cstdint>
#include <vector>

#include "levichk/symbol.hpp"

namespace levichk {

/// One evaluation point (t, x, xi) for numeric identity checks.
struct SymbolSample {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> xi;
};

/// Uniform random samples: t in [t0, t1], x in [-pi, pi]^n, xi in [-xi_max, xi_max]^n.
std::vector<SymbolSample> random_samples(int dim, double t0, double t1, double xi_max, int count,
                                         std::uint64_t seed);

/// Triangularizing data for the companion matrix: T^-1 A T = J.
struct SchurData {
  SymbolMatrix T;
  SymbolMatrix Tinv;
  SymbolMatrix J;
  /// omega[j-1][k-1] for 1 <= k <= j <= m (zero above the diagonal).
  std::vector<std::vector<SymbolPoly>> omega;
};

/// Table of h_{j-k}(lambda_1..lambda_k) <xi>^(k-j), canonicalized.
std::vector<std::vector<SymbolPoly>> omega_table(const std::vector<SymbolPoly>& roots);

/// Single entry, 1-based indices 1 <= k <= j <= m.
SymbolPoly omega(int j, int k, const std::vector<SymbolPoly>& roots);

SymbolMatrix build_T(const std::vector<SymbolPoly>& roots);
SymbolMatrix build_Tinv(const std::vector<SymbolPoly>& roots);
SymbolMatrix build_J(const std::vector<SymbolPoly>& roots);
SchurData build_schur(const std::vector<SymbolPoly>& roots);

struct SchurResidual {
  double max_residual = 0.0;
  SymbolSample worst;
};

/// max over samples of ||Tinv A T - J||_inf / (1 + <xi>).
SchurResidual verify_schur(const SymbolMatrix& A, const SymbolMatrix& T, const SymbolMatrix& Tinv,
                           const SymbolMatrix& J, const std::vector<SymbolSample>& samples,
                           const ParamTable& params);

}  // namespace levichk
