#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <vector>

#include "levichk/problem.hpp"
#include "levichk/symbol.hpp"

namespace levichk {

using Field = std::vector<Complex>;

/// Periodic grid on [0, 2pi)^n, n in {1, 2}, with N nodes per axis.
/// Transform convention: vhat_k = (1/M) sum_j v_j exp(-i k.x_j), M = N^n,
/// so the discrete L2 norm sqrt(mean |v_j|^2) equals sqrt(sum |vhat_k|^2).
class TorusGrid {
 public:
  TorusGrid(int dim, int modes);
  ~TorusGrid();
  TorusGrid(const TorusGrid&) = delete;
  TorusGrid& operator=(const TorusGrid&) = delete;

  int dim() const { return dim_; }
  int modes() const { return modes_; }
  std::size_t size() const { return size_; }

  /// Coordinates of node `flat` (row-major, last axis fastest).
  std::vector<double> node(std::size_t flat) const;
  /// Integer frequency of slot `flat`, entries in [-N/2, N/2 - 1].
  std::vector<double> frequency(std::size_t flat) const;
  double bracket(std::size_t flat) const { return brackets_[flat]; }
  const std::vector<double>& brackets() const { return brackets_; }

  Field forward(const Field& physical) const;
  Field backward(const Field& spectral) const;

  /// Zero modes with |k_i| > N/3 on any axis.
  void dealias(Field& spectral) const;

  /// Sample an x-only expression on the nodes.
  Field sample(const Expr& e, double t, const ParamTable& params) const;

 private:
  int dim_;
  int modes_;
  std::size_t size_;
  std::vector<double> brackets_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// Symbol prepared for repeated application on one grid: each term keeps its
/// frequency multiplier xi^alpha <xi>^(-p) and its coefficient.
class CompiledSymbol {
 public:
  CompiledSymbol() = default;
  CompiledSymbol(const SymbolPoly& sym, const TorusGrid& grid);

  bool empty() const { return parts_.empty(); }
  bool depends_on_space() const;

  /// out += op(t) in, both in spectral representation.
  void apply_add(const Field& in, Field& out, double t, const ParamTable& params, const TorusGrid& grid,
                 bool dealias) const;

  /// Pointwise value at frequency slot `flat`, x-independent symbols only.
  Complex value_at(std::size_t flat, double t, const ParamTable& params) const;

  struct Part {
    Expr coeff;
    bool x_dependent = false;
    std::vector<double> multiplier;
  };
  const std::vector<Part>& parts() const { return parts_; }

 private:
  std::vector<Part> parts_;
};

/// Operator action of a symbol on a physical field at time t.
Field apply_symbol(const SymbolPoly& sym, const Field& field, const TorusGrid& grid, double t,
                   const ParamTable& params);

/// ||v||_{H^s}^2 = sum_k <k>^(2s) |vhat_k|^2, v given in spectral form.
double sobolev_norm(const Field& spectral, double s, const TorusGrid& grid);

/// (sum_k ||U_k||^2_{H^(s+k-1)})^(1/2), components in spectral form.
double aniso_norm(const std::vector<Field>& components, double s, const TorusGrid& grid);

struct SolveControls {
  /// Fixed step; 0 selects cfl / (Lambda <xi_max>).
  double fixed_dt = 0.0;
};

struct RunResult {
  std::vector<double> times;
  /// component_norms[i][k]: ||U_k||_{H^s} at times[i].
  std::vector<std::vector<double>> component_norms;
  /// Anisotropic norm of V = T^-1 U at times[i].
  std::vector<double> aniso;
  double dt = 0.0;
  long steps = 0;
  bool blowup = false;
  double blowup_time = 0.0;
  /// Final U components on the nodes.
  std::vector<Field> final_state;
};

/// Step size from the policy cfl / (Lambda <xi_max>), Lambda = 1 + max_t,axis sum_i |c_ij(t)|.
double policy_dt(const ProblemSpec& spec, int modes);

/// Integrates d/dt U = i (A + B) U + i F on [t_start, horizon] with RK4.
RunResult solve(const ProblemSpec& spec, const SolveControls& controls = {});

struct SweepResult {
  std::vector<int> n;
  std::vector<double> rho;
  double fitted_q = 0.0;
};

/// Data exp(i K x1) in g_1, K = round(N * mode_fraction), other data and the
/// forcing set to zero; rho_N = max_t aniso(t) / aniso(t_start).
SweepResult frequency_sweep(const ProblemSpec& spec, double s, const std::vector<int>& n_list,
                            double mode_fraction);

void write_run_csv(const RunResult& r, const std::filesystem::path& path);
void write_sweep_csv(const SweepResult& r, const std::filesystem::path& path);

}  // namespace levichk
