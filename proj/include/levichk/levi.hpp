#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levichk/order_check.hpp"
#include "levichk/problem.hpp"
#include "levichk/reduction.hpp"
#include "levichk/schur.hpp"

namespace levichk {

/// Only row m is nonzero: d_{m,k} = sum_{j>=k} B_{m,j} T_{j,k}.
SymbolMatrix compute_D(const SymbolMatrix& B, const SymbolMatrix& T);

/// e_{i,j} = sum_{j<k<=i} (T^-1)_{i,k} D_t T_{k,j}; strictly lower triangular.
SymbolMatrix compute_E(const SymbolMatrix& Tinv, const SymbolMatrix& T);

/// T^-1 (D_t T) by full matrix product; reference for compute_E.
SymbolMatrix compute_E_by_product(const SymbolMatrix& Tinv, const SymbolMatrix& T);

struct LeviOptions {
  int t_points = 17;
  int x_points = 9;
};

struct ConditionRecord {
  std::string id;
  OrderVerdict verdict;
  std::string symbol;
};

struct LeviReport {
  std::string kind;  // "main" or "corollary"
  bool applicable = true;
  bool corollary_applicable = false;
  std::vector<ConditionRecord> conditions;
  Verdict overall = Verdict::Pass;
};

/// Everything derived from a spec that the checks need.
struct LeviData {
  CompanionSystem system;
  std::vector<SymbolPoly> roots;
  SchurData schur;
  SymbolMatrix D;
  SymbolMatrix E;
};

LeviData derive(const ProblemSpec& spec);

SampleGrid levi_grid(const ProblemSpec& spec, const LeviOptions& opts = {});

/// Condition id helpers, 1-based indices.
std::string e_condition_id(int i, int j);
std::string de_condition_id(int m, int k);

/// Are lambda_1..lambda_{m-2} independent of t on the sampled window?
bool corollary_applies(const ProblemSpec& spec, const LeviOptions& opts = {});

LeviReport check_main_theorem(const ProblemSpec& spec, const LeviOptions& opts = {});
LeviReport check_main_theorem(const ProblemSpec& spec, const LeviData& data, const LeviOptions& opts);
LeviReport check_corollary(const ProblemSpec& spec, const LeviOptions& opts = {});

struct OleinikOptions {
  double t_min = 1e-6;
  int t_points = 64;
  int x_points = 9;
  double log_min = -3.0;
  double log_max = 6.0;
  double log_step = 0.5;
};

struct OleinikSample {
  double t = 0.0;
  double x = 0.0;
  /// lhs - rhs of t d^2 <= C (A a^2 - d_t(a^2)) at this point.
  double violation = 0.0;
};

struct OleinikReport {
  bool feasible = false;
  double C = 0.0;
  double A = 0.0;
  /// Smallest worst-case violation over the (C, A) grid, when infeasible.
  std::optional<OleinikSample> worst;
  std::vector<double> t_grid;
  std::vector<double> x_grid;
  std::vector<double> constant_grid;
};

/// Grid scan for constants making t d^2 <= C (A a^2 - d_t(a^2)) hold, for
/// m = 2, n = 1 and roots a xi, -a xi. Here d is the real coefficient with
/// lower-order term -i d D_x.
OleinikReport check_oleinik(const ProblemSpec& spec, const OleinikOptions& opts = {});

}  // namespace levichk
