#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "levichk/order_check.hpp"
#include "levichk/problem.hpp"
#include "levichk/schur.hpp"

namespace levichk {

struct OracleReport {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool passed = false;
  bool skipped = false;
  std::uint64_t seed = 0;
  std::string note;
};

/// Hand-written T and T^-1 for m = 2, 3, 4.
std::pair<SymbolMatrix, SymbolMatrix> closed_form_T(int m, const std::vector<SymbolPoly>& roots);

/// sum over alpha in N_0^k, |alpha| = r of prod lambda_i^alpha_i, times <xi>^-r.
SymbolPoly enum_homogeneous(int r, int k, const std::vector<SymbolPoly>& roots);

/// Every coefficient of canonical(a) - canonical(b) vanishes on the grid.
bool same_symbol(const SymbolPoly& a, const SymbolPoly& b, const SampleGrid& grid);

OracleReport check_closed_form(const ProblemSpec& spec, int samples, std::uint64_t seed);
OracleReport check_omega_enumeration(const ProblemSpec& spec, int samples, std::uint64_t seed);
OracleReport check_schur_identity(const ProblemSpec& spec, int samples, std::uint64_t seed);
OracleReport check_E_product(const ProblemSpec& spec, int samples, std::uint64_t seed);
/// Central differences of T at t +- h against compute_E.
OracleReport fd_check_E(const ProblemSpec& spec, double h, int samples, std::uint64_t seed);
OracleReport check_companion_eigenvalues(const ProblemSpec& spec, int samples, std::uint64_t seed);

std::vector<OracleReport> verify_all(const ProblemSpec& spec, std::uint64_t seed = 20240601);

}  // namespace levichk
