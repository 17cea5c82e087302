#pragma once

#include <vector>

#include "levichk/problem.hpp"
#include "levichk/symbol.hpp"

namespace levichk {

/// Initial value of the k-th system component: <D_x>^bracket_power g_k.
struct DataDescriptor {
  Expr g;
  int bracket_power = 0;
};

/// First-order system D_t U = A U + B U + F obtained from
/// u_k = D_t^(k-1) <D_x>^(m-k) u.
struct CompanionSystem {
  SymbolMatrix A;
  SymbolMatrix B;
  std::vector<DataDescriptor> initial;
  /// Last component of F; the others vanish.
  Expr forcing;
};

/// lambda_i as symbols.
std::vector<SymbolPoly> root_symbols(const ProblemSpec& spec);

/// Principal coefficients from Vieta: element r-1 holds A_(r), r = 1..m, so that
/// tau^m - sum_j A_(m-j) tau^j = prod_i (tau - lambda_i).
std::vector<SymbolPoly> principal_from_roots(const std::vector<SymbolPoly>& roots);

/// Elementary symmetric polynomials e_0..e_m of the roots.
std::vector<SymbolPoly> elementary_symmetric(const std::vector<SymbolPoly>& roots);

/// b_j - b_(j), j = 1..m (element j-1), canonicalized.
std::vector<SymbolPoly> lower_order_row(const ProblemSpec& spec);

CompanionSystem build_companion(const ProblemSpec& spec);

}  // namespace levichk
