#include "levichk/reduction.hpp"

#include <numeric>
#include <set>

namespace levichk {

namespace {

void check_symbols(const Expr& e, const ProblemSpec& spec, const std::string& where) {
  if (e.max_space_index() > spec.dim)
    throw SpecError(where + ": variable x" + std::to_string(e.max_space_index()) + " exceeds dimension " +
                    std::to_string(spec.dim));
  std::set<std::string> names;
  e.collect_params(names);
  for (const auto& n : names)
    if (!spec.parameters.contains(n)) throw SpecError(where + ": unknown parameter '" + n + "'");
}

bool has_space_zero(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Space: return e.space_index() < 1;
    case NodeKind::Neg:
    case NodeKind::Call: return has_space_zero(e.lhs());
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow: return has_space_zero(e.lhs()) || has_space_zero(e.rhs());
    default: return false;
  }
}

}  // namespace

void ProblemSpec::validate() const {
  if (order < 2) throw SpecError("order must be >= 2");
  if (dim < 1) throw SpecError("dim must be >= 1");
  if (!(horizon > t_start)) throw SpecError("horizon must exceed the start time");
  if (static_cast<int>(roots.size()) != order)
    throw SpecError("expected " + std::to_string(order) + " roots, got " + std::to_string(roots.size()));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::string where = "roots[" + std::to_string(i) + "]";
    if (static_cast<int>(roots[i].size()) != dim)
      throw SpecError(where + ": expected " + std::to_string(dim) + " coefficients");
    for (const auto& c : roots[i]) {
      if (c.depends_on_space() || has_space_zero(c))
        throw SpecError(where + ": root coefficients must not depend on x (the principal part is independent of x)");
      check_symbols(c, *this, where);
    }
  }
  std::set<std::pair<int, std::vector<int>>> seen;
  for (std::size_t k = 0; k < lower_order.size(); ++k) {
    const auto& term = lower_order[k];
    std::string where = "lower_order[" + std::to_string(k) + "]";
    if (static_cast<int>(term.dx.size()) != dim)
      throw SpecError(where + ": dx has length " + std::to_string(term.dx.size()) + ", expected " +
                      std::to_string(dim));
    if (term.dt < 0) throw SpecError(where + ": dt must be >= 0");
    int total = term.dt;
    for (int d : term.dx) {
      if (d < 0) throw SpecError(where + ": dx entries must be >= 0");
      total += d;
    }
    if (total > order - 1)
      throw SpecError(where + ": total order " + std::to_string(total) + " exceeds m-1 = " + std::to_string(order - 1));
    if (!seen.emplace(term.dt, term.dx).second) throw SpecError(where + ": duplicate (dt, dx) key");
    check_symbols(term.coeff, *this, where);
    if (has_space_zero(term.coeff)) throw SpecError(where + ": x0 is not a variable");
  }
  if (static_cast<int>(data.size()) != order)
    throw SpecError("expected " + std::to_string(order) + " data functions, got " + std::to_string(data.size()));
  for (std::size_t k = 0; k < data.size(); ++k) {
    std::string where = "data[" + std::to_string(k) + "]";
    if (data[k].depends_on_time()) throw SpecError(where + ": initial data must not depend on t");
    check_symbols(data[k], *this, where);
  }
  check_symbols(forcing, *this, "forcing");
  if (solver.modes < 4 || (solver.modes & (solver.modes - 1)) != 0)
    throw SpecError("solver.modes must be a power of two >= 4");
  if (!(solver.cfl > 0)) throw SpecError("solver.cfl must be positive");
  if (solver.cadence < 1) throw SpecError("solver.cadence must be >= 1");
  for (int n : sweep.n_list)
    if (n < 4 || (n & (n - 1)) != 0) throw SpecError("sweep.n_list entries must be powers of two >= 4");
  if (!(sweep.mode_fraction > 0 && sweep.mode_fraction < 0.5))
    throw SpecError("sweep.mode_fraction must lie in (0, 0.5)");
}

std::vector<SymbolPoly> root_symbols(const ProblemSpec& spec) {
  std::vector<SymbolPoly> out;
  out.reserve(spec.roots.size());
  for (const auto& r : spec.roots) out.push_back(SymbolPoly::linear_form(r));
  return out;
}

std::vector<SymbolPoly> elementary_symmetric(const std::vector<SymbolPoly>& roots) {
  if (roots.empty()) throw SymbolError("no roots");
  int dim = roots.front().dim();
  // e[r] after processing k roots; update in place from the top.
  std::vector<SymbolPoly> e(roots.size() + 1, SymbolPoly(dim));
  e[0] = SymbolPoly::constant(dim, Expr::constant(1.0));
  for (std::size_t k = 0; k < roots.size(); ++k)
    for (std::size_t r = k + 1; r >= 1; --r) e[r] = e[r] + roots[k] * e[r - 1];
  return e;
}

std::vector<SymbolPoly> principal_from_roots(const std::vector<SymbolPoly>& roots) {
  auto e = elementary_symmetric(roots);
  std::vector<SymbolPoly> out;
  for (std::size_t r = 1; r < e.size(); ++r) out.push_back(r % 2 == 1 ? e[r] : -e[r]);
  return out;
}

std::vector<SymbolPoly> lower_order_row(const ProblemSpec& spec) {
  int m = spec.order;
  std::vector<SymbolPoly> row(static_cast<std::size_t>(m), SymbolPoly(spec.dim));
  for (const auto& term : spec.lower_order) {
    // a_{k,beta} D_x^beta D_t^k is part of A_{m-k}, which feeds b_{k+1}.
    auto j = static_cast<std::size_t>(term.dt);
    row[j] = row[j] + SymbolPoly::monomial(term.dx, 0, term.coeff);
  }
  for (int j = 1; j <= m; ++j) {
    auto& b = row[static_cast<std::size_t>(j - 1)];
    b = b.times_bracket(j - m).canonical();
  }
  return row;
}

CompanionSystem build_companion(const ProblemSpec& spec) {
  spec.validate();
  int m = spec.order;
  int n = spec.dim;
  auto principal = principal_from_roots(root_symbols(spec));
  CompanionSystem sys;
  sys.A = SymbolMatrix(m, n);
  sys.B = SymbolMatrix(m, n);
  for (int i = 0; i + 1 < m; ++i) sys.A(i, i + 1) = SymbolPoly::bracket(n, 1);
  for (int j = 1; j <= m; ++j) {
    // b_(j) = A_(m-j+1) <xi>^(j-m)
    const auto& coeff = principal[static_cast<std::size_t>(m - j)];
    sys.A(m - 1, j - 1) = coeff.times_bracket(j - m).canonical();
  }
  auto lower = lower_order_row(spec);
  for (int j = 0; j < m; ++j) sys.B(m - 1, j) = lower[static_cast<std::size_t>(j)];
  for (int k = 1; k <= m; ++k) sys.initial.push_back({spec.data[static_cast<std::size_t>(k - 1)], m - k});
  sys.forcing = spec.forcing;
  return sys;
}

}  // namespace levichk
