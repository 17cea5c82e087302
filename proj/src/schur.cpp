#include "levichk/schur.hpp"

#include <Eigen/Dense>
#include <numbers>
#include <random>
#include <sstream>

namespace levichk {

std::vector<SymbolSample> random_samples(int dim, double t0, double t1, double xi_max, int count,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(t0, t1);
  std::uniform_real_distribution<double> ux(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> uxi(-xi_max, xi_max);
  std::vector<SymbolSample> out(static_cast<std::size_t>(count));
  for (auto& s : out) {
    s.t = ut(rng);
    for (int d = 0; d < dim; ++d) s.x.push_back(ux(rng));
    for (int d = 0; d < dim; ++d) s.xi.push_back(uxi(rng));
  }
  return out;
}

std::vector<std::vector<SymbolPoly>> omega_table(const std::vector<SymbolPoly>& roots) {
  if (roots.empty()) throw SymbolError("no roots");
  const int m = static_cast<int>(roots.size());
  const int dim = roots.front().dim();
  std::vector<SymbolPoly> scaled;
  for (const auto& r : roots) scaled.push_back(r.times_bracket(-1));

  // h[r][k] = h_r(mu_1..mu_k) with mu = lambda <xi>^-1; h[r][k] = h[r][k-1] + mu_k h[r-1][k].
  std::vector<std::vector<SymbolPoly>> h(static_cast<std::size_t>(m),
                                         std::vector<SymbolPoly>(static_cast<std::size_t>(m + 1), SymbolPoly(dim)));
  for (int k = 0; k <= m; ++k) h[0][static_cast<std::size_t>(k)] = SymbolPoly::constant(dim, Expr::constant(1.0));
  for (int r = 1; r < m; ++r)
    for (int k = 1; k <= m; ++k) {
      auto rr = static_cast<std::size_t>(r);
      auto kk = static_cast<std::size_t>(k);
      h[rr][kk] = h[rr][kk - 1] + scaled[kk - 1] * h[rr - 1][kk];
    }

  std::vector<std::vector<SymbolPoly>> table(static_cast<std::size_t>(m),
                                             std::vector<SymbolPoly>(static_cast<std::size_t>(m), SymbolPoly(dim)));
  for (int j = 1; j <= m; ++j)
    for (int k = 1; k <= j; ++k)
      table[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] =
          h[static_cast<std::size_t>(j - k)][static_cast<std::size_t>(k)].canonical();
  return table;
}

SymbolPoly omega(int j, int k, const std::vector<SymbolPoly>& roots) {
  const int m = static_cast<int>(roots.size());
  if (k < 1 || j < k || j > m)
    throw SymbolError("omega index out of range: (" + std::to_string(j) + "," + std::to_string(k) + ")");
  return omega_table(roots)[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
}

namespace {

SymbolMatrix T_from_table(const std::vector<std::vector<SymbolPoly>>& w, int dim) {
  const int m = static_cast<int>(w.size());
  SymbolMatrix T(m, dim);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) T(i, j) = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return T;
}

SymbolMatrix Tinv_from_table(const std::vector<std::vector<SymbolPoly>>& w, int dim) {
  const int m = static_cast<int>(w.size());
  SymbolMatrix inv(m, dim);
  auto W = [&](int i, int j) -> const SymbolPoly& {
    return w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  for (int i = 0; i < m; ++i) {
    inv(i, i) = SymbolPoly::constant(dim, Expr::constant(1.0));
    for (int j = i - 1; j >= 0; --j) {
      SymbolPoly acc = -W(i, j);
      for (int k = j + 1; k < i; ++k) acc = acc - W(i, k) * inv(k, j);
      inv(i, j) = acc.canonical();
    }
  }
  return inv;
}

int roots_dim(const std::vector<SymbolPoly>& roots) {
  if (roots.empty()) throw SymbolError("no roots");
  return roots.front().dim();
}

}  // namespace

SymbolMatrix build_T(const std::vector<SymbolPoly>& roots) {
  return T_from_table(omega_table(roots), roots_dim(roots));
}

SymbolMatrix build_Tinv(const std::vector<SymbolPoly>& roots) {
  return Tinv_from_table(omega_table(roots), roots_dim(roots));
}

SymbolMatrix build_J(const std::vector<SymbolPoly>& roots) {
  const int m = static_cast<int>(roots.size());
  const int dim = roots_dim(roots);
  SymbolMatrix J(m, dim);
  for (int i = 0; i < m; ++i) {
    J(i, i) = roots[static_cast<std::size_t>(i)];
    if (i + 1 < m) J(i, i + 1) = SymbolPoly::bracket(dim, 1);
  }
  return J;
}

SchurData build_schur(const std::vector<SymbolPoly>& roots) {
  SchurData s;
  s.omega = omega_table(roots);
  int dim = roots_dim(roots);
  s.T = T_from_table(s.omega, dim);
  s.Tinv = Tinv_from_table(s.omega, dim);
  s.J = build_J(roots);
  return s;
}

namespace {

Eigen::MatrixXcd to_eigen(const std::vector<Complex>& v, int m) {
  Eigen::MatrixXcd out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = v[static_cast<std::size_t>(i * m + j)];
  return out;
}

std::string describe(const SymbolSample& s) {
  std::ostringstream os;
  os << "t=" << s.t << " xi=(";
  for (std::size_t k = 0; k < s.xi.size(); ++k) os << (k ? "," : "") << s.xi[k];
  os << ")";
  return os.str();
}

}  // namespace

SchurResidual verify_schur(const SymbolMatrix& A, const SymbolMatrix& T, const SymbolMatrix& Tinv,
                           const SymbolMatrix& J, const std::vector<SymbolSample>& samples,
                           const ParamTable& params) {
  const int m = A.size();
  if (T.size() != m || Tinv.size() != m || J.size() != m) throw SymbolError("matrix sizes differ");
  SchurResidual res;
  for (const auto& s : samples) {
    Bindings b{s.t, s.x, &params};
    Eigen::MatrixXcd a, t, ti, j;
    try {
      a = to_eigen(A.evaluate(b, s.xi), m);
      t = to_eigen(T.evaluate(b, s.xi), m);
      ti = to_eigen(Tinv.evaluate(b, s.xi), m);
      j = to_eigen(J.evaluate(b, s.xi), m);
    } catch (const std::exception& err) {
      throw EvalError(std::string("schur check failed at ") + describe(s) + ": " + err.what());
    }
    Eigen::MatrixXcd r = ti * a * t - j;
    double norm = r.cwiseAbs().rowwise().sum().maxCoeff();
    double scaled = norm / (1.0 + japanese_bracket(s.xi));
    if (scaled >= res.max_residual) {
      res.max_residual = scaled;
      res.worst = s;
    }
  }
  return res;
}

}  // namespace levichk
