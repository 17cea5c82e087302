#include "levichk/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "levichk/levi.hpp"
#include "levichk/reduction.hpp"

namespace levichk {

namespace {

SymbolPoly one(int dim) { return SymbolPoly::constant(dim, Expr::constant(1.0)); }

SymbolPoly w(const SymbolPoly& s, int power) { return s.times_bracket(-power); }

SymbolPoly lam(const std::vector<SymbolPoly>& roots, int i) { return roots[static_cast<std::size_t>(i - 1)]; }

}  // namespace

std::pair<SymbolMatrix, SymbolMatrix> closed_form_T(int m, const std::vector<SymbolPoly>& roots) {
  if (m < 2 || m > 4) throw SymbolError("closed forms exist for m = 2, 3, 4 only");
  if (static_cast<int>(roots.size()) != m) throw SymbolError("root count differs from m");
  const int dim = roots.front().dim();
  SymbolMatrix T(m, dim), Ti(m, dim);
  for (int i = 0; i < m; ++i) T(i, i) = Ti(i, i) = one(dim);
  auto l1 = lam(roots, 1);
  T(1, 0) = w(l1, 1);
  Ti(1, 0) = -w(l1, 1);
  if (m >= 3) {
    auto l2 = lam(roots, 2);
    T(2, 0) = w(l1 * l1, 2);
    T(2, 1) = w(l1 + l2, 1);
    Ti(2, 0) = w(l1 * l2, 2);
    Ti(2, 1) = -w(l1 + l2, 1);
  }
  if (m == 4) {
    auto l2 = lam(roots, 2);
    auto l3 = lam(roots, 3);
    T(3, 0) = w(l1 * l1 * l1, 3);
    T(3, 1) = w(l1 * l1 + l2 * l2 + l1 * l2, 2);
    T(3, 2) = w(l1 + l2 + l3, 1);
    Ti(3, 0) = -w(l1 * l2 * l3, 3);
    Ti(3, 1) = w(l1 * l2 + l1 * l3 + l2 * l3, 2);
    Ti(3, 2) = -w(l1 + l2 + l3, 1);
  }
  return {T.canonical(), Ti.canonical()};
}

SymbolPoly enum_homogeneous(int r, int k, const std::vector<SymbolPoly>& roots) {
  if (r < 0 || k < 1 || r > 8 || k > 8) throw SymbolError("enumeration cap exceeded (r <= 8, k <= 8)");
  if (static_cast<int>(roots.size()) < k) throw SymbolError("not enough roots");
  const int dim = roots.front().dim();
  SymbolPoly total(dim);
  std::vector<int> alpha(static_cast<std::size_t>(k), 0);
  // Walk all compositions of r into k non-negative parts.
  auto emit = [&] {
    SymbolPoly term = one(dim);
    for (int i = 0; i < k; ++i)
      for (int e = 0; e < alpha[static_cast<std::size_t>(i)]; ++e) term = term * roots[static_cast<std::size_t>(i)];
    total = total + term;
  };
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == k - 1) {
      alpha[static_cast<std::size_t>(pos)] = left;
      emit();
      return;
    }
    for (int v = 0; v <= left; ++v) {
      alpha[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, r);
  return total.times_bracket(-r).canonical();
}

bool same_symbol(const SymbolPoly& a, const SymbolPoly& b, const SampleGrid& grid) {
  SymbolPoly diff = (a.canonical() - b.canonical()).canonical();
  for (const auto& [key, c] : diff.terms())
    if (test_vanishes(c, grid).outcome != ZeroTest::Zero) return false;
  return true;
}

namespace {

SampleGrid spec_grid(const ProblemSpec& spec) {
  return SampleGrid::standard(spec.dim, spec.t_start, spec.horizon, spec.parameters);
}

double matrix_deviation(const SymbolMatrix& a, const SymbolMatrix& b, const std::vector<SymbolSample>& samples,
                        const ParamTable& params, bool relative) {
  double worst = 0.0;
  for (const auto& s : samples) {
    Bindings bind{s.t, s.x, &params};
    auto va = a.evaluate(bind, s.xi);
    auto vb = b.evaluate(bind, s.xi);
    for (std::size_t k = 0; k < va.size(); ++k) {
      double d = std::abs(va[k] - vb[k]);
      if (relative) d /= 1.0 + std::abs(vb[k]);
      worst = std::max(worst, d);
    }
  }
  return worst;
}

OracleReport base(std::string name, double tol, int samples, std::uint64_t seed) {
  OracleReport r;
  r.name = std::move(name);
  r.tolerance = tol;
  r.samples = samples;
  r.seed = seed;
  return r;
}

template <class F>
OracleReport guarded(OracleReport r, F&& body) {
  try {
    body(r);
  } catch (const std::exception& err) {
    r.passed = false;
    r.max_deviation = std::numeric_limits<double>::infinity();
    r.note = err.what();
  }
  return r;
}

}  // namespace

OracleReport check_closed_form(const ProblemSpec& spec, int samples, std::uint64_t seed) {
  OracleReport r = base("closed-form T", 1e-10, samples, seed);
  if (spec.order > 4) {
    r.skipped = true;
    r.passed = true;
    r.samples = 0;
    r.note = "closed forms are available for m <= 4";
    return r;
  }
  return guarded(r, [&](OracleReport& rep) {
    auto roots = root_symbols(spec);
    auto [T, Ti] = closed_form_T(spec.order, roots);
    SchurData s = build_schur(roots);
    SampleGrid grid = spec_grid(spec);
    bool symbolic = true;
    for (int i = 0; i < spec.order; ++i)
      for (int j = 0; j < spec.order; ++j)
        symbolic = symbolic && same_symbol(T(i, j), s.T(i, j), grid) && same_symbol(Ti(i, j), s.Tinv(i, j), grid);
    auto pts = random_samples(spec.dim, spec.t_start, spec.horizon, 1e3, samples, seed);
    rep.max_deviation = std::max(matrix_deviation(T, s.T, pts, spec.parameters, true),
                                 matrix_deviation(Ti, s.Tinv, pts, spec.parameters, true));
    rep.passed = symbolic && rep.max_deviation <= rep.tolerance;
    if (!symbolic) rep.note = "term-wise comparison failed";
  });
}

OracleReport check_omega_enumeration(const ProblemSpec& spec, int samples, std::uint64_t seed) {
  OracleReport r = base("omega enumeration", 1e-10, samples, seed);
  return guarded(r, [&](OracleReport& rep) {
    auto roots = root_symbols(spec);
    auto table = omega_table(roots);
    SampleGrid grid = spec_grid(spec);
    auto pts = random_samples(spec.dim, spec.t_start, spec.horizon, 1e3, samples, seed);
    bool symbolic = true;
    const int m = spec.order;
    for (int j = 1; j <= m; ++j)
      for (int k = 1; k <= j; ++k) {
        if (j - k > 8 || k > 8) continue;
        SymbolPoly brute = enum_homogeneous(j - k, k, roots);
        const SymbolPoly& fast = table[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
        symbolic = symbolic && same_symbol(brute, fast, grid);
        for (const auto& s : pts) {
          Bindings b{s.t, s.x, &spec.parameters};
          Complex a = brute.evaluate(b, s.xi);
          Complex c = fast.evaluate(b, s.xi);
          rep.max_deviation = std::max(rep.max_deviation, std::abs(a - c) / (1.0 + std::abs(c)));
        }
      }
    rep.passed = symbolic && rep.max_deviation <= rep.tolerance;
    if (!symbolic) rep.note = "term-wise comparison failed";
  });
}

OracleReport check_schur_identity(const ProblemSpec& spec, int samples, std::uint64_t seed) {
  OracleReport r = base("schur identity", 1e-9, samples, seed);
  return guarded(r, [&](OracleReport& rep) {
    auto sys = build_companion(spec);
    auto s = build_schur(root_symbols(spec));
    auto pts = random_samples(spec.dim, spec.t_start, spec.horizon, 1e3, samples, seed);
    rep.max_deviation = verify_schur(sys.A, s.T, s.Tinv, s.J, pts, spec.parameters).max_residual;
    rep.passed = rep.max_deviation <= rep.tolerance;
  });
}

OracleReport check_E_product(const ProblemSpec& spec, int samples, std::uint64_t seed) {
  OracleReport r = base("E entrywise vs product", 1e-8, samples, seed);
  return guarded(r, [&](OracleReport& rep) {
    auto s = build_schur(root_symbols(spec));
    SymbolMatrix E = compute_E(s.Tinv, s.T);
    SymbolMatrix P = compute_E_by_product(s.Tinv, s.T);
    auto pts = random_samples(spec.dim, spec.t_start, spec.horizon, 1e3, samples, seed);
    rep.max_deviation = matrix_deviation(E, P, pts, spec.parameters, true);
    rep.passed = rep.max_deviation <= rep.tolerance;
  });
}

OracleReport fd_check_E(const ProblemSpec& spec, double h, int samples, std::uint64_t seed) {
  OracleReport r = base("E finite difference", 1e-4, samples, seed);
  return guarded(r, [&](OracleReport& rep) {
    if (h < 1e-7 || h > 1e-3) throw SymbolError("finite-difference step must lie in [1e-7, 1e-3]");
    auto s = build_schur(root_symbols(spec));
    SymbolMatrix E = compute_E(s.Tinv, s.T);
    const int m = spec.order;
    double margin = std::max(h, 1e-3 * (spec.horizon - spec.t_start));
    auto pts = random_samples(spec.dim, spec.t_start + margin, spec.horizon - margin, 1e2, samples, seed);
    for (const auto& p : pts) {
      Bindings b0{p.t, p.x, &spec.parameters};
      Bindings bp{p.t + h, p.x, &spec.parameters};
      Bindings bm{p.t - h, p.x, &spec.parameters};
      auto tp = s.T.evaluate(bp, p.xi);
      auto tm = s.T.evaluate(bm, p.xi);
      auto ti = s.Tinv.evaluate(b0, p.xi);
      auto e = E.evaluate(b0, p.xi);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          Complex acc{};
          for (int k = 0; k < m; ++k) {
            auto kj = static_cast<std::size_t>(k * m + j);
            Complex dT = Complex(0.0, -1.0) * (tp[kj] - tm[kj]) / (2.0 * h);
            acc += ti[static_cast<std::size_t>(i * m + k)] * dT;
          }
          Complex ref = e[static_cast<std::size_t>(i * m + j)];
          rep.max_deviation = std::max(rep.max_deviation, std::abs(acc - ref) / (1.0 + std::abs(ref)));
        }
    }
    rep.passed = rep.max_deviation <= rep.tolerance;
  });
}

OracleReport check_companion_eigenvalues(const ProblemSpec& spec, int samples, std::uint64_t seed) {
  OracleReport r = base("companion eigenvalues", 1e-6, samples, seed);
  return guarded(r, [&](OracleReport& rep) {
    auto sys = build_companion(spec);
    auto roots = root_symbols(spec);
    const int m = spec.order;
    auto pts = random_samples(spec.dim, spec.t_start, spec.horizon, 1e2, samples, seed);
    for (const auto& p : pts) {
      Bindings b{p.t, p.x, &spec.parameters};
      auto a = sys.A.evaluate(b, p.xi);
      Eigen::MatrixXcd mat(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mat(i, j) = a[static_cast<std::size_t>(i * m + j)];
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(mat, false);
      std::vector<Complex> expected;
      for (const auto& root : roots) expected.push_back(root.evaluate(b, p.xi));
      std::vector<int> perm(static_cast<std::size_t>(m));
      std::iota(perm.begin(), perm.end(), 0);
      double best = std::numeric_limits<double>::infinity();
      do {
        double d = 0.0;
        for (int i = 0; i < m; ++i)
          d = std::max(d, std::abs(solver.eigenvalues()(i) - expected[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]));
        best = std::min(best, d);
      } while (std::next_permutation(perm.begin(), perm.end()));
      rep.max_deviation = std::max(rep.max_deviation, best / (1.0 + japanese_bracket(p.xi)));
    }
    rep.passed = rep.max_deviation <= rep.tolerance;
  });
}

std::vector<OracleReport> verify_all(const ProblemSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int n = 100;
  return {check_closed_form(spec, n, seed),
          check_omega_enumeration(spec, n, seed + 1),
          check_schur_identity(spec, n, seed + 2),
          check_E_product(spec, n, seed + 3),
          fd_check_E(spec, 1e-5, n, seed + 4),
          check_companion_eigenvalues(spec, n, seed + 5)};
}

}  // namespace levichk
