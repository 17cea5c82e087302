#include "levichk/order_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace levichk {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(OrderMethod m) {
  return m == OrderMethod::Canonical ? "canonical" : "ray-sampling";
}

static std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = a + (b - a) * k / (n - 1);
  return v;
}

SampleGrid SampleGrid::standard(int dim, double t0, double t1, ParamTable params, int t_points, int x_points) {
  SampleGrid g;
  g.times = linspace(t0, t1, t_points);
  g.space.assign(static_cast<std::size_t>(dim), linspace(-std::numbers::pi, std::numbers::pi, x_points));
  g.params = std::move(params);
  if (dim == 1) {
    g.directions = {{1.0}, {-1.0}};
  } else {
    const int rays = 16;
    for (int k = 0; k < rays; ++k) {
      double th = 2.0 * std::numbers::pi * k / rays;
      std::vector<double> d(static_cast<std::size_t>(dim), 0.0);
      d[0] = std::cos(th);
      d[1] = std::sin(th);
      g.directions.push_back(d);
    }
  }
  for (int e = 4; e <= 14; ++e) g.radii.push_back(std::ldexp(1.0, e));
  return g;
}

std::vector<std::vector<double>> SampleGrid::space_points() const {
  std::vector<std::vector<double>> pts{{}};
  for (const auto& axis : space) {
    std::vector<std::vector<double>> next;
    next.reserve(pts.size() * axis.size());
    for (const auto& p : pts)
      for (double v : axis) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

ZeroTestResult test_vanishes(const Expr& c, const SampleGrid& grid) {
  ZeroTestResult res;
  if (c.is_zero_literal()) return res;
  std::vector<double> t_samples = c.depends_on_time() ? grid.times : std::vector<double>{grid.times.front()};
  std::vector<std::vector<double>> x_samples;
  if (c.depends_on_space()) {
    x_samples = grid.space_points();
  } else {
    std::vector<double> origin;
    for (const auto& axis : grid.space) origin.push_back(axis[axis.size() / 2]);
    x_samples.push_back(origin);
  }
  Bindings b;
  b.params = &grid.params;
  for (double t : t_samples) {
    for (const auto& x : x_samples) {
      b.t = t;
      b.x = x;
      try {
        CachedEvaluator ev(b);
        Complex v = ev(c);
        if (!(std::abs(v) <= grid.zero_tol)) {
          res.outcome = ZeroTest::NonZero;
          res.t = t;
          res.x = x;
          res.value = v;
          return res;
        }
      } catch (const std::exception& err) {
        res.outcome = ZeroTest::Error;
        res.t = t;
        res.x = x;
        res.error = err.what();
        return res;
      }
    }
  }
  return res;
}

namespace {

double fit_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
  double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  return sxy / sxx;
}

template <class T>
std::vector<T> thin(const std::vector<T>& v, std::size_t keep) {
  if (v.size() <= keep) return v;
  std::vector<T> out;
  for (std::size_t k = 0; k < keep; ++k) out.push_back(v[k * (v.size() - 1) / (keep - 1)]);
  return out;
}

OrderVerdict ray_sampling(const SymbolPoly& a, int target, const SampleGrid& grid) {
  OrderVerdict v;
  v.target = target;
  v.method = OrderMethod::RaySampling;
  v.verdict = Verdict::Pass;
  double worst = -std::numeric_limits<double>::infinity();
  std::vector<double> times = a.depends_on_time() ? thin(grid.times, 5) : std::vector<double>{grid.times.front()};
  SampleGrid reduced = grid;
  for (auto& axis : reduced.space) axis = thin(axis, 3);
  std::vector<std::vector<double>> xs = a.depends_on_space() ? reduced.space_points() : std::vector<std::vector<double>>{
      reduced.space_points()[reduced.space_points().size() / 2]};
  Bindings b;
  b.params = &grid.params;
  std::vector<double> lr;
  for (double r : grid.radii) lr.push_back(std::log(r));
  for (double t : times) {
    for (const auto& x : xs) {
      b.t = t;
      b.x = x;
      CachedEvaluator ev(b);
      for (const auto& dir : grid.directions) {
        std::vector<double> la;
        bool vanished = true;
        for (double r : grid.radii) {
          std::vector<double> xi(dir.size());
          for (std::size_t i = 0; i < dir.size(); ++i) xi[i] = r * dir[i];
          Complex val;
          try {
            val = a.evaluate(ev, xi);
          } catch (const std::exception& err) {
            v.verdict = Verdict::Inconclusive;
            v.note = std::string("evaluation failed during ray sampling: ") + err.what();
            v.witness = OrderWitness{TermKey{}, t, x, Complex{}, dir, 0.0};
            return v;
          }
          double m = std::abs(val);
          if (m > 1e-300) vanished = false;
          la.push_back(std::log(std::max(m, 1e-300)));
        }
        if (vanished) continue;
        double q = fit_slope(lr, la);
        if (q > worst) {
          worst = q;
          if (q > target + grid.slope_slack) {
            v.verdict = Verdict::Inconclusive;
            v.witness = OrderWitness{TermKey{}, t, x, Complex{}, dir, q};
          }
        }
      }
    }
  }
  if (v.verdict == Verdict::Inconclusive)
    v.note = "canonical terms vanish but fitted growth " + std::to_string(worst) + " exceeds target";
  return v;
}

}  // namespace

OrderVerdict check_order(const SymbolPoly& a, int target, const SampleGrid& grid) {
  OrderVerdict v;
  v.target = target;
  v.method = OrderMethod::Canonical;
  if (a.dim() != grid.dim()) throw SymbolError("sample grid dimension does not match symbol");
  SymbolPoly canon = a.canonical();

  std::vector<std::pair<TermKey, Expr>> excess;
  for (const auto& [key, c] : canon.terms())
    if (key.nominal_order() > target) excess.emplace_back(key, c);
  std::stable_sort(excess.begin(), excess.end(),
                   [](const auto& l, const auto& r) { return l.first.nominal_order() > r.first.nominal_order(); });

  for (const auto& [key, c] : excess) {
    ZeroTestResult z = test_vanishes(c, grid);
    if (z.outcome == ZeroTest::NonZero) {
      v.verdict = Verdict::Fail;
      v.witness = OrderWitness{key, z.t, z.x, z.value, {}, 0.0};
      v.note = "term of order " + std::to_string(key.nominal_order()) + " has non-vanishing coefficient";
      return v;
    }
    if (z.outcome == ZeroTest::Error) {
      v.verdict = Verdict::Inconclusive;
      v.witness = OrderWitness{key, z.t, z.x, Complex{}, {}, 0.0};
      v.note = "coefficient evaluation failed: " + z.error;
      return v;
    }
  }
  v.verdict = Verdict::Pass;

  bool multivariate_residue = false;
  if (a.dim() >= 2)
    for (const auto& [key, c] : canon.terms())
      if (key.degree() >= 2) multivariate_residue = true;
  if (multivariate_residue) {
    // Drop the terms already shown to vanish before sampling along rays.
    SymbolPoly kept(a.dim());
    for (const auto& [key, c] : canon.terms())
      if (key.nominal_order() <= target) kept.add_term(key, c);
    OrderVerdict rays = ray_sampling(kept, target, grid);
    if (rays.verdict != Verdict::Pass) return rays;
  }
  return v;
}

}  // namespace levichk
