#include "levichk/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "levichk/reduction.hpp"
#include "levichk/schur.hpp"

namespace levichk {

struct TorusGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

namespace {

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

int wavenumber(int slot, int n) { return slot < n / 2 ? slot : slot - n; }

}  // namespace

TorusGrid::TorusGrid(int dim, int modes) : dim_(dim), modes_(modes), plans_(std::make_unique<Plans>()) {
  if (dim < 1 || dim > 2) throw SpecError("the spectral solver supports dimension 1 or 2");
  if (modes < 4 || (modes & (modes - 1)) != 0) throw SpecError("modes must be a power of two >= 4");
  size_ = static_cast<std::size_t>(modes) * (dim == 2 ? static_cast<std::size_t>(modes) : 1);
  brackets_.resize(size_);
  for (std::size_t k = 0; k < size_; ++k) brackets_[k] = japanese_bracket(frequency(k));

  Field a(size_), b(size_);
  int shape[2] = {modes, modes};
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_dft(dim, shape, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft(dim, shape, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
}

TorusGrid::~TorusGrid() {
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

std::vector<double> TorusGrid::node(std::size_t flat) const {
  const double h = 2.0 * std::numbers::pi / modes_;
  if (dim_ == 1) return {h * static_cast<double>(flat)};
  auto n = static_cast<std::size_t>(modes_);
  return {h * static_cast<double>(flat / n), h * static_cast<double>(flat % n)};
}

std::vector<double> TorusGrid::frequency(std::size_t flat) const {
  if (dim_ == 1) return {static_cast<double>(wavenumber(static_cast<int>(flat), modes_))};
  auto n = static_cast<std::size_t>(modes_);
  return {static_cast<double>(wavenumber(static_cast<int>(flat / n), modes_)),
          static_cast<double>(wavenumber(static_cast<int>(flat % n), modes_))};
}

Field TorusGrid::forward(const Field& physical) const {
  Field in = physical;
  Field out(size_);
  fftw_execute_dft(plans_->forward, as_fftw(in.data()), as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& v : out) v *= scale;
  return out;
}

Field TorusGrid::backward(const Field& spectral) const {
  Field in = spectral;
  Field out(size_);
  fftw_execute_dft(plans_->backward, as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

void TorusGrid::dealias(Field& spectral) const {
  const double cut = modes_ / 3.0;
  for (std::size_t k = 0; k < size_; ++k)
    for (double f : frequency(k))
      if (std::abs(f) > cut) {
        spectral[k] = 0.0;
        break;
      }
}

Field TorusGrid::sample(const Expr& e, double t, const ParamTable& params) const {
  Field out(size_);
  Bindings b;
  b.t = t;
  b.params = &params;
  if (!e.depends_on_space()) {
    b.x.assign(static_cast<std::size_t>(dim_), 0.0);
    std::fill(out.begin(), out.end(), eval(e, b));
    return out;
  }
  for (std::size_t j = 0; j < size_; ++j) {
    b.x = node(j);
    out[j] = eval(e, b);
  }
  return out;
}

// ---------------------------------------------------------------------------

CompiledSymbol::CompiledSymbol(const SymbolPoly& sym, const TorusGrid& grid) {
  if (sym.dim() != grid.dim()) throw SymbolError("symbol and grid dimensions differ");
  for (const auto& [key, c] : sym.terms()) {
    Part p;
    p.coeff = c;
    p.x_dependent = c.depends_on_space();
    p.multiplier.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      auto xi = grid.frequency(k);
      double v = std::pow(grid.bracket(k), -static_cast<double>(key.weight));
      for (std::size_t a = 0; a < key.alpha.size(); ++a)
        for (int r = 0; r < key.alpha[a]; ++r) v *= xi[a];
      p.multiplier[k] = v;
    }
    parts_.push_back(std::move(p));
  }
}

bool CompiledSymbol::depends_on_space() const {
  return std::any_of(parts_.begin(), parts_.end(), [](const Part& p) { return p.x_dependent; });
}

void CompiledSymbol::apply_add(const Field& in, Field& out, double t, const ParamTable& params,
                               const TorusGrid& grid, bool dealias) const {
  const std::size_t n = grid.size();
  Field physical;
  Bindings b;
  b.t = t;
  b.params = &params;
  b.x.assign(static_cast<std::size_t>(grid.dim()), 0.0);
  for (const auto& p : parts_) {
    if (!p.x_dependent) {
      Complex c = eval(p.coeff, b);
      for (std::size_t k = 0; k < n; ++k) out[k] += c * p.multiplier[k] * in[k];
      continue;
    }
    Field tmp(n);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = p.multiplier[k] * in[k];
    tmp = grid.backward(tmp);
    Field coeff = grid.sample(p.coeff, t, params);
    if (physical.empty()) physical.assign(n, Complex{});
    for (std::size_t j = 0; j < n; ++j) physical[j] += coeff[j] * tmp[j];
  }
  if (!physical.empty()) {
    Field hat = grid.forward(physical);
    if (dealias) grid.dealias(hat);
    for (std::size_t k = 0; k < n; ++k) out[k] += hat[k];
  }
}

Complex CompiledSymbol::value_at(std::size_t flat, double t, const ParamTable& params) const {
  Bindings b;
  b.t = t;
  b.params = &params;
  Complex total{};
  for (const auto& p : parts_) {
    if (p.x_dependent) throw SymbolError("pointwise multiplier requested for an x-dependent symbol");
    b.x.assign(1, 0.0);
    total += eval(p.coeff, b) * p.multiplier[flat];
  }
  return total;
}

Field apply_symbol(const SymbolPoly& sym, const Field& field, const TorusGrid& grid, double t,
                   const ParamTable& params) {
  CompiledSymbol op(sym, grid);
  Field hat = grid.forward(field);
  Field out(grid.size());
  op.apply_add(hat, out, t, params, grid, false);
  return grid.backward(out);
}

double sobolev_norm(const Field& spectral, double s, const TorusGrid& grid) {
  double acc = 0.0;
  for (std::size_t k = 0; k < spectral.size(); ++k)
    acc += std::pow(grid.bracket(k), 2.0 * s) * std::norm(spectral[k]);
  return std::sqrt(acc);
}

double aniso_norm(const std::vector<Field>& components, double s, const TorusGrid& grid) {
  double acc = 0.0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    double v = sobolev_norm(components[c], s + static_cast<double>(c), grid);
    acc += v * v;
  }
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------

double policy_dt(const ProblemSpec& spec, int modes) {
  double lambda = 0.0;
  Bindings b;
  b.params = &spec.parameters;
  b.x.assign(static_cast<std::size_t>(spec.dim), 0.0);
  const int samples = 17;
  for (int s = 0; s < samples; ++s) {
    b.t = spec.t_start + (spec.horizon - spec.t_start) * s / (samples - 1);
    for (int j = 0; j < spec.dim; ++j) {
      double sum = 0.0;
      for (const auto& root : spec.roots) sum += std::abs(eval(root[static_cast<std::size_t>(j)], b));
      lambda = std::max(lambda, sum);
    }
  }
  double xi_max = std::sqrt(1.0 + spec.dim * std::pow(modes / 2.0, 2));
  return spec.solver.cfl / ((1.0 + lambda) * xi_max);
}

namespace {

class SystemOperator {
 public:
  SystemOperator(const ProblemSpec& spec, const TorusGrid& grid) : spec_(spec), grid_(grid), m_(spec.order) {
    CompanionSystem sys = build_companion(spec);
    entries_.resize(static_cast<std::size_t>(m_ * m_));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        SymbolPoly sum = sys.A(i, j) + sys.B(i, j);
        if (!sum.is_zero()) entries_[idx(i, j)] = CompiledSymbol(sum, grid);
      }
    SchurData schur = build_schur(root_symbols(spec));
    tinv_.resize(static_cast<std::size_t>(m_ * m_));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j <= i; ++j) tinv_[idx(i, j)] = CompiledSymbol(schur.Tinv(i, j), grid);
    has_forcing_ = !spec.forcing.is_zero_literal();
  }

  std::vector<Field> rhs(double t, const std::vector<Field>& u) const {
    const std::size_t n = grid_.size();
    std::vector<Field> du(static_cast<std::size_t>(m_), Field(n));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        const auto& op = entries_[idx(i, j)];
        if (!op.empty()) op.apply_add(u[static_cast<std::size_t>(j)], du[static_cast<std::size_t>(i)], t,
                                      spec_.parameters, grid_, spec_.solver.dealias);
      }
    if (has_forcing_) {
      Field f = grid_.forward(grid_.sample(spec_.forcing, t, spec_.parameters));
      auto& last = du.back();
      for (std::size_t k = 0; k < n; ++k) last[k] += f[k];
    }
    const Complex iu(0.0, 1.0);
    for (auto& c : du)
      for (auto& v : c) v *= iu;
    return du;
  }

  std::vector<Field> to_triangular(double t, const std::vector<Field>& u) const {
    const std::size_t n = grid_.size();
    std::vector<Field> v(static_cast<std::size_t>(m_), Field(n));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j <= i; ++j) {
        const auto& op = tinv_[idx(i, j)];
        if (!op.empty()) op.apply_add(u[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(i)], t,
                                      spec_.parameters, grid_, false);
      }
    return v;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * m_ + j); }

  const ProblemSpec& spec_;
  const TorusGrid& grid_;
  int m_;
  std::vector<CompiledSymbol> entries_;
  std::vector<CompiledSymbol> tinv_;
  bool has_forcing_ = false;
};

void axpy(std::vector<Field>& out, const std::vector<Field>& x, double a, const std::vector<Field>& y) {
  for (std::size_t c = 0; c < x.size(); ++c)
    for (std::size_t k = 0; k < x[c].size(); ++k) out[c][k] = x[c][k] + a * y[c][k];
}

bool all_finite(const std::vector<Field>& u) {
  for (const auto& c : u)
    for (const auto& v : c)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace

RunResult solve(const ProblemSpec& spec, const SolveControls& controls) {
  spec.validate();
  const int m = spec.order;
  TorusGrid grid(spec.dim, spec.solver.modes);
  SystemOperator op(spec, grid);
  const double s = spec.solver.sobolev_s;

  std::vector<Field> u(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    Field hat = grid.forward(grid.sample(spec.data[static_cast<std::size_t>(k)], spec.t_start, spec.parameters));
    for (std::size_t j = 0; j < hat.size(); ++j) hat[j] *= std::pow(grid.bracket(j), m - 1 - k);
    u[static_cast<std::size_t>(k)] = std::move(hat);
  }

  const int cadence = spec.solver.cadence;
  const double interval = (spec.horizon - spec.t_start) / cadence;
  const double target_dt = controls.fixed_dt > 0 ? controls.fixed_dt : policy_dt(spec, spec.solver.modes);
  const long per = std::max(1L, static_cast<long>(std::ceil(interval / target_dt - 1e-9)));

  RunResult res;
  res.dt = interval / static_cast<double>(per);
  auto record = [&](double t) {
    res.times.push_back(t);
    std::vector<double> norms;
    for (const auto& c : u) norms.push_back(sobolev_norm(c, s, grid));
    res.component_norms.push_back(std::move(norms));
    res.aniso.push_back(aniso_norm(op.to_triangular(t, u), s, grid));
  };
  record(spec.t_start);

  std::vector<Field> tmp = u;
  const double dt = res.dt;
  for (int out = 1; out <= cadence && !res.blowup; ++out) {
    for (long step = 0; step < per; ++step) {
      double t = spec.t_start + ((out - 1) * per + step) * dt;
      auto k1 = op.rhs(t, u);
      axpy(tmp, u, 0.5 * dt, k1);
      auto k2 = op.rhs(t + 0.5 * dt, tmp);
      axpy(tmp, u, 0.5 * dt, k2);
      auto k3 = op.rhs(t + 0.5 * dt, tmp);
      axpy(tmp, u, dt, k3);
      auto k4 = op.rhs(t + dt, tmp);
      for (std::size_t c = 0; c < u.size(); ++c)
        for (std::size_t k = 0; k < u[c].size(); ++k)
          u[c][k] += dt / 6.0 * (k1[c][k] + 2.0 * k2[c][k] + 2.0 * k3[c][k] + k4[c][k]);
      ++res.steps;
      if (!all_finite(u)) {
        res.blowup = true;
        res.blowup_time = t + dt;
        break;
      }
    }
    if (!res.blowup) record(spec.t_start + out * interval);
  }
  for (const auto& c : u) res.final_state.push_back(grid.backward(c));
  return res;
}

SweepResult frequency_sweep(const ProblemSpec& spec, double s, const std::vector<int>& n_list, double mode_fraction) {
  SweepResult out;
  for (int n : n_list) {
    ProblemSpec run = spec;
    run.solver.modes = n;
    run.solver.sobolev_s = s;
    run.forcing = Expr();
    double k = std::round(n * mode_fraction);
    run.data.assign(static_cast<std::size_t>(spec.order), Expr());
    run.data[0] = Expr::call(Func::Exp, Expr::imag_unit() * Expr::constant(k) * Expr::space(1));
    RunResult r = solve(run);
    double rho = std::numeric_limits<double>::infinity();
    if (!r.blowup) {
      double peak = *std::max_element(r.aniso.begin(), r.aniso.end());
      rho = peak / r.aniso.front();
    }
    out.n.push_back(n);
    out.rho.push_back(rho);
  }
  bool finite = std::all_of(out.rho.begin(), out.rho.end(), [](double r) { return std::isfinite(r); });
  if (!finite || out.n.size() < 2) {
    out.fitted_q = finite ? 0.0 : std::numeric_limits<double>::infinity();
    return out;
  }
  double mx = 0, my = 0;
  const double count = static_cast<double>(out.n.size());
  for (std::size_t i = 0; i < out.n.size(); ++i) {
    mx += std::log(out.n[i]);
    my += std::log(out.rho[i]);
  }
  mx /= count;
  my /= count;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < out.n.size(); ++i) {
    double dx = std::log(out.n[i]) - mx;
    sxy += dx * (std::log(out.rho[i]) - my);
    sxx += dx * dx;
  }
  out.fitted_q = sxy / sxx;
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_run_csv(const RunResult& r, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  std::size_t m = r.component_norms.empty() ? 0 : r.component_norms.front().size();
  os << "t";
  for (std::size_t k = 1; k <= m; ++k) os << ",norm_c" << k;
  os << ",aniso\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    os << fmt(r.times[i]);
    for (double v : r.component_norms[i]) os << ',' << fmt(v);
    os << ',' << fmt(r.aniso[i]) << '\n';
  }
}

void write_sweep_csv(const SweepResult& r, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "N,rho,fitted_q\n";
  for (std::size_t i = 0; i < r.n.size(); ++i) os << r.n[i] << ',' << fmt(r.rho[i]) << ',' << fmt(r.fitted_q) << '\n';
}

}  // namespace levichk
