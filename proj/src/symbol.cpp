#include "levichk/symbol.hpp"

#include <cmath>
#include <numeric>

namespace levichk {

int TermKey::degree() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }

SymbolPoly::SymbolPoly(int dim) : dim_(dim) {
  if (dim < 1) throw SymbolError("symbol dimension must be >= 1");
}

SymbolPoly SymbolPoly::constant(int dim, Expr c) {
  SymbolPoly p(dim);
  p.add_term(TermKey{0, std::vector<int>(static_cast<std::size_t>(dim), 0)}, c);
  return p;
}

SymbolPoly SymbolPoly::monomial(std::vector<int> alpha, int weight, Expr c) {
  SymbolPoly p(static_cast<int>(alpha.size()));
  for (int a : alpha)
    if (a < 0) throw SymbolError("negative multi-index entry");
  p.add_term(TermKey{weight, std::move(alpha)}, c);
  return p;
}

SymbolPoly SymbolPoly::xi(int dim, int axis, Expr c) {
  if (axis < 0 || axis >= dim) throw SymbolError("xi axis out of range");
  std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
  alpha[static_cast<std::size_t>(axis)] = 1;
  return monomial(std::move(alpha), 0, std::move(c));
}

SymbolPoly SymbolPoly::bracket(int dim, int power) {
  return monomial(std::vector<int>(static_cast<std::size_t>(dim), 0), -power, Expr::constant(1.0));
}

SymbolPoly SymbolPoly::linear_form(std::span<const Expr> coeffs) {
  int dim = static_cast<int>(coeffs.size());
  SymbolPoly p(dim);
  for (int j = 0; j < dim; ++j) p = p + xi(dim, j, coeffs[static_cast<std::size_t>(j)]);
  return p;
}

void SymbolPoly::add_term(const TermKey& key, const Expr& c) {
  if (static_cast<int>(key.alpha.size()) != dim_) throw SymbolError("term dimension mismatch");
  if (c.is_zero_literal()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  Expr sum = it->second + c;
  if (sum.is_zero_literal())
    terms_.erase(it);
  else
    it->second = sum;
}

std::optional<int> SymbolPoly::nominal_order() const {
  std::optional<int> best;
  for (const auto& [key, c] : terms_) {
    int q = key.nominal_order();
    if (!best || q > *best) best = q;
  }
  return best;
}

bool SymbolPoly::depends_on_time() const {
  for (const auto& [key, c] : terms_)
    if (c.depends_on_time()) return true;
  return false;
}

bool SymbolPoly::depends_on_space() const {
  for (const auto& [key, c] : terms_)
    if (c.depends_on_space()) return true;
  return false;
}

SymbolPoly SymbolPoly::operator-() const {
  SymbolPoly r(dim_);
  for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
  return r;
}

static void require_same_dim(const SymbolPoly& a, const SymbolPoly& b) {
  if (a.dim() != b.dim())
    throw SymbolError("symbol dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

SymbolPoly operator+(const SymbolPoly& a, const SymbolPoly& b) {
  require_same_dim(a, b);
  SymbolPoly r = a;
  for (const auto& [key, c] : b.terms_) r.add_term(key, c);
  return r;
}

SymbolPoly operator-(const SymbolPoly& a, const SymbolPoly& b) {
  require_same_dim(a, b);
  SymbolPoly r = a;
  for (const auto& [key, c] : b.terms_) r.add_term(key, -c);
  return r;
}

SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b) {
  require_same_dim(a, b);
  SymbolPoly r(a.dim_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      TermKey k{ka.weight + kb.weight, ka.alpha};
      for (std::size_t i = 0; i < k.alpha.size(); ++i) k.alpha[i] += kb.alpha[i];
      r.add_term(k, ca * cb);
    }
  }
  return r;
}

SymbolPoly SymbolPoly::scaled(const Expr& c) const {
  SymbolPoly r(dim_);
  for (const auto& [key, coeff] : terms_) r.add_term(key, coeff * c);
  return r;
}

SymbolPoly SymbolPoly::shift_weight(int q) const {
  SymbolPoly r(dim_);
  for (const auto& [key, c] : terms_) {
    if (key.weight + q < 0)
      throw SymbolError("shift_weight would produce negative weight " + std::to_string(key.weight + q));
    r.terms_.emplace(TermKey{key.weight + q, key.alpha}, c);
  }
  return r;
}

SymbolPoly SymbolPoly::times_bracket(int power) const {
  SymbolPoly r(dim_);
  for (const auto& [key, c] : terms_) r.terms_.emplace(TermKey{key.weight - power, key.alpha}, c);
  return r;
}

SymbolPoly SymbolPoly::d_t() const {
  static const Expr minus_i = Expr::constant(Complex(0.0, -1.0));
  SymbolPoly r(dim_);
  for (const auto& [key, c] : terms_) r.add_term(key, minus_i * d_dt(c));
  return r;
}

SymbolPoly SymbolPoly::canonical() const {
  SymbolPoly r = *this;
  while (true) {
    // Reduce the term with the largest alpha_1 first so that contributions
    // landing on lower alpha_1 are merged before they are split again.
    auto pick = r.terms_.end();
    for (auto it = r.terms_.begin(); it != r.terms_.end(); ++it) {
      if (it->first.alpha[0] >= 2 && (pick == r.terms_.end() || it->first.alpha[0] > pick->first.alpha[0]))
        pick = it;
    }
    if (pick == r.terms_.end()) break;
    TermKey key = pick->first;
    Expr c = pick->second;
    r.terms_.erase(pick);
    TermKey base = key;
    base.alpha[0] -= 2;
    r.add_term(TermKey{base.weight - 2, base.alpha}, c);
    r.add_term(base, -c);
    for (std::size_t i = 1; i < base.alpha.size(); ++i) {
      TermKey k = base;
      k.alpha[i] += 2;
      r.add_term(k, -c);
    }
  }
  return r;
}

double japanese_bracket(std::span<const double> xi) {
  double s = 1.0;
  for (double v : xi) s += v * v;
  return std::sqrt(s);
}

Complex SymbolPoly::evaluate(const Bindings& b, std::span<const double> xi) const {
  CachedEvaluator ev(b);
  return evaluate(ev, xi);
}

Complex SymbolPoly::evaluate(CachedEvaluator& coeffs, std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim_) throw SymbolError("frequency vector dimension mismatch");
  double br = japanese_bracket(xi);
  Complex total(0.0, 0.0);
  for (const auto& [key, c] : terms_) {
    double mono = std::pow(br, -static_cast<double>(key.weight));
    for (std::size_t i = 0; i < key.alpha.size(); ++i)
      for (int k = 0; k < key.alpha[i]; ++k) mono *= xi[i];
    total += coeffs(c) * mono;
  }
  return total;
}

std::string SymbolPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += '(' + print(c) + ')';
    for (std::size_t i = 0; i < key.alpha.size(); ++i)
      out += "*xi" + std::to_string(i + 1) + '^' + std::to_string(key.alpha[i]);
    out += "*<xi>^(" + std::to_string(-key.weight) + ')';
  }
  return out;
}

SymbolPoly add(const SymbolPoly& a, const SymbolPoly& b) { return a + b; }
SymbolPoly mul(const SymbolPoly& a, const SymbolPoly& b) { return a * b; }
SymbolPoly scale(const SymbolPoly& a, const Expr& c) { return a.scaled(c); }
SymbolPoly shift_weight(const SymbolPoly& a, int q) { return a.shift_weight(q); }
SymbolPoly d_t(const SymbolPoly& a) { return a.d_t(); }
SymbolPoly canonicalize(const SymbolPoly& a) { return a.canonical(); }

// ---------------------------------------------------------------------------

SymbolMatrix::SymbolMatrix(int size, int dim)
    : size_(size), dim_(dim), entries_(static_cast<std::size_t>(size * size), SymbolPoly(dim)) {}

SymbolMatrix operator*(const SymbolMatrix& a, const SymbolMatrix& b) {
  if (a.size_ != b.size_ || a.dim_ != b.dim_) throw SymbolError("matrix shape mismatch");
  SymbolMatrix r(a.size_, a.dim_);
  for (int i = 0; i < a.size_; ++i)
    for (int j = 0; j < a.size_; ++j) {
      SymbolPoly acc(a.dim_);
      for (int k = 0; k < a.size_; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc = acc + a(i, k) * b(k, j);
      }
      r(i, j) = acc;
    }
  return r;
}

SymbolMatrix SymbolMatrix::d_t() const {
  SymbolMatrix r(size_, dim_);
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k].d_t();
  return r;
}

SymbolMatrix SymbolMatrix::canonical() const {
  SymbolMatrix r(size_, dim_);
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k].canonical();
  return r;
}

std::vector<Complex> SymbolMatrix::evaluate(const Bindings& b, std::span<const double> xi) const {
  CachedEvaluator ev(b);
  std::vector<Complex> out(entries_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k) out[k] = entries_[k].evaluate(ev, xi);
  return out;
}

std::string SymbolMatrix::to_string() const {
  std::string out;
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j)
      out += "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] " + (*this)(i, j).to_string() + "\n";
  return out;
}

}  // namespace levichk
