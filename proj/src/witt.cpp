#include "nk1/witt.hpp"

#include <numeric>

namespace nk1 {

namespace {

using Coeffs = std::vector<RingElem>;

// g <- g * (1 - a X^n)^-1, i.e. h_i = g_i + a h_{i-n} in ascending order.
void mul_by_generator_inverse(Coeffs& g, const RingElem& a, std::size_t n) {
  if (a.is_zero()) return;
  for (std::size_t i = n; i < g.size(); ++i) g[i] += a * g[i - n];
}

// g <- g * (1 - a X^n), descending so that old values are read.
void mul_by_generator(Coeffs& g, const RingElem& a, std::size_t n) {
  if (a.is_zero()) return;
  for (std::size_t i = g.size(); i-- > n;) g[i] -= a * g[i - n];
}

void require_compatible(const WittVector& u, const WittVector& v) {
  if (!(u.base() == v.base()))
    throw Error(ErrorKind::MixedRings, u.base().to_string() + " vs " + v.base().to_string());
  if (u.order() != v.order())
    throw Error(ErrorKind::MixedRings, "truncation orders " + std::to_string(u.order()) + " vs " + std::to_string(v.order()));
}

WittVector coords_of(const Ring& base, Coeffs residual) {
  const std::size_t t = residual.size() - 1;
  std::vector<RingElem> a(t, base.zero());
  for (std::size_t n = 1; n <= t; ++n) {
    a[n - 1] = residual[n];
    mul_by_generator(residual, a[n - 1], n);
  }
  return WittVector(base, std::move(a));
}

}  // namespace

SeriesUnit::SeriesUnit(TruncatedPoly f) : f_(std::move(f)) {
  if (!f_.coeff(0).is_one()) throw Error(ErrorKind::BadShape, "series " + f_.to_string() + " does not start with 1");
}

SeriesUnit SeriesUnit::parse(const Ring& base, std::size_t t, std::string_view text) {
  return SeriesUnit(TruncatedPoly::parse(base, t, text));
}

WittVector::WittVector(const Ring& base, std::vector<RingElem> coords) : base_(base), coords_(std::move(coords)) {
  if (!base_.is_scalar()) throw Error(ErrorKind::NotSupported, "Witt vectors need a scalar base ring");
  if (coords_.empty()) throw Error(ErrorKind::PreconditionFailed, "Witt vectors need t >= 1");
  for (const auto& c : coords_)
    if (!(c.ring() == base_)) throw Error(ErrorKind::MixedRings, "coordinate in " + c.ring().to_string());
}

WittVector WittVector::zero(const Ring& base, std::size_t t) { return WittVector(base, std::vector<RingElem>(t, base.zero())); }

WittVector WittVector::one(const Ring& base, std::size_t t) {
  std::vector<RingElem> a(t, base.zero());
  if (t) a[0] = base.one();
  return WittVector(base, std::move(a));
}

WittVector WittVector::generator(const RingElem& a, std::size_t n, std::size_t t) {
  if (n == 0) throw Error(ErrorKind::PreconditionFailed, "generator level starts at 1");
  std::vector<RingElem> c(t, a.ring().zero());
  if (n <= t) c[n - 1] = a;
  return WittVector(a.ring(), std::move(c));
}

std::string WittVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += coords_[i].to_string();
  }
  return s + ")";
}

SeriesUnit witt_series(const WittVector& w) {
  Coeffs g(w.order() + 1, w.base().zero());
  g[0] = w.base().one();
  for (std::size_t n = 1; n <= w.order(); ++n) mul_by_generator_inverse(g, w.coord(n), n);
  return SeriesUnit(TruncatedPoly::from_coeffs(w.base(), w.order(), g));
}

WittVector witt_coords(const SeriesUnit& f) {
  if (f.order() == 0) throw Error(ErrorKind::PreconditionFailed, "Witt vectors need t >= 1");
  return coords_of(f.base(), f.poly().coeffs());
}

WittVector witt_add(const WittVector& u, const WittVector& v) {
  require_compatible(u, v);
  Coeffs g = witt_series(u).poly().coeffs();
  for (std::size_t n = 1; n <= v.order(); ++n) mul_by_generator_inverse(g, v.coord(n), n);
  return coords_of(u.base(), std::move(g));
}

WittVector witt_neg(const WittVector& u) {
  Coeffs g = trunc_inv(witt_series(u).poly()).coeffs();
  return coords_of(u.base(), std::move(g));
}

WittVector witt_mul(const WittVector& u, const WittVector& v) {
  require_compatible(u, v);
  const std::size_t t = u.order();
  Coeffs g(t + 1, u.base().zero());
  g[0] = u.base().one();
  for (std::size_t m = 1; m <= t; ++m) {
    const RingElem& a = u.coord(m);
    if (a.is_zero()) continue;
    for (std::size_t n = 1; n <= t; ++n) {
      const RingElem& b = v.coord(n);
      if (b.is_zero()) continue;
      const std::size_t r = std::gcd(m, n);
      const std::size_t level = m / r * n;
      if (level > t) continue;
      RingElem c = pow(a, static_cast<long long>(n / r)) * pow(b, static_cast<long long>(m / r));
      for (std::size_t i = 0; i < r; ++i) mul_by_generator_inverse(g, c, level);
    }
  }
  return coords_of(u.base(), std::move(g));
}

std::vector<RingElem> ghost(const SeriesUnit& f) {
  const Coeffs c = f.poly().coeffs();
  const Ring base = f.base();
  const std::size_t t = f.order();
  std::vector<RingElem> w(t, base.zero());
  // n c_n = sum_{j=1}^{n} w_j c_{n-j}, with c_0 = 1
  for (std::size_t n = 1; n <= t; ++n) {
    RingElem acc = base.from_integer(static_cast<unsigned long>(n)) * c[n];
    for (std::size_t j = 1; j < n; ++j) acc -= w[j - 1] * c[n - j];
    w[n - 1] = acc;
  }
  return w;
}

}  // namespace nk1
