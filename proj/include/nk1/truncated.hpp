#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nk1/ring.hpp"

namespace nk1 {

/// Element of R_t = R[X]/(X^(t+1)) over a scalar ring R, as a dense
/// coefficient list c_0..c_t. Arithmetic drops every term of degree > t.
class TruncatedPoly {
 public:
  TruncatedPoly(const Ring& base, std::size_t t);
  explicit TruncatedPoly(RingElem value);

  static TruncatedPoly from_coeffs(const Ring& base, std::size_t t, const std::vector<RingElem>& coeffs);
  static TruncatedPoly one(const Ring& base, std::size_t t);
  /// c * X^degree (zero if degree > t).
  static TruncatedPoly monomial(const RingElem& c, std::size_t degree, std::size_t t);
  static TruncatedPoly parse(const Ring& base, std::size_t t, std::string_view text);

  const Ring& ring() const { return value_.ring(); }
  Ring base() const { return value_.ring().base(); }
  std::size_t order() const { return value_.ring().order(); }
  const RingElem& value() const { return value_; }

  RingElem coeff(std::size_t i) const;
  std::vector<RingElem> coeffs() const;
  /// Highest nonzero degree, -1 for zero.
  long degree() const;
  /// Lowest nonzero degree, -1 for zero.
  long valuation() const;
  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_.is_one(); }

  TruncatedPoly operator-() const { return TruncatedPoly(-value_); }
  friend TruncatedPoly operator+(const TruncatedPoly& a, const TruncatedPoly& b) { return TruncatedPoly(a.value_ + b.value_); }
  friend TruncatedPoly operator-(const TruncatedPoly& a, const TruncatedPoly& b) { return TruncatedPoly(a.value_ - b.value_); }
  friend TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) { return TruncatedPoly(a.value_ * b.value_); }
  friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) { return a.value_ == b.value_; }

  std::string to_string() const { return value_.to_string(); }

 private:
  RingElem value_;
};

/// Inverse in R_t by the geometric series c_0^-1 * sum_{i<=t} (-c_0^-1 (f - c_0))^i.
/// Throws NotAUnit when c_0 is not a unit.
TruncatedPoly trunc_inv(const TruncatedPoly& f);

/// The endomorphism X -> c*X of R_t: c_i becomes c^i * c_i.
TruncatedPoly scale_x(const TruncatedPoly& f, const RingElem& c);

TruncatedPoly pow(const TruncatedPoly& f, long long e);
TruncatedPoly pow(const TruncatedPoly& f, const mpz_class& e);

}  // namespace nk1
