#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nk1/truncated.hpp"

namespace nk1 {

/// An element of 1 + X*R[X] truncated at X^t, i.e. a unit of R_t with
/// constant term 1.
class SeriesUnit {
 public:
  /// Throws BadShape unless the constant term is 1.
  explicit SeriesUnit(TruncatedPoly f);

  static SeriesUnit one(const Ring& base, std::size_t t) { return SeriesUnit(TruncatedPoly::one(base, t)); }
  static SeriesUnit parse(const Ring& base, std::size_t t, std::string_view text);

  const TruncatedPoly& poly() const { return f_; }
  Ring base() const { return f_.base(); }
  std::size_t order() const { return f_.order(); }

  friend bool operator==(const SeriesUnit& a, const SeriesUnit& b) { return a.f_ == b.f_; }

 private:
  TruncatedPoly f_;
};

/// Truncated big Witt vector with coordinates a_1..a_t, meaning the series
/// prod_{n>=1} (1 - a_n X^n)^-1 mod X^(t+1).
///
/// The coordinate vector is the canonical form; the series is derived.
class WittVector {
 public:
  WittVector(const Ring& base, std::vector<RingElem> coords);

  static WittVector zero(const Ring& base, std::size_t t);
  /// (1 - X)^-1, coordinates (1, 0, ..., 0).
  static WittVector one(const Ring& base, std::size_t t);
  /// (1 - a X^n)^-1.
  static WittVector generator(const RingElem& a, std::size_t n, std::size_t t);

  const Ring& base() const { return base_; }
  std::size_t order() const { return coords_.size(); }
  const std::vector<RingElem>& coords() const { return coords_; }
  /// 1-based, matching a_n.
  const RingElem& coord(std::size_t n) const { return coords_.at(n - 1); }

  friend bool operator==(const WittVector& a, const WittVector& b) {
    return a.base_ == b.base_ && a.coords_ == b.coords_;
  }

  std::string to_string() const;

 private:
  Ring base_;
  std::vector<RingElem> coords_;
};

SeriesUnit witt_series(const WittVector& w);
/// Ascending induction: a_n is the X^n coefficient of the residual once
/// levels below n are stripped, then the residual is multiplied by (1 - a_n X^n).
WittVector witt_coords(const SeriesUnit& f);

/// Sum in W(R): the product of the two series.
WittVector witt_add(const WittVector& u, const WittVector& v);
WittVector witt_neg(const WittVector& u);
/// Product in W(R), extended bilinearly from
///   (1 - a X^m)^-1 * (1 - b X^n)^-1 = (1 - a^(n/r) b^(m/r) X^(mn/r))^-r,  r = gcd(m, n).
WittVector witt_mul(const WittVector& u, const WittVector& v);

/// Ghost components w_1..w_t: the coefficients of X f'/f, found by forward
/// substitution in X f' = f * w (no division needed).
std::vector<RingElem> ghost(const SeriesUnit& f);

}  // namespace nk1
