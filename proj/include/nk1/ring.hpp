#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nk1/error.hpp"

namespace nk1 {

enum class RingKind { Integers, Rationals, Modular, Polynomial, Truncated };

class RingElem;

/// Descriptor of an exact commutative ring with identity.
///
/// Scalar rings are Z, Q and Z/n. Polynomial rings are built over a scalar
/// base with named variables, each optionally truncated (X^(e+1) = 0).
/// Truncated is R_t = R[X]/(X^(t+1)) over a scalar base; a univariate
/// polynomial ring in X with a truncation is always normalized to it.
///
/// Equality is structural. Rings are cheap to copy (shared descriptor).
class Ring {
 public:
  Ring();  // Z

  static Ring integers();
  static Ring rationals();
  static Ring modular(const mpz_class& modulus);
  static Ring polynomial(const Ring& base, std::vector<std::string> variables,
                         std::vector<std::optional<unsigned>> max_exponents = {});
  static Ring truncated(const Ring& base, std::size_t t);

  /// Compact grammar: Z, Q, Z/8, Z/2[X,Y], Z/5[X]/(X^4), Z[X,Y]/(X^3,Y^2).
  static Ring parse(std::string_view text);

  RingKind kind() const;
  bool is_scalar() const;
  const mpz_class& modulus() const;
  Ring base() const;
  const std::vector<std::string>& variables() const;
  std::optional<unsigned> max_exponent(std::size_t var) const;
  std::optional<std::size_t> variable_index(std::string_view name) const;
  std::size_t order() const;

  RingElem zero() const;
  RingElem one() const;
  RingElem from_integer(const mpz_class& n) const;
  RingElem variable(std::string_view name) const;

  std::string to_string() const;

  friend bool operator==(const Ring& a, const Ring& b);

  struct Descriptor;

 private:
  explicit Ring(std::shared_ptr<const Descriptor> d) : d_(std::move(d)) {}
  std::shared_ptr<const Descriptor> d_;

  friend class RingElem;
};

/// Element of a Ring in canonical form: residues in [0, n), fractions in
/// lowest terms, polynomials with zero terms pruned. Equal elements have
/// identical representations.
class RingElem {
 public:
  using Exponents = std::vector<unsigned>;

  // Ascending total degree; within a degree, earlier variables first.
  struct MonomialOrder {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using Terms = std::map<Exponents, mpq_class, MonomialOrder>;
  using Dense = std::vector<mpq_class>;

  RingElem();

  static RingElem scalar(const Ring& ring, mpq_class value);
  static RingElem from_terms(const Ring& ring, Terms terms);
  static RingElem from_dense(const Ring& ring, Dense coeffs);

  const Ring& ring() const { return ring_; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& scalar_value() const;
  const Terms& terms() const;
  const Dense& dense() const;

  /// Constant term as an element of the scalar base (or itself if scalar).
  RingElem constant_term() const;

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& b);
  RingElem& operator-=(const RingElem& b);
  RingElem& operator*=(const RingElem& b);

  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
  friend bool operator==(const RingElem& a, const RingElem& b);

  std::string to_string() const;

 private:
  Ring ring_;
  mpq_class scalar_;
  Terms terms_;
  Dense dense_;
};

enum class ArithOp { Add, Sub, Mul };

RingElem ring_arith(ArithOp op, const RingElem& a, const RingElem& b);

/// Multiplicative inverse; throws NotAUnit when none exists.
RingElem ring_inv(const RingElem& a);
std::optional<RingElem> try_inverse(const RingElem& a);
bool is_unit(const RingElem& a);
bool is_nilpotent(const RingElem& a);

/// a^e by repeated squaring; negative e inverts first.
RingElem pow(const RingElem& a, long long e);
RingElem pow(const RingElem& a, const mpz_class& e);

/// Maps a into `target`: scalars into any ring over the same scalar base,
/// polynomials into a ring whose variables include theirs.
RingElem change_ring(const RingElem& a, const Ring& target);

/// Degree in the named variable, -1 for zero.
long degree_in(const RingElem& a, std::string_view var);
/// Part of a of degree i in var, with var removed (same ring).
RingElem coefficient_in(const RingElem& a, std::string_view var, unsigned i);
/// Substitution var -> c*var for a scalar c of the base ring.
RingElem scale_variable(const RingElem& a, std::string_view var, const RingElem& c);
/// Substitution var -> c for a scalar c of the base ring.
RingElem evaluate_variable(const RingElem& a, std::string_view var, const RingElem& c);
/// Largest total degree among the terms, -1 for zero.
long total_degree(const RingElem& a);

}  // namespace nk1
