#include "nk1/truncated.hpp"

#include "nk1/expr.hpp"

namespace nk1 {

TruncatedPoly::TruncatedPoly(const Ring& base, std::size_t t) : value_(Ring::truncated(base, t).zero()) {}

TruncatedPoly::TruncatedPoly(RingElem value) : value_(std::move(value)) {
  if (value_.ring().kind() != RingKind::Truncated)
    throw Error(ErrorKind::PreconditionFailed, "not an element of a truncated ring: " + value_.ring().to_string());
}

TruncatedPoly TruncatedPoly::from_coeffs(const Ring& base, std::size_t t, const std::vector<RingElem>& coeffs) {
  Ring r = Ring::truncated(base, t);
  RingElem::Dense d(t + 1);
  for (std::size_t i = 0; i < coeffs.size() && i <= t; ++i) {
    if (!(coeffs[i].ring() == base))
      throw Error(ErrorKind::MixedRings, coeffs[i].ring().to_string() + " coefficient in " + r.to_string());
    d[i] = coeffs[i].scalar_value();
  }
  return TruncatedPoly(RingElem::from_dense(r, std::move(d)));
}

TruncatedPoly TruncatedPoly::one(const Ring& base, std::size_t t) { return TruncatedPoly(Ring::truncated(base, t).one()); }

TruncatedPoly TruncatedPoly::monomial(const RingElem& c, std::size_t degree, std::size_t t) {
  Ring r = Ring::truncated(c.ring(), t);
  RingElem::Dense d(t + 1);
  if (degree <= t) d[degree] = c.scalar_value();
  return TruncatedPoly(RingElem::from_dense(r, std::move(d)));
}

TruncatedPoly TruncatedPoly::parse(const Ring& base, std::size_t t, std::string_view text) {
  return TruncatedPoly(parse_element(Ring::truncated(base, t), text));
}

RingElem TruncatedPoly::coeff(std::size_t i) const {
  const auto& d = value_.dense();
  return RingElem::scalar(base(), i < d.size() ? d[i] : mpq_class(0));
}

std::vector<RingElem> TruncatedPoly::coeffs() const {
  std::vector<RingElem> out;
  Ring b = base();
  for (const auto& c : value_.dense()) out.push_back(RingElem::scalar(b, c));
  return out;
}

long TruncatedPoly::degree() const {
  const auto& d = value_.dense();
  for (std::size_t i = d.size(); i-- > 0;)
    if (d[i] != 0) return static_cast<long>(i);
  return -1;
}

long TruncatedPoly::valuation() const {
  const auto& d = value_.dense();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) return static_cast<long>(i);
  return -1;
}

TruncatedPoly trunc_inv(const TruncatedPoly& f) {
  RingElem c0 = f.coeff(0);
  auto inv0 = try_inverse(c0);
  if (!inv0) throw Error(ErrorKind::NotAUnit, "constant term " + c0.to_string() + " of " + f.to_string());
  const Ring& r = f.ring();
  RingElem inv0_t = change_ring(*inv0, r);
  RingElem g = -(inv0_t * (f.value() - change_ring(c0, r)));
  RingElem sum = r.one();
  RingElem term = sum;
  for (std::size_t i = 1; i <= f.order(); ++i) {
    term *= g;
    sum += term;
  }
  return TruncatedPoly(inv0_t * sum);
}

TruncatedPoly scale_x(const TruncatedPoly& f, const RingElem& c) {
  return TruncatedPoly(scale_variable(f.value(), "X", c));
}

TruncatedPoly pow(const TruncatedPoly& f, long long e) {
  if (e < 0) return pow(trunc_inv(f), -e);
  return TruncatedPoly(pow(f.value(), e));
}

TruncatedPoly pow(const TruncatedPoly& f, const mpz_class& e) {
  if (e < 0) return pow(trunc_inv(f), mpz_class(-e));
  return TruncatedPoly(pow(f.value(), e));
}

}  // namespace nk1
