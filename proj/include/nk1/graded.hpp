#pragma once

#include <cstddef>
#include <vector>

#include "nk1/matrix.hpp"

namespace nk1 {

/// Element a_0 + a_1 + ... + a_r of a polynomial ring graded by total degree,
/// stored as its homogeneous components.
class GradedElem {
 public:
  /// Checks that component i is homogeneous of degree i (NotHomogeneous).
  GradedElem(const Ring& ring, std::vector<RingElem> components);

  /// Splits an element into its homogeneous components.
  static GradedElem decompose(const RingElem& a);

  const Ring& ring() const { return ring_; }
  const std::vector<RingElem>& components() const { return components_; }
  RingElem sum() const;

  friend GradedElem operator+(const GradedElem& a, const GradedElem& b);
  friend GradedElem operator*(const GradedElem& a, const GradedElem& b);
  friend bool operator==(const GradedElem& a, const GradedElem& b) { return a.components_ == b.components_; }

 private:
  Ring ring_;
  std::vector<RingElem> components_;
};

/// The grading ring with a fresh variable X adjoined, where theta lands.
Ring theta_ring(const Ring& graded);

/// a_0 + a_1 + ... -> a_0 + a_1 X + a_2 X^2 + ...
RingElem swan_weibel_theta(const GradedElem& a);

/// [[1 - XY, X^2], [-Y^2, 1 + XY]] over ring[X, Y], a completion of the
/// unimodular row (1 - XY, X^2).
PolyMatrix mennicke_fixture(const Ring& ring);
/// Its inverse [[1 + XY, -X^2], [Y^2, 1 - XY]].
PolyMatrix mennicke_fixture_inverse(const Ring& ring);

/// True when every monomial of every entry has even total degree.
bool entries_have_even_degree(const PolyMatrix& a);

}  // namespace nk1
