#include "nk1/graded.hpp"

#include <numeric>

namespace nk1 {

namespace {

long component_degree(const RingElem::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0L); }

std::vector<RingElem> split_by_degree(const RingElem& a) {
  const Ring& ring = a.ring();
  const long top = total_degree(a);
  std::vector<RingElem::Terms> parts(top < 0 ? 0 : static_cast<std::size_t>(top) + 1);
  for (const auto& [e, c] : a.terms()) parts[component_degree(e)].emplace(e, c);
  std::vector<RingElem> out;
  for (auto& p : parts) out.push_back(RingElem::from_terms(ring, std::move(p)));
  return out;
}

Ring fixture_ring(const Ring& ring) {
  if (!ring.is_scalar()) throw Error(ErrorKind::NotSupported, "fixture needs a scalar ring, got " + ring.to_string());
  return Ring::polynomial(ring, {"X", "Y"});
}

}  // namespace

GradedElem::GradedElem(const Ring& ring, std::vector<RingElem> components)
    : ring_(ring), components_(std::move(components)) {
  if (ring_.kind() != RingKind::Polynomial)
    throw Error(ErrorKind::NotSupported, "grading needs a polynomial ring, got " + ring_.to_string());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!(components_[i].ring() == ring_)) throw Error(ErrorKind::MixedRings, components_[i].ring().to_string());
    for (const auto& [e, c] : components_[i].terms())
      if (component_degree(e) != static_cast<long>(i))
        throw Error(ErrorKind::NotHomogeneous, "component " + std::to_string(i) + " = " + components_[i].to_string());
  }
  while (!components_.empty() && components_.back().is_zero()) components_.pop_back();
}

GradedElem GradedElem::decompose(const RingElem& a) { return GradedElem(a.ring(), split_by_degree(a)); }

RingElem GradedElem::sum() const {
  RingElem s = ring_.zero();
  for (const auto& c : components_) s += c;
  return s;
}

GradedElem operator+(const GradedElem& a, const GradedElem& b) {
  if (!(a.ring_ == b.ring_)) throw Error(ErrorKind::MixedRings, a.ring_.to_string() + " vs " + b.ring_.to_string());
  return GradedElem::decompose(a.sum() + b.sum());
}

GradedElem operator*(const GradedElem& a, const GradedElem& b) {
  if (!(a.ring_ == b.ring_)) throw Error(ErrorKind::MixedRings, a.ring_.to_string() + " vs " + b.ring_.to_string());
  return GradedElem::decompose(a.sum() * b.sum());
}

Ring theta_ring(const Ring& graded) {
  if (graded.variable_index("X"))
    throw Error(ErrorKind::PreconditionFailed, "graded ring already uses the variable X: " + graded.to_string());
  return matrix_ring(graded);
}

RingElem swan_weibel_theta(const GradedElem& a) {
  const Ring target = theta_ring(a.ring());
  const RingElem x = target.variable("X");
  RingElem out = target.zero();
  RingElem xi = target.one();
  for (const auto& c : a.components()) {
    out += change_ring(c, target) * xi;
    xi *= x;
  }
  return out;
}

PolyMatrix mennicke_fixture(const Ring& ring) {
  Ring r = fixture_ring(ring);
  const RingElem x = r.variable("X"), y = r.variable("Y"), one = r.one();
  return PolyMatrix::from_rows(r, {{one - x * y, x * x}, {-(y * y), one + x * y}});
}

PolyMatrix mennicke_fixture_inverse(const Ring& ring) {
  Ring r = fixture_ring(ring);
  const RingElem x = r.variable("X"), y = r.variable("Y"), one = r.one();
  return PolyMatrix::from_rows(r, {{one + x * y, -(x * x)}, {y * y, one - x * y}});
}

bool entries_have_even_degree(const PolyMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (const auto& [e, c] : a(i, j).terms())
        if (component_degree(e) % 2 != 0) return false;
  return true;
}

}  // namespace nk1
