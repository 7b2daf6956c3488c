#include "nk1/higman.hpp"

namespace nk1 {

StableEquivCert StableEquivCert::trivial(const PolyMatrix& a) {
  return StableEquivCert{a.size(), a, a, ElemWord(a.size()), ElemWord(a.size())};
}

bool StableEquivCert::holds() const {
  if (left.size() != size || right.size() != size) return false;
  if (source.size() > size || target.size() > size) return false;
  if (!(source.ring() == target.ring())) return false;
  PolyMatrix lhs = elem_apply_right(elem_apply(left, pad_identity(source, size)), right);
  return lhs == pad_identity(target, size);
}

HigmanStep higman_reduce_step(const PolyMatrix& a) {
  const long n = a.degree();
  if (n <= 1) throw Error(ErrorKind::AlreadyLinear, "degree " + std::to_string(n));
  const Ring& ring = a.ring();
  const std::size_t r = a.size();
  const RingElem x = ring.variable("X");
  const RingElem x_top = pow(x, n - 1);

  const PolyMatrix a_n = a.coefficient(static_cast<unsigned>(n));
  const PolyMatrix upper = -(x * a_n);
  const PolyMatrix lower = x_top * PolyMatrix::identity(ring, r);

  PolyMatrix reduced(ring, 2 * r);
  ElemWord left(2 * r), right(2 * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      reduced(i, j) = a(i, j) - x_top * x * a_n(i, j);
      reduced(i, r + j) = upper(i, j);
      reduced(r + i, j) = lower(i, j);
      left.push(i, r + j, upper(i, j));
      right.push(r + i, j, lower(i, j));
    }
    reduced(r + i, r + i) = ring.one();
  }

  StableEquivCert cert{2 * r, a, reduced, std::move(left), std::move(right)};
  if (!cert.holds()) throw Error(ErrorKind::InternalError, "degree reduction certificate does not replay");
  return {std::move(reduced), std::move(cert)};
}

HigmanStep higman_linearize(const PolyMatrix& a) {
  if (a.degree() <= 1) return {a, StableEquivCert::trivial(a)};
  PolyMatrix cur = a;
  ElemWord left(a.size()), right(a.size());
  while (cur.degree() > 1) {
    HigmanStep step = higman_reduce_step(cur);
    const std::size_t n = step.reduced.size();
    // step.left * (cur ⊥ I) * step.right = reduced, and cur = left * (a ⊥ I) * right.
    ElemWord new_left = step.cert.left;
    new_left.append(left.resized(n));
    ElemWord new_right = right.resized(n);
    new_right.append(step.cert.right);
    left = std::move(new_left);
    right = std::move(new_right);
    cur = std::move(step.reduced);
  }
  StableEquivCert cert{cur.size(), a, cur, std::move(left), std::move(right)};
  if (!cert.holds()) throw Error(ErrorKind::InternalError, "linearization certificate does not replay");
  return {std::move(cur), std::move(cert)};
}

UnipotentForm unipotent_normalize(const PolyMatrix& a, const std::optional<PolyMatrix>& a_inv,
                                  std::size_t bound_per_size) {
  if (!a.at_zero().is_identity()) throw Error(ErrorKind::NotUnipotentAtZero, "a(0) = " + a.at_zero().to_string());
  if (a_inv && !(a * *a_inv).is_identity()) throw Error(ErrorKind::NotInverse, "supplied inverse does not invert");
  HigmanStep lin = higman_linearize(a);
  if (!lin.reduced.at_zero().is_identity())
    throw Error(ErrorKind::InternalError, "linearized matrix is not the identity at X = 0");
  UnipotentForm out{lin.reduced.coefficient(1), std::move(lin.cert), 0};
  out.nilpotency_index = nilpotency_index(out.n, bound_per_size);
  return out;
}

}  // namespace nk1
