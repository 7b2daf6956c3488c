#pragma once

#include <cstddef>
#include <optional>

#include "nk1/matrix.hpp"

namespace nk1 {

/// Two-sided elementary certificate: left * (source ⊥ I) * right = target ⊥ I,
/// everything padded to `size`.
struct StableEquivCert {
  std::size_t size = 0;
  PolyMatrix source;
  PolyMatrix target;
  ElemWord left;
  ElemWord right;

  /// Identity certificate for a matrix against itself.
  static StableEquivCert trivial(const PolyMatrix& a);

  /// Replays the certificate by exact arithmetic.
  bool holds() const;
};

struct HigmanStep {
  PolyMatrix reduced;
  StableEquivCert cert;
};

/// One degree reduction of a = a_0 + ... + a_n X^n (n >= 2) to the 2r x 2r matrix
///   [[a_0 + ... + a_(n-1) X^(n-1), -a_n X], [X^(n-1) I, I]]
/// with left word [[I, -a_n X], [0, I]] and right word [[I, 0], [X^(n-1) I, I]].
/// Throws AlreadyLinear when deg a <= 1.
HigmanStep higman_reduce_step(const PolyMatrix& a);

/// Repeats the reduction down to degree <= 1. The result has size r * 2^(n-1).
HigmanStep higman_linearize(const PolyMatrix& a);

struct UnipotentForm {
  PolyMatrix n;  // X-free, linearized matrix is I + n X
  StableEquivCert cert;
  std::size_t nilpotency_index = 0;
};

/// Linearizes a with a(0) = I and extracts the nilpotent part. An optional
/// inverse is checked first (NotInverse). Throws NotUnipotentAtZero or
/// NotNilpotent.
UnipotentForm unipotent_normalize(const PolyMatrix& a, const std::optional<PolyMatrix>& a_inv = std::nullopt,
                                  std::size_t bound_per_size = 16);

}  // namespace nk1
