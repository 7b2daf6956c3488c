#pragma once

#include <cstddef>

#include "nk1/derivation.hpp"
#include "nk1/matrix.hpp"

namespace nk1 {

/// Conditional derivation of [I + NX] ≡ I (mod T) from the single hypothesis
/// [(I + NX)^k] ≡ I (mod T), for a nilpotent X-free matrix N over a scalar
/// ring in which k is a unit.
///
/// Every matrix in the chain is a polynomial in NX, so the rounds are
/// computed in R[u]/(u^m), m the nilpotency index of N, and printed with
/// u = N*X. The returned log has been replayed by the verifier.
///
/// Throws NotAUnit, NotNilpotent, NotSupported (non-scalar coefficients) or
/// PreconditionFailed (N depends on X).
DerivationLog theorem1_derivation(const PolyMatrix& n, unsigned long k, std::size_t bound_per_size = 16);

inline constexpr const char* theorem1_conclusion = "[I+NX] ≡ I (mod T)";

}  // namespace nk1
