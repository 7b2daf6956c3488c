#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nk1/derivation.hpp"
#include "nk1/witt.hpp"

namespace nk1 {

struct Lemma3Factor {
  RingElem p0;
  TruncatedPoly q;  // deg q < t - r
};

/// For f = 1 + X^r P(X) in R_t, the exact factorization
///   f = (1 + X^r P(0)) (1 + X^(r+1) Q(X)),
/// with Q read off from (1 + X^r P(0))^-1 f by the geometric series.
/// Throws TruncationTooSmall if r > t and BadShape if f is not of that shape.
Lemma3Factor lemma3_factor(const TruncatedPoly& f, std::size_t r);

/// The unique a_1..a_t with f = prod_i (1 + a_i X^i) in R_t.
std::vector<RingElem> canonical_product(const SeriesUnit& f);

/// The torsion hypothesis handed to lemma4_step. With trivial_subgroup the
/// congruence is equality, so f^k = 1 is checked instead of assumed.
struct HypothesisToken {
  std::string label = "H";
  bool trivial_subgroup = false;
};

struct Lemma4Result {
  TruncatedPoly q;
  DerivationLog log;
};

/// From f = 1 + X^r P and the hypothesis f^k ≡ 1 (mod T), derives
/// f ≡ 1 + X^(r+1) Q (mod T). k must be a unit of R (NotAUnit).
Lemma4Result lemma4_step(const TruncatedPoly& f, std::size_t r, unsigned long k, const HypothesisToken& hyp = {});

/// For f with f^k = 1 in R_t, a verified chain f = 1 + X Q_1 = 1 + X^2 Q_2 = ... = 1
/// ending in the identity f = 1. Throws NotAUnit or PreconditionFailed.
DerivationLog trivialize_k_torsion(const SeriesUnit& f, unsigned long k);

}  // namespace nk1
