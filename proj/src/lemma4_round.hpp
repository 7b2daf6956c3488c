#pragma once

// One round of the torsion-elimination argument, shared by the series and
// matrix producers. Elements are polynomials in a nilpotent u (X itself, or
// the matrix N*X), computed in R[u]/(u^(d+1)) and printed by `render`.

#include <functional>
#include <string>
#include <vector>

#include "nk1/derivation.hpp"
#include "nk1/truncated.hpp"

namespace nk1::detail {

struct RoundWriter {
  std::vector<Step>& steps;
  std::function<std::string(const TruncatedPoly&)> render;
  std::string one;  // "1" or "I"
  unsigned long k = 1;
  std::size_t scale_down_axiom = 0;  // AXIOM X -> (1/k) X

  std::size_t push(Step s) {
    steps.push_back(std::move(s));
    return steps.size() - 1;
  }
};

struct RoundResult {
  TruncatedPoly next;
  std::size_t equiv_step;  // "g ≡ next"
};

/// Given g = 1 + u^r h and a step "(g)^k ≡ 1", derives g ≡ 1 + u^(r+1) h'.
RoundResult lemma4_round(RoundWriter& w, const TruncatedPoly& g, std::size_t r, std::size_t torsion_step);

/// From "g ≡ next" and "(g)^k ≡ 1", derives "(next)^k ≡ 1"; returns its index.
std::size_t carry_torsion(RoundWriter& w, const std::string& g, const std::string& next, std::size_t equiv_step,
                          std::size_t torsion_step);

/// Runs rounds r = first..d starting from "(g)^k ≡ 1", chaining the
/// equivalences. Returns the final element (which is 1) and the index of
/// "g ≡ 1", or nullopt if no round ran.
struct ChainResult {
  TruncatedPoly last;
  std::optional<std::size_t> equiv_step;
};
ChainResult lemma4_chain(RoundWriter& w, const TruncatedPoly& g, std::size_t first, std::size_t torsion_step);

/// Throws InternalError unless the independent verifier accepts the log.
void require_verified(const DerivationLog& log);

}  // namespace nk1::detail
