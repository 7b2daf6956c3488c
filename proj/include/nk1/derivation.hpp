#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nk1/higman.hpp"

namespace nk1 {

enum class StepKind { Exact, Hypothesis, Cong, Axiom };

/// One line of a proof log. Which fields are meaningful depends on the kind:
///   Exact       lhs, rhs            a ring or matrix identity
///   Hypothesis  label, stmt         an assumed congruence
///   Cong        stmt, rule, cites   a congruence derived by a registered rule
///               (+ arg for mul-const and pow)
///   Axiom       name, stmt, arg     from the whitelist (endo-scale, subgroup)
///
/// Congruences read "A ≡ B (mod T)". Cites are 0-based step indices.
struct Step {
  StepKind kind = StepKind::Exact;
  std::string lhs;
  std::string rhs;
  std::string label;
  std::string stmt;
  std::string rule;
  std::vector<std::size_t> cites;
  std::string name;
  std::string arg;

  static Step exact(std::string lhs, std::string rhs);
  static Step hypothesis(std::string label, std::string stmt);
  static Step cong(std::string stmt, std::string rule, std::vector<std::size_t> cites, std::string arg = {});
  static Step axiom(std::string name, std::string stmt, std::string arg = {});

  /// "lhs = rhs" for Exact, stmt otherwise.
  std::string statement() const;
};

/// Where the expressions of a log live.
///   domain "series": R_t with R = ring, variable X.
///   domain "matrix": size x size matrices over ring[X]; `symbols` binds
///   single letters (such as N) to matrix literals, I is the identity.
struct LogContext {
  std::string ring;
  std::string domain = "series";
  std::size_t t = 0;
  std::size_t size = 0;
  std::string k;  // positive integer, image in the ring
  std::map<std::string, std::string> symbols;
  std::string subgroup = "opaque";  // "trivial" when T = {1}
  std::string hypothesis;           // empty when the log assumes nothing
};

struct DerivationLog {
  LogContext context;
  std::vector<Step> steps;
  std::string conclusion;
};

struct Verdict {
  bool accepted = false;
  std::optional<std::size_t> step;  // failing step, if the failure is local
  std::string reason;
  std::string detail;
};

/// Replays a log by exact arithmetic. Every congruence side must be a group
/// element (a unit of R_t, or an invertible matrix).
///
/// Rules, with the statement checked by value against the premises:
///   exact [e]            A ≡ B from EXACT e: A = B
///   symm [c]             B ≡ A
///   trans [c1, c2]       A ≡ C from A ≡ B, B ≡ C
///   mul [c1, c2]         A1 A2 ≡ B1 B2
///   mul-const [c], F     A F ≡ B F
///   inv [c]              A^-1 ≡ B^-1
///   pow [c], m           A^m ≡ B^m
///   scale [a, c]         s(A) ≡ s(B) for the endo-scale axiom a, s: X -> cX
///   rewrite [c, e...]    A' ≡ B' with A' = A, B' = B, citing EXACT steps
Verdict verify_derivation_log(const DerivationLog& log);

std::string congruence(std::string_view a, std::string_view b);
std::string scale_axiom_statement(std::string_view factor);
inline constexpr std::string_view subgroup_axiom_statement = "T is a subgroup";

std::string log_to_json(const DerivationLog& log);
/// Throws ParseError on schema violations.
DerivationLog log_from_json(std::string_view text);

std::string cert_to_json(const StableEquivCert& cert);
StableEquivCert cert_from_json(std::string_view text);

}  // namespace nk1
