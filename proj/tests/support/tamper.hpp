#pragma once

// Single-step mutations of a valid log, each of which makes the log invalid.

#include <string>
#include <utility>

#include "nk1/derivation.hpp"
#include "support/gen.hpp"

namespace nk1::testing {

inline std::pair<std::string, std::string> congruence_sides(const std::string& stmt) {
  const std::string eq = " ≡ ", mod = " (mod T)";
  const auto at = stmt.find(eq);
  return {stmt.substr(0, at), stmt.substr(at + eq.size(), stmt.size() - at - eq.size() - mod.size())};
}

/// 1 + X^t (series) or I + X^50 I (matrix): multiplying any group element
/// by it changes the value, as does adding X^t or X^50 I to anything.
inline std::string bump_factor(const LogContext& ctx) {
  return ctx.domain == "series" ? "1 + X^" + std::to_string(ctx.t) : "I + X^50*I";
}

inline std::string bump_term(const LogContext& ctx) {
  return ctx.domain == "series" ? "X^" + std::to_string(ctx.t) : "X^50*I";
}

/// Applies one random mutation; false when the picked mutation does not fit
/// the picked step.
///   0  perturb a side of an identity or the right side of a congruence
///   1  cite a step that does not precede
///   2  rename a rule or axiom
///   3  scale by 0 instead of k or k^-1
///   4  change the conclusion
///   5  perturb the left side of a derived congruence
inline bool tamper(DerivationLog& log, Gen& g) {
  const auto i = static_cast<std::size_t>(g.range(0, static_cast<long>(log.steps.size()) - 1));
  Step& s = log.steps[i];
  switch (g.range(0, 5)) {
    case 0:
      if (s.kind == StepKind::Exact) {
        s.rhs = "(" + s.rhs + ") + " + bump_term(log.context);
        return true;
      }
      if (s.kind == StepKind::Cong || s.kind == StepKind::Hypothesis) {
        auto [lhs, rhs] = congruence_sides(s.stmt);
        s.stmt = congruence(lhs, "(" + rhs + ")*(" + bump_factor(log.context) + ")");
        return true;
      }
      return false;
    case 1:
      if (s.kind != StepKind::Cong || s.cites.empty()) return false;
      s.cites[static_cast<std::size_t>(g.range(0, static_cast<long>(s.cites.size()) - 1))] =
          i + static_cast<std::size_t>(g.range(0, 3));
      return true;
    case 2:
      if (s.kind == StepKind::Cong) {
        s.rule += "-x";
        return true;
      }
      if (s.kind == StepKind::Axiom) {
        s.name += "-x";
        return true;
      }
      return false;
    case 3:
      if (s.kind != StepKind::Axiom || s.name != "endo-scale") return false;
      s = Step::axiom("endo-scale", scale_axiom_statement("0"), "0");
      return true;
    case 4:
      log.conclusion = "(" + log.conclusion + ")";
      return true;
    default:
      if (s.kind != StepKind::Cong) return false;
      auto [lhs, rhs] = congruence_sides(s.stmt);
      s.stmt = congruence("(" + lhs + ")*(" + bump_factor(log.context) + ")", rhs);
      return true;
  }
}

}  // namespace nk1::testing
