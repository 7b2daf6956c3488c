#include <gtest/gtest.h>

#include "nk1/series_lemmas.hpp"
#include "nk1/theorem1.hpp"
#include "support/gen.hpp"
#include "support/tamper.hpp"

using namespace nk1;
using nk1::testing::Gen;

namespace {

// Every rule once, over Z/7 with k = 3 and t = 3.
DerivationLog small_log() {
  DerivationLog log;
  log.context.ring = "Z/7";
  log.context.t = 3;
  log.context.k = "3";
  log.context.hypothesis = congruence("(1 + X)^3", "1");
  auto& s = log.steps;
  s.push_back(Step::hypothesis("H", log.context.hypothesis));                                  // 0
  s.push_back(Step::cong(congruence("1", "(1 + X)^3"), "symm", {0}));                          // 1
  s.push_back(Step::cong(congruence("(1 + X)^6", "1"), "pow", {0}, "2"));                      // 2
  s.push_back(Step::cong(congruence("(1 + X)^(-3)", "1"), "inv", {0}));                        // 3
  s.push_back(Step::cong(congruence("(1 + X)^3*(1 + X)^3", "1*1"), "mul", {0, 0}));            // 4
  s.push_back(Step::cong(congruence("(1 + X)^3*(1 + X)", "1 + X"), "mul-const", {0}, "1 + X"));  // 5
  s.push_back(Step::cong(congruence("(1 + X)^3", "(1 + X)^3"), "trans", {0, 1}));              // 6
  s.push_back(Step::axiom("endo-scale", scale_axiom_statement("3"), "3"));                     // 7
  s.push_back(Step::cong(congruence("(1 + 3*X)^3", "1"), "scale", {7, 0}));                    // 8
  s.push_back(Step::exact("(1 + X)^3", "1 + 3*X + 3*X^2 + X^3"));                              // 9
  s.push_back(Step::cong(congruence("1 + 3*X + 3*X^2 + X^3", "1"), "rewrite", {0, 9}));        // 10
  s.push_back(Step::exact("(1 + X)*(1 - X + X^2 - X^3)", "1"));                                // 11
  s.push_back(Step::cong(congruence("(1 + X)*(1 - X + X^2 - X^3)", "1"), "exact", {11}));      // 12
  s.push_back(Step::axiom("subgroup", std::string(subgroup_axiom_statement)));                 // 13
  log.conclusion = s.back().statement();
  return log;
}

Verdict verify(const DerivationLog& log) { return verify_derivation_log(log); }

}  // namespace

TEST(Verifier, AcceptsEveryRule) {
  Verdict v = verify(small_log());
  EXPECT_TRUE(v.accepted) << (v.step ? *v.step : 99) << " " << v.reason << ": " << v.detail;
}

TEST(Verifier, TamperedIdentityFails) {
  DerivationLog log = small_log();
  log.steps[9].rhs += " + X^3";
  Verdict v = verify(log);
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.reason, "identity fails");
  EXPECT_EQ(v.step, 9u);
}

TEST(Verifier, LaterCitationFails) {
  DerivationLog log = small_log();
  log.steps[1].cites = {2};
  Verdict v = verify(log);
  EXPECT_EQ(v.reason, "bad citation");
  EXPECT_EQ(v.step, 1u);
  log = small_log();
  log.steps[12].cites = {10};  // not an identity
  EXPECT_EQ(verify(log).reason, "bad citation");
}

TEST(Verifier, UnknownRuleAndAxiom) {
  DerivationLog log = small_log();
  log.steps[1].rule = "magic";
  EXPECT_EQ(verify(log).reason, "unknown rule");
  log = small_log();
  log.steps[13].name = "frobenius";
  EXPECT_EQ(verify(log).reason, "unknown axiom");
  log = small_log();
  log.steps[7] = Step::axiom("endo-scale", scale_axiom_statement("2"), "2");
  EXPECT_EQ(verify(log).reason, "unknown axiom");
  // k^-1 = 5 in Z/7 is registered
  log.steps[7] = Step::axiom("endo-scale", scale_axiom_statement("5"), "5");
  log.steps[8].stmt = congruence("(1 + 5*X)^3", "1");
  EXPECT_TRUE(verify(log).accepted);
}

TEST(Verifier, RuleMismatch) {
  for (std::size_t i : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 10u, 12u}) {
    DerivationLog log = small_log();
    auto [a, b] = nk1::testing::congruence_sides(log.steps[i].stmt);
    log.steps[i].stmt = congruence(a, "(" + b + ")*(1 + X^2)");
    if (i == log.steps.size() - 1) log.conclusion = log.steps[i].stmt;
    Verdict v = verify(log);
    EXPECT_FALSE(v.accepted) << i;
    EXPECT_EQ(v.step, i);
  }
}

TEST(Verifier, ConclusionAndHypothesis) {
  DerivationLog log = small_log();
  log.conclusion = congruence("1", "1");
  EXPECT_EQ(verify(log).reason, "conclusion mismatch");

  log = small_log();
  log.steps[0].stmt = congruence("(1 + X)^3", "1 + X^3");
  EXPECT_EQ(verify(log).reason, "hypothesis mismatch");

  log = small_log();
  log.steps.push_back(log.steps[0]);
  log.conclusion = log.steps.back().statement();
  EXPECT_EQ(verify(log).reason, "hypothesis mismatch");

  log = small_log();
  log.context.hypothesis.clear();
  EXPECT_EQ(verify(log).reason, "hypothesis mismatch");
}

TEST(Verifier, MalformedInput) {
  DerivationLog log = small_log();
  log.steps[1].stmt = "1 = (1 + X)^3";
  EXPECT_EQ(verify(log).reason, "malformed statement");

  log = small_log();
  log.steps[1].stmt = congruence("X", "1");
  EXPECT_EQ(verify(log).reason, "not a group element");

  log = small_log();
  log.context.subgroup = "normal";
  EXPECT_EQ(verify(log).reason, "malformed context");

  log = small_log();
  log.context.ring = "Z/7[Y]";
  EXPECT_EQ(verify(log).reason, "malformed context");
}

TEST(LogJson, RoundTripAndDeterminism) {
  std::vector<DerivationLog> logs{small_log(), trivialize_k_torsion(SeriesUnit::one(Ring::modular(5), 3), 2),
                                  theorem1_derivation(PolyMatrix::parse(Ring::modular(9), "[[0, 1, 0],[0, 0, 1],[0, 0, 0]]"), 2)};
  for (const auto& log : logs) {
    const std::string text = log_to_json(log);
    DerivationLog back = log_from_json(text);
    EXPECT_EQ(log_to_json(back), text);
    EXPECT_TRUE(verify(back).accepted);
  }
  EXPECT_EQ(log_to_json(trivialize_k_torsion(SeriesUnit::one(Ring::modular(5), 3), 2)), log_to_json(logs[1]));
  EXPECT_THROW(log_from_json("{"), Error);
  EXPECT_THROW(log_from_json(R"({"schema": 2})"), Error);
}

TEST(CertJson, RoundTrip) {
  HigmanStep s = higman_linearize(PolyMatrix::parse(Ring::modular(5), "[[1 + X^3, X],[2, 1]]"));
  const std::string text = cert_to_json(s.cert);
  StableEquivCert back = cert_from_json(text);
  EXPECT_TRUE(back.holds());
  EXPECT_EQ(cert_to_json(back), text);
  EXPECT_THROW(cert_from_json("[]"), Error);
}

TEST(Verifier, RandomTampersAreRejected) {
  std::vector<DerivationLog> corpus{small_log(), trivialize_k_torsion(SeriesUnit::one(Ring::modular(5), 3), 2),
                                    theorem1_derivation(PolyMatrix::parse(Ring::modular(9), "[[0, 1, 0],[0, 0, 1],[0, 0, 0]]"), 2)};
  Gen g(61);
  for (int i = 0; i < 4; ++i) {
    corpus.push_back(lemma4_step(TruncatedPoly::one(Ring::modular(7), 4) + TruncatedPoly::monomial(Ring::modular(7).one(), 1, 4) *
                                                                                  g.truncated(Ring::modular(7), 4),
                                 1, 3)
                         .log);
    corpus.push_back(theorem1_derivation(g.strictly_upper(Ring::modular(5), 3), 2));
  }
  for (const auto& log : corpus) ASSERT_TRUE(verify(log).accepted);

  std::size_t tampers = 0, false_accepts = 0;
  while (tampers < 1200) {
    DerivationLog log = corpus[static_cast<std::size_t>(g.range(0, static_cast<long>(corpus.size()) - 1))];
    if (!nk1::testing::tamper(log, g)) continue;
    ++tampers;
    if (verify(log).accepted) ++false_accepts;
  }
  EXPECT_EQ(false_accepts, 0u);
}
