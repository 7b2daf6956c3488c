// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "nk1/graded.hpp"
#include "nk1/series_lemmas.hpp"
#include "nk1/theorem1.hpp"
#include "support/gen.hpp"
#include "support/tamper.hpp"

using namespace nk1;
using nk1::testing::Gen;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Counts passing instances; the first failure is kept for the report.
struct Tally {
  std::size_t passed = 0, total = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++total;
    if (ok) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = what;
    }
  }
  Outcome outcome(const std::string& unit) const {
    std::string d = std::to_string(passed) + "/" + std::to_string(total) + " " + unit;
    if (!first_failure.empty()) d += "; first failure: " + first_failure;
    return {passed == total && total > 0, d};
  }
};

TruncatedPoly shifted(const TruncatedPoly& q, std::size_t by) {
  return TruncatedPoly::monomial(q.base().one(), by, q.order()) * q;
}

Outcome lemma3_identities() {
  Gen g(1001);
  const std::vector<Ring> rings{Ring::integers(), Ring::modular(4), Ring::modular(6), Ring::modular(9),
                                Ring::rationals()};
  Tally tally;
  for (int i = 0; i < 500; ++i) {
    const Ring& base = rings[static_cast<std::size_t>(g.range(0, 4))];
    const auto t = static_cast<std::size_t>(g.range(2, 10));
    const auto r = static_cast<std::size_t>(g.range(1, std::min<long>(4, static_cast<long>(t))));
    const TruncatedPoly f = TruncatedPoly::one(base, t) + shifted(g.truncated(base, t), r);
    const Lemma3Factor fac = lemma3_factor(f, r);
    const TruncatedPoly lead = TruncatedPoly::one(base, t) + TruncatedPoly::monomial(f.coeff(r), r, t);
    const TruncatedPoly tail = TruncatedPoly::one(base, t) + shifted(fac.q, r + 1);
    tally.check(fac.p0 == f.coeff(r) && lead * tail == f && fac.q.degree() < static_cast<long>(t - r), f.to_string());
  }
  return tally.outcome("identities");
}

Outcome witt_axioms() {
  Gen g(1002);
  Tally tally;
  for (const Ring& base : {Ring::modular(12), Ring::rationals()}) {
    for (int i = 0; i < 200; ++i) {
      const auto t = static_cast<std::size_t>(g.range(1, 10));
      const WittVector u = g.witt(base, t), v = g.witt(base, t), w = g.witt(base, t);
      const WittVector one = WittVector::one(base, t);
      const bool ok = witt_add(witt_add(u, v), w) == witt_add(u, witt_add(v, w)) && witt_add(u, v) == witt_add(v, u) &&
                      witt_mul(witt_mul(u, v), w) == witt_mul(u, witt_mul(v, w)) && witt_mul(u, v) == witt_mul(v, u) &&
                      witt_mul(u, witt_add(v, w)) == witt_add(witt_mul(u, v), witt_mul(u, w)) &&
                      witt_mul(u, one) == u && witt_add(u, witt_neg(u)) == WittVector::zero(base, t);
      tally.check(ok, base.to_string() + " " + u.to_string());
    }
  }
  return tally.outcome("triples");
}

Outcome ghost_homomorphism() {
  Gen g(1003);
  Tally tally;
  for (const Ring& base : {Ring::integers(), Ring::rationals()}) {
    for (int i = 0; i < 100; ++i) {
      const auto t = static_cast<std::size_t>(g.range(1, 12));
      const WittVector u = g.witt(base, t), v = g.witt(base, t);
      const auto gu = ghost(witt_series(u)), gv = ghost(witt_series(v));
      const auto gs = ghost(witt_series(witt_add(u, v))), gp = ghost(witt_series(witt_mul(u, v)));
      bool ok = true;
      for (std::size_t n = 0; n < t; ++n) ok = ok && gs[n] == gu[n] + gv[n] && gp[n] == gu[n] * gv[n];
      tally.check(ok, u.to_string() + ", " + v.to_string());
    }
  }
  return tally.outcome("pairs");
}

Outcome coordinate_uniqueness() {
  const Ring r = Ring::modular(3);
  std::set<std::string> seen;
  Tally tally;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const WittVector w(r, {r.from_integer(a), r.from_integer(b), r.from_integer(c)});
        const SeriesUnit f = witt_series(w);
        seen.insert(f.poly().to_string());
        tally.check(witt_coords(f) == w, w.to_string());
      }
  Gen g(1004);
  for (int i = 0; i < 100; ++i) {
    const SeriesUnit f = g.series(r, 3);
    tally.check(witt_series(witt_coords(f)) == f, f.poly().to_string());
  }
  Outcome out = tally.outcome("round trips");
  out.detail = std::to_string(seen.size()) + " distinct series of 27, " + out.detail;
  out.ok = out.ok && seen.size() == 27;
  return out;
}

// I + sum of letters with lambda in X R[X]: a(0) = I, total degree <= 4.
std::pair<PolyMatrix, PolyMatrix> unipotent_sample(Gen& g, const Ring& coeff, std::size_t n) {
  const Ring mr = matrix_ring(coeff);
  const RingElem x = mr.variable("X");
  ElemWord w(n);
  for (int l = 0; l < 2 && n > 1; ++l) {
    const auto i = static_cast<std::size_t>(g.range(0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(g.range(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    w.push(i, j, x * g.poly_x(mr, 1));
  }
  return {word_product(w, mr), word_product(w.inverse(), mr)};
}

Outcome higman_certificates() {
  Gen g(1005);
  const std::vector<Ring> rings{Ring::modular(5), Ring::modular(6), Ring::integers()};
  Tally tally;
  for (int i = 0; i < 200; ++i) {
    const Ring& coeff = rings[static_cast<std::size_t>(i) % rings.size()];
    const auto n = static_cast<std::size_t>(g.range(1, 3));
    if (i % 2 == 0) {
      const PolyMatrix a = g.matrix(coeff, n, static_cast<unsigned>(g.range(0, 4)));
      const HigmanStep s = higman_linearize(a);
      tally.check(s.cert.holds() && s.reduced.degree() <= 1 && s.cert.source == a && s.cert.target == s.reduced,
                  a.to_string());
    } else {
      const auto [a, a_inv] = unipotent_sample(g, coeff, n);
      const UnipotentForm f = unipotent_normalize(a, a_inv);
      const PolyMatrix linear = PolyMatrix::identity(a.ring(), f.n.size()) + a.ring().variable("X") * f.n;
      const bool nilpotent = pow(f.n, static_cast<long long>(f.nilpotency_index)).is_zero();
      tally.check(f.cert.holds() && f.cert.target == linear && nilpotent && f.n.degree() <= 0, a.to_string());
    }
  }
  return tally.outcome("certificates replayed");
}

Outcome whitehead_words() {
  Gen g(1006);
  Tally tally;
  for (int i = 0; i < 100; ++i) {
    const Ring coeff = i % 2 == 0 ? Ring::modular(5) : Ring::modular(7);
    const Ring mr = matrix_ring(coeff);
    const auto n = static_cast<std::size_t>(g.range(1, 3));
    PolyMatrix d = PolyMatrix::identity(mr, n);
    d(0, 0) = mr.from_integer(g.range(1, coeff.modulus().get_si() - 1));
    const PolyMatrix a = d * word_product(g.word(coeff, n, 6, static_cast<unsigned>(g.range(0, 1))), mr);
    const PolyMatrix a_inv = inverse(a);
    tally.check(word_product(whitehead_word(a, a_inv), mr) == block_sum(a, a_inv), a.to_string());
  }
  return tally.outcome("words");
}

Outcome theorem1_engine() {
  Gen g(1007);
  const std::vector<std::pair<Ring, unsigned long>> cases{
      {Ring::modular(5), 2}, {Ring::modular(5), 3}, {Ring::modular(9), 2}};
  Tally tally;
  for (const auto& [coeff, k] : cases)
    for (std::size_t n = 2; n <= 4; ++n)
      for (int i = 0; i < 5; ++i) {
        const PolyMatrix nm = g.strictly_upper(coeff, n);
        const DerivationLog log = theorem1_derivation(nm, k);
        const Verdict v = verify_derivation_log(log);

        MatrixEnv env{matrix_ring(coeff), n, {{'N', nm}}};
        bool exact_ok = true;
        std::size_t hyps = 0;
        for (const auto& s : log.steps) {
          if (s.kind == StepKind::Exact)
            exact_ok = exact_ok && eval_as_matrix(parse_expr(s.lhs), env) == eval_as_matrix(parse_expr(s.rhs), env);
          if (s.kind == StepKind::Hypothesis) hyps += s.stmt == log.context.hypothesis;
        }
        tally.check(v.accepted && exact_ok && hyps == 1 && log.conclusion == theorem1_conclusion,
                    nm.to_string() + " k=" + std::to_string(k) + (v.accepted ? "" : ": " + v.reason));
      }
  return tally.outcome("logs accepted");
}

Outcome no_torsion_oracle() {
  const Ring r = Ring::modular(5);
  std::size_t scanned = 0, torsion = 0;
  bool only_identity = true, trivialized = true;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c) {
        const TruncatedPoly f = TruncatedPoly::from_coeffs(
            r, 3, {r.one(), r.from_integer(a), r.from_integer(b), r.from_integer(c)});
        ++scanned;
        if (!(f * f).is_one()) continue;
        ++torsion;
        only_identity = only_identity && f.is_one();
        trivialized = trivialized && verify_derivation_log(trivialize_k_torsion(SeriesUnit(f), 2)).accepted;
      }

  const Ring z8 = Ring::modular(8);
  const TruncatedPoly h = TruncatedPoly::parse(z8, 3, "1 + 4*X");
  const bool control_torsion = (h * h).is_one() && !h.is_one();
  std::string refusal = "accepted";
  try {
    trivialize_k_torsion(SeriesUnit(h), 2);
  } catch (const Error& e) {
    refusal = std::string(error_name(e.kind()));
  }
  const bool ok = scanned == 125 && torsion == 1 && only_identity && trivialized && control_torsion &&
                  refusal == "NotAUnit";
  return {ok, std::to_string(scanned) + " scanned, " + std::to_string(torsion) +
                  " with f^2 = 1; Z/8 control 1 + 4X: f^2 = 1 " + (control_torsion ? "holds" : "fails") +
                  ", engine " + refusal};
}

Outcome theta_homomorphism() {
  Gen g(1009);
  const Ring r = Ring::parse("Z/7[Y]");
  const Ring tr = theta_ring(r);
  auto theta = [](const RingElem& e) { return swan_weibel_theta(GradedElem::decompose(e)); };
  Tally tally;
  for (int i = 0; i < 100; ++i) {
    const RingElem a = g.element(r), b = g.element(r);
    const bool ok = theta(a + b) == theta(a) + theta(b) && theta(a * b) == theta(a) * theta(b) &&
                    evaluate_variable(theta(a), "X", tr.base().one()) == change_ring(a, tr);
    tally.check(ok, a.to_string() + ", " + b.to_string());
  }
  return tally.outcome("pairs");
}

Outcome mennicke_fixture_checks() {
  Tally tally;
  for (const Ring& r : {Ring::integers(), Ring::rationals(), Ring::modular(2)}) {
    const PolyMatrix a = mennicke_fixture(r);
    const bool ok = determinant(a).is_one() && entries_have_even_degree(a) &&
                    (a * mennicke_fixture_inverse(r)).is_identity();
    tally.check(ok, r.to_string());
  }
  return tally.outcome("rings");
}

Outcome verifier_fuzz() {
  Gen g(1011);
  std::vector<DerivationLog> corpus{
      trivialize_k_torsion(SeriesUnit::one(Ring::modular(5), 3), 2),
      trivialize_k_torsion(SeriesUnit::one(Ring::modular(7), 4), 3),
      theorem1_derivation(PolyMatrix::parse(Ring::modular(9), "[[0, 1, 0],[0, 0, 1],[0, 0, 0]]"), 2)};
  for (int i = 0; i < 4; ++i) {
    const Ring z7 = Ring::modular(7);
    const TruncatedPoly f = TruncatedPoly::one(z7, 4) + shifted(g.truncated(z7, 4), 1);
    corpus.push_back(lemma4_step(f, 1, 3).log);
    corpus.push_back(theorem1_derivation(g.strictly_upper(Ring::modular(5), 3), 3));
  }
  for (const auto& log : corpus)
    if (!verify_derivation_log(log).accepted) return {false, "an untampered log was rejected"};

  std::size_t tampers = 0, false_accepts = 0;
  while (tampers < 1000) {
    DerivationLog log = corpus[static_cast<std::size_t>(g.range(0, static_cast<long>(corpus.size()) - 1))];
    if (!nk1::testing::tamper(log, g)) continue;
    ++tampers;
    false_accepts += verify_derivation_log(log).accepted;
  }
  return {false_accepts == 0, std::to_string(tampers) + " tampers, " + std::to_string(false_accepts) + " false accepts"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double limit_seconds;  // 0: no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "lemma3 factorization", lemma3_identities, 5},
      {2, "witt ring axioms", witt_axioms, 10},
      {3, "ghost homomorphism", ghost_homomorphism, 0},
      {4, "witt coordinate uniqueness", coordinate_uniqueness, 0},
      {5, "higman certificates", higman_certificates, 0},
      {6, "whitehead words", whitehead_words, 0},
      {7, "theorem1 engine", theorem1_engine, 10},
      {8, "no k-torsion oracle", no_torsion_oracle, 0},
      {9, "theta homomorphism", theta_homomorphism, 0},
      {10, "mennicke fixture", mennicke_fixture_checks, 0},
      {11, "verifier tamper fuzz", verifier_fuzz, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = std::to_string(secs).substr(0, std::to_string(secs).find('.') + 3) + " s";
    if (c.limit_seconds > 0) {
      timing += " (limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s)";
      if (secs >= c.limit_seconds) o.ok = false;
    }
    failures += !o.ok;
    std::printf("%s  %2d  %-28s %s, %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
