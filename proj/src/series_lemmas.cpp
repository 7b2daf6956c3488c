#include "nk1/series_lemmas.hpp"

#include "lemma4_round.hpp"

namespace nk1 {

namespace {

std::string render_series(const TruncatedPoly& p) { return p.to_string(); }

RingElem unit_k(const Ring& base, unsigned long k) {
  if (k == 0) throw Error(ErrorKind::NotAUnit, "k = 0");
  RingElem e = base.from_integer(k);
  if (!is_unit(e)) throw Error(ErrorKind::NotAUnit, "k = " + std::to_string(k) + " in " + base.to_string());
  return e;
}

}  // namespace

Lemma3Factor lemma3_factor(const TruncatedPoly& f, std::size_t r) {
  const std::size_t t = f.order();
  if (r == 0) throw Error(ErrorKind::PreconditionFailed, "r must be positive");
  if (r > t) throw Error(ErrorKind::TruncationTooSmall, "r = " + std::to_string(r) + " > t = " + std::to_string(t));
  if (!f.coeff(0).is_one()) throw Error(ErrorKind::BadShape, f.to_string() + " does not start with 1");
  for (std::size_t i = 1; i < r; ++i)
    if (!f.coeff(i).is_zero())
      throw Error(ErrorKind::BadShape, f.to_string() + " has a nonzero X^" + std::to_string(i) + " term");

  const Ring base = f.base();
  RingElem p0 = f.coeff(r);
  const TruncatedPoly a = TruncatedPoly::one(base, t) + TruncatedPoly::monomial(p0, r, t);
  // (1 + X^r P(0))^-1 = 1 - X^r P(0) + X^2r P(0)^2 - ...
  const TruncatedPoly b = trunc_inv(a) * f;
  std::vector<RingElem> q(t + 1, base.zero());
  for (std::size_t i = 1; i <= t; ++i) {
    if (i <= r) {
      if (!b.coeff(i).is_zero()) throw Error(ErrorKind::InternalError, "cofactor has a low-order term");
    } else {
      q[i - r - 1] = b.coeff(i);
    }
  }
  Lemma3Factor out{std::move(p0), TruncatedPoly::from_coeffs(base, t, q)};
  if (!(a * (TruncatedPoly::one(base, t) + TruncatedPoly::monomial(base.one(), r + 1, t) * out.q) == f))
    throw Error(ErrorKind::InternalError, "factorization does not multiply back");
  if (out.q.degree() >= static_cast<long>(t - r)) throw Error(ErrorKind::InternalError, "deg Q >= t - r");
  return out;
}

std::vector<RingElem> canonical_product(const SeriesUnit& f) {
  const Ring base = f.base();
  const std::size_t t = f.order();
  std::vector<RingElem> a;
  TruncatedPoly residual = f.poly();
  TruncatedPoly product = TruncatedPoly::one(base, t);
  for (std::size_t i = 1; i <= t; ++i) {
    a.push_back(residual.coeff(i));
    const TruncatedPoly factor = TruncatedPoly::one(base, t) + TruncatedPoly::monomial(a.back(), i, t);
    residual = residual * trunc_inv(factor);
    product = product * factor;
  }
  if (!(product == f.poly())) throw Error(ErrorKind::InternalError, "canonical product does not multiply back");
  return a;
}

Lemma4Result lemma4_step(const TruncatedPoly& f, std::size_t r, unsigned long k, const HypothesisToken& hyp) {
  const Ring base = f.base();
  const RingElem k_elem = unit_k(base, k);
  lemma3_factor(f, r);  // shape check

  const std::string F = f.to_string();
  const std::string torsion = congruence("(" + F + ")^" + std::to_string(k), "1");
  DerivationLog log;
  log.context.ring = base.to_string();
  log.context.domain = "series";
  log.context.t = f.order();
  log.context.k = std::to_string(k);

  detail::RoundWriter w{log.steps, render_series, "1", k, 0};
  std::size_t s_torsion = 0;
  if (hyp.trivial_subgroup) {
    if (!pow(f, static_cast<long long>(k)).is_one())
      throw Error(ErrorKind::PreconditionFailed, "(" + F + ")^" + std::to_string(k) + " != 1");
    log.context.subgroup = "trivial";
    const std::size_t s = w.push(Step::exact("(" + F + ")^" + std::to_string(k), "1"));
    s_torsion = w.push(Step::cong(torsion, "exact", {s}));
  } else {
    log.context.hypothesis = torsion;
    s_torsion = w.push(Step::hypothesis(hyp.label, torsion));
  }
  const std::string k_inv = ring_inv(k_elem).to_string();
  w.scale_down_axiom = w.push(Step::axiom("endo-scale", scale_axiom_statement(k_inv), k_inv));

  detail::RoundResult res = detail::lemma4_round(w, f, r, s_torsion);
  log.conclusion = log.steps.back().statement();
  detail::require_verified(log);

  const std::size_t t = f.order();
  std::vector<RingElem> q(t + 1, base.zero());
  for (std::size_t i = r + 1; i <= t; ++i) q[i - r - 1] = res.next.coeff(i);
  return {TruncatedPoly::from_coeffs(base, t, q), std::move(log)};
}

DerivationLog trivialize_k_torsion(const SeriesUnit& f, unsigned long k) {
  const Ring base = f.base();
  const RingElem k_elem = unit_k(base, k);
  const TruncatedPoly& g = f.poly();
  const std::string F = g.to_string();
  const std::string power = "(" + F + ")^" + std::to_string(k);
  if (!pow(g, static_cast<long long>(k)).is_one()) throw Error(ErrorKind::PreconditionFailed, power + " != 1");

  DerivationLog log;
  log.context.ring = base.to_string();
  log.context.domain = "series";
  log.context.t = f.order();
  log.context.k = std::to_string(k);
  log.context.subgroup = "trivial";

  detail::RoundWriter w{log.steps, render_series, "1", k, 0};
  const std::size_t s_exact = w.push(Step::exact(power, "1"));
  const std::size_t s_torsion = w.push(Step::cong(congruence(power, "1"), "exact", {s_exact}));
  const std::string k_inv = ring_inv(k_elem).to_string();
  w.scale_down_axiom = w.push(Step::axiom("endo-scale", scale_axiom_statement(k_inv), k_inv));

  detail::lemma4_chain(w, g, 1, s_torsion);
  w.push(Step::exact(F, "1"));
  log.conclusion = log.steps.back().statement();
  detail::require_verified(log);
  return log;
}

}  // namespace nk1
