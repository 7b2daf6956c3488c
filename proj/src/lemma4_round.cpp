#include "lemma4_round.hpp"

#include "nk1/series_lemmas.hpp"

namespace nk1::detail {

namespace {

std::string paren(const std::string& s) { return "(" + s + ")"; }

}  // namespace

RoundResult lemma4_round(RoundWriter& w, const TruncatedPoly& g, std::size_t r, std::size_t torsion_step) {
  const Ring base = g.base();
  const std::size_t d = g.order();
  const mpz_class big_k = [&] {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), w.k, r);
    return p;
  }();
  if (!big_k.fits_slong_p()) throw Error(ErrorKind::NotSupported, "k^r does not fit an exponent");
  const std::string K = big_k.get_str();
  const std::string& one = w.one;

  const std::string G = w.render(g);
  std::size_t s_torsion = torsion_step;
  if (r > 1) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), w.k, r - 1);
    s_torsion = w.push(Step::cong(congruence(paren(G) + "^" + K, one), "pow", {torsion_step}, m.get_str()));
  }

  const Lemma3Factor fac = lemma3_factor(g, r);
  const TruncatedPoly a = TruncatedPoly::one(base, d) + TruncatedPoly::monomial(fac.p0, r, d);
  const TruncatedPoly b = TruncatedPoly::one(base, d) + TruncatedPoly::monomial(base.one(), r + 1, d) * fac.q;
  const std::string A = w.render(a), B = w.render(b);
  const std::string AK = paren(A) + "^" + K;
  const std::string BmK = paren(B) + "^(-" + K + ")";

  const std::size_t s_factor = w.push(Step::exact(G, paren(A) + "*" + paren(B)));
  const TruncatedPoly ak = pow(a, big_k);
  const std::string Ak = w.render(ak);
  const std::size_t s_binom = w.push(Step::exact(AK, Ak));
  const std::size_t s_prod =
      w.push(Step::cong(congruence(AK + "*" + paren(B) + "^" + K, one), "rewrite", {s_torsion, s_factor}));
  const std::size_t s_split = w.push(Step::cong(congruence(AK, BmK), "mul-const", {s_prod}, BmK));
  const std::size_t s_expanded = w.push(Step::cong(congruence(Ak, BmK), "rewrite", {s_split, s_binom}));

  // L = 1 + K P0 u^r differs from A^K by terms of order >= 2r; C absorbs them.
  const TruncatedPoly l = TruncatedPoly::one(base, d) + TruncatedPoly::monomial(base.from_integer(big_k) * fac.p0, r, d);
  const TruncatedPoly c = l * trunc_inv(ak);
  const std::string L = w.render(l), C = w.render(c);
  const std::size_t s_linear = w.push(Step::exact(L, paren(Ak) + "*" + paren(C)));
  const std::size_t s_shift =
      w.push(Step::cong(congruence(paren(Ak) + "*" + paren(C), BmK + "*" + paren(C)), "mul-const", {s_expanded}, C));
  const TruncatedPoly b3 = pow(b, -big_k) * c;
  const std::string B3 = w.render(b3);
  const std::size_t s_b3 = w.push(Step::exact(BmK + "*" + paren(C), B3));
  const std::size_t s_l = w.push(Step::cong(congruence(L, B3), "rewrite", {s_shift, s_linear, s_b3}));

  const RingElem k_inv = ring_inv(base.from_integer(static_cast<unsigned long>(w.k)));
  const TruncatedPoly b4 = scale_x(b3, k_inv);
  const std::string B4 = w.render(b4);
  const std::size_t s_a = w.push(Step::cong(congruence(A, B4), "scale", {w.scale_down_axiom, s_l}));
  const std::size_t s_ab = w.push(
      Step::cong(congruence(paren(A) + "*" + paren(B), paren(B4) + "*" + paren(B)), "mul-const", {s_a}, B));
  const TruncatedPoly next = b4 * b;
  const std::string Next = w.render(next);
  const std::size_t s_next = w.push(Step::exact(paren(B4) + "*" + paren(B), Next));
  const std::size_t s_equiv = w.push(Step::cong(congruence(G, Next), "rewrite", {s_ab, s_factor, s_next}));

  const TruncatedPoly rest = next - TruncatedPoly::one(base, d);
  if (!rest.is_zero() && rest.valuation() <= static_cast<long>(r))
    throw Error(ErrorKind::InternalError, "round " + std::to_string(r) + " did not raise the order: " + Next);
  return {next, s_equiv};
}

std::size_t carry_torsion(RoundWriter& w, const std::string& g, const std::string& next, std::size_t equiv_step,
                          std::size_t torsion_step) {
  const std::string k = std::to_string(w.k);
  const std::size_t s_symm = w.push(Step::cong(congruence(next, g), "symm", {equiv_step}));
  const std::size_t s_pow =
      w.push(Step::cong(congruence(paren(next) + "^" + k, paren(g) + "^" + k), "pow", {s_symm}, k));
  return w.push(Step::cong(congruence(paren(next) + "^" + k, w.one), "trans", {s_pow, torsion_step}));
}

ChainResult lemma4_chain(RoundWriter& w, const TruncatedPoly& g, std::size_t first, std::size_t torsion_step) {
  const std::string start = w.render(g);
  TruncatedPoly cur = g;
  std::optional<std::size_t> chain;
  std::size_t torsion = torsion_step;
  for (std::size_t r = first; r <= g.order(); ++r) {
    RoundResult res = lemma4_round(w, cur, r, torsion);
    const std::string cur_text = w.render(cur), next_text = w.render(res.next);
    if (chain) {
      chain = w.push(Step::cong(congruence(start, next_text), "trans", {*chain, res.equiv_step}));
    } else {
      chain = res.equiv_step;
    }
    if (r < g.order()) torsion = carry_torsion(w, cur_text, next_text, res.equiv_step, torsion);
    cur = std::move(res.next);
  }
  if (!cur.is_one()) throw Error(ErrorKind::InternalError, "chain did not reach 1: " + w.render(cur));
  return {cur, chain};
}

void require_verified(const DerivationLog& log) {
  Verdict v = verify_derivation_log(log);
  if (!v.accepted)
    throw Error(ErrorKind::InternalError, "emitted log rejected at step " +
                                              (v.step ? std::to_string(*v.step) : std::string("-")) + ": " + v.reason +
                                              " (" + v.detail + ")");
}

}  // namespace nk1::detail
