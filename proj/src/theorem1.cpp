#include "nk1/theorem1.hpp"

#include "lemma4_round.hpp"

namespace nk1 {

namespace {

// sum c_i u^i with u = N*X, e.g. "I + 3*(N*X)^2".
std::string render_in_nx(const TruncatedPoly& p) {
  std::string out;
  for (std::size_t i = 0; i <= p.order(); ++i) {
    const RingElem c = p.coeff(i);
    if (c.is_zero()) continue;
    std::string coeff = c.to_string();
    const bool negative = coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string unit = i == 0 ? "I" : i == 1 ? "(N*X)" : "(N*X)^" + std::to_string(i);
    out += coeff == "1" ? unit : coeff + "*" + unit;
  }
  return out.empty() ? "0" : out;
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

}  // namespace

DerivationLog theorem1_derivation(const PolyMatrix& n, unsigned long k, std::size_t bound_per_size) {
  const Ring& mring = n.ring();
  if (mring.variables().size() != 1)
    throw Error(ErrorKind::NotSupported, "coefficients must be a scalar ring, got " + mring.to_string());
  if (n.degree() > 0) throw Error(ErrorKind::PreconditionFailed, "N must not depend on X");
  const Ring base = mring.base();
  if (k == 0) throw Error(ErrorKind::NotAUnit, "k = 0");
  const RingElem k_elem = base.from_integer(k);
  const auto k_inv = try_inverse(k_elem);
  if (!k_inv) throw Error(ErrorKind::NotAUnit, "k = " + std::to_string(k) + " in " + base.to_string());
  const std::size_t m = nilpotency_index(n, bound_per_size);
  const std::size_t d = m - 1;

  const std::string ks = std::to_string(k);
  const std::string hyp = congruence("(I + N*X)^" + ks, "I");
  const std::string lk = "I + " + k_elem.to_string() + "*(N*X)";

  DerivationLog log;
  LogContext& ctx = log.context;
  ctx.ring = base.to_string();
  ctx.domain = "matrix";
  ctx.size = n.size();
  ctx.k = ks;
  ctx.symbols["N"] = n.to_string();
  ctx.subgroup = "opaque";
  ctx.hypothesis = hyp;

  detail::RoundWriter w{log.steps, render_in_nx, "I", k, 0};
  const std::size_t s_hyp = w.push(Step::hypothesis("H", hyp));
  const std::string k_text = k_elem.to_string(), k_inv_text = k_inv->to_string();
  const std::size_t s_up = w.push(Step::axiom("endo-scale", scale_axiom_statement(k_text), k_text));
  w.scale_down_axiom = w.push(Step::axiom("endo-scale", scale_axiom_statement(k_inv_text), k_inv_text));

  // (1 + u)^k = (1 + k u) g in R[u]/(u^m), g = 1 + u^2 (...)
  const TruncatedPoly u = TruncatedPoly::monomial(base.one(), 1, d);
  const TruncatedPoly one = TruncatedPoly::one(base, d);
  const TruncatedPoly g = pow(one + u, static_cast<long long>(k)) * trunc_inv(one + TruncatedPoly::monomial(k_elem, 1, d));
  const std::string G = render_in_nx(g);

  const std::size_t s_binom = w.push(Step::exact("(I + N*X)^" + ks, paren(lk) + "*" + paren(G)));
  const std::size_t s_prod = w.push(Step::cong(congruence(paren(lk) + "*" + paren(G), "I"), "rewrite", {s_hyp, s_binom}));
  const std::string lk_inv = paren(lk) + "^(-1)";
  const std::size_t s_g = w.push(Step::cong(congruence(G, lk_inv), "mul-const", {s_prod}, lk_inv));
  const std::size_t s_scaled = w.push(Step::cong(congruence(paren(lk) + "^" + ks, "I"), "scale", {s_up, s_hyp}));
  const std::size_t s_gk =
      w.push(Step::cong(congruence(paren(G) + "^" + ks, paren(lk) + "^(-" + ks + ")"), "pow", {s_g}, ks));
  const std::size_t s_lk =
      w.push(Step::cong(congruence(paren(lk) + "^(-" + ks + ")", "I"), "inv", {s_scaled}));
  const std::size_t s_torsion = w.push(Step::cong(congruence(paren(G) + "^" + ks, "I"), "trans", {s_gk, s_lk}));

  detail::ChainResult chain = detail::lemma4_chain(w, g, 2, s_torsion);
  std::size_t s_g_one = 0;
  if (chain.equiv_step) {
    s_g_one = *chain.equiv_step;
  } else {
    const std::size_t s = w.push(Step::exact(G, "I"));
    s_g_one = w.push(Step::cong(congruence(G, "I"), "exact", {s}));
  }

  const std::size_t s_flip = w.push(Step::cong(congruence(lk_inv, G), "symm", {s_g}));
  const std::size_t s_inv_one = w.push(Step::cong(congruence(lk_inv, "I"), "trans", {s_flip, s_g_one}));
  const std::size_t s_lk_one = w.push(Step::cong(congruence(lk, "I"), "inv", {s_inv_one}));
  w.push(Step::cong(theorem1_conclusion, "scale", {w.scale_down_axiom, s_lk_one}));
  log.conclusion = theorem1_conclusion;
  detail::require_verified(log);
  return log;
}

}  // namespace nk1
