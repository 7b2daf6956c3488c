#include "nk1/derivation.hpp"

#include <json.hpp>

#include <variant>

#include "nk1/expr.hpp"
#include "nk1/truncated.hpp"

namespace nk1 {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kEquiv = " ≡ ";
constexpr std::string_view kModT = " (mod T)";

struct Congruence {
  std::string lhs;
  std::string rhs;
};

std::optional<Congruence> parse_congruence(std::string_view s) {
  if (s.size() <= kModT.size() || s.substr(s.size() - kModT.size()) != kModT) return std::nullopt;
  s.remove_suffix(kModT.size());
  const auto p = s.find(kEquiv);
  if (p == std::string_view::npos || s.find(kEquiv, p + 1) != std::string_view::npos) return std::nullopt;
  Congruence c{std::string(s.substr(0, p)), std::string(s.substr(p + kEquiv.size()))};
  if (c.lhs.empty() || c.rhs.empty()) return std::nullopt;
  return c;
}

struct Rejection {
  std::string reason;
  std::string detail;
};

[[noreturn]] void reject(std::string reason, std::string detail = {}) {
  throw Rejection{std::move(reason), std::move(detail)};
}

using Value = std::variant<PolyMatrix, TruncatedPoly>;

// Evaluation of expressions in the context's domain, memoized by text.
class Domain {
 public:
  explicit Domain(const LogContext& ctx) : base_(Ring::parse(ctx.ring)) {
    if (ctx.domain == "series") {
      series_ = true;
      if (!base_.is_scalar()) throw Error(ErrorKind::ParseError, "series logs need a scalar ring");
      if (!ctx.symbols.empty()) throw Error(ErrorKind::ParseError, "series logs take no symbols");
      series_ring_ = Ring::truncated(base_, ctx.t);
    } else if (ctx.domain == "matrix") {
      if (ctx.size == 0) throw Error(ErrorKind::ParseError, "matrix logs need size >= 1");
      env_ = MatrixEnv{matrix_ring(base_), ctx.size, {}};
      for (const auto& [name, text] : ctx.symbols) {
        if (name.size() != 1 || name == "I" || env_.ring.variable_index(name))
          throw Error(ErrorKind::ParseError, "bad symbol name '" + name + "'");
        PolyMatrix m = PolyMatrix::parse(base_, text);
        if (m.size() != ctx.size) throw Error(ErrorKind::SizeMismatch, "symbol " + name + " has the wrong size");
        env_.symbols.emplace(name[0], std::move(m));
      }
    } else {
      throw Error(ErrorKind::ParseError, "unknown domain '" + ctx.domain + "'");
    }
    mpz_class k;
    if (ctx.k.empty() || k.set_str(ctx.k, 10) != 0 || k <= 0)
      throw Error(ErrorKind::ParseError, "k must be a positive integer, got '" + ctx.k + "'");
    k_ = base_.from_integer(k);
    k_inv_ = try_inverse(k_);
  }

  const Value& eval(const std::string& text) {
    auto it = cache_.find(text);
    if (it != cache_.end()) return it->second;
    Expr e = parse_expr(text);
    Value v = series_ ? Value(TruncatedPoly(eval_scalar(e, series_ring_))) : Value(eval_as_matrix(e, env_));
    return cache_.emplace(text, std::move(v)).first->second;
  }

  bool is_group_element(const std::string& text) {
    auto it = units_.find(text);
    if (it != units_.end()) return it->second;
    const Value& v = eval(text);
    bool unit = series_ ? is_unit(std::get<TruncatedPoly>(v).coeff(0))
                        : try_inverse(std::get<PolyMatrix>(v)).has_value();
    units_.emplace(text, unit);
    return unit;
  }

  Value mul(const Value& a, const Value& b) const {
    if (series_) return std::get<TruncatedPoly>(a) * std::get<TruncatedPoly>(b);
    return std::get<PolyMatrix>(a) * std::get<PolyMatrix>(b);
  }

  Value inverse(const Value& a) const {
    if (series_) return trunc_inv(std::get<TruncatedPoly>(a));
    return nk1::inverse(std::get<PolyMatrix>(a));
  }

  Value power(const Value& a, long long m) const {
    if (series_) return pow(std::get<TruncatedPoly>(a), m);
    return pow(std::get<PolyMatrix>(a), m);
  }

  Value scale(const Value& a, const RingElem& c) const {
    if (series_) return scale_x(std::get<TruncatedPoly>(a), c);
    return scale_x(std::get<PolyMatrix>(a), c);
  }

  RingElem scalar(const std::string& text) const { return parse_element(base_, text); }
  const RingElem& k() const { return k_; }
  const std::optional<RingElem>& k_inv() const { return k_inv_; }

 private:
  Ring base_;
  bool series_ = false;
  Ring series_ring_;
  MatrixEnv env_;
  RingElem k_;
  std::optional<RingElem> k_inv_;
  std::map<std::string, Value> cache_;
  std::map<std::string, bool> units_;
};

class Checker {
 public:
  Checker(const DerivationLog& log, Domain& dom) : log_(log), dom_(dom), congs_(log.steps.size()) {}

  void check(std::size_t i) {
    const Step& s = log_.steps[i];
    switch (s.kind) {
      case StepKind::Exact:
        if (!(dom_.eval(s.lhs) == dom_.eval(s.rhs))) reject("identity fails", s.lhs + " = " + s.rhs);
        return;
      case StepKind::Hypothesis:
        congs_[i] = congruence_of(s.stmt);
        if (log_.context.hypothesis.empty() || s.stmt != log_.context.hypothesis)
          reject("hypothesis mismatch", s.stmt);
        if (++hypotheses_ > 1) reject("hypothesis mismatch", "hypothesis introduced twice");
        return;
      case StepKind::Axiom:
        check_axiom(s);
        return;
      case StepKind::Cong:
        congs_[i] = congruence_of(s.stmt);
        check_rule(i, s, *congs_[i]);
        return;
    }
    reject("malformed statement", "unknown step kind");
  }

  std::size_t hypotheses() const { return hypotheses_; }

 private:
  Congruence congruence_of(const std::string& stmt) {
    auto c = parse_congruence(stmt);
    if (!c) reject("malformed statement", stmt);
    if (!dom_.is_group_element(c->lhs)) reject("not a group element", c->lhs);
    if (!dom_.is_group_element(c->rhs)) reject("not a group element", c->rhs);
    return *c;
  }

  void check_axiom(const Step& s) {
    if (s.name == "endo-scale") {
      if (s.stmt != scale_axiom_statement(s.arg)) reject("malformed statement", s.stmt);
      RingElem c = dom_.scalar(s.arg);
      if (!(c == dom_.k() || (dom_.k_inv() && c == *dom_.k_inv())))
        reject("unknown axiom", "scaling by " + s.arg + " is not registered");
      return;
    }
    if (s.name == "subgroup") {
      if (s.stmt != subgroup_axiom_statement) reject("malformed statement", s.stmt);
      return;
    }
    reject("unknown axiom", s.name);
  }

  const Step& cited(std::size_t i, std::size_t c) const {
    if (c >= i) reject("bad citation", "step " + std::to_string(c) + " does not precede step " + std::to_string(i));
    return log_.steps[c];
  }

  const Congruence& cited_congruence(std::size_t i, std::size_t c) const {
    const Step& s = cited(i, c);
    if (s.kind != StepKind::Cong && s.kind != StepKind::Hypothesis)
      reject("bad citation", "step " + std::to_string(c) + " is not a congruence");
    return *congs_[c];
  }

  const Step& cited_exact(std::size_t i, std::size_t c) const {
    const Step& s = cited(i, c);
    if (s.kind != StepKind::Exact) reject("bad citation", "step " + std::to_string(c) + " is not an identity");
    return s;
  }

  void arity(const Step& s, std::size_t n, bool at_least = false) const {
    if (at_least ? s.cites.size() < n : s.cites.size() != n)
      reject("bad citation", "rule " + s.rule + " cites " + std::to_string(s.cites.size()) + " steps");
  }

  long long integer_arg(const Step& s) const {
    mpz_class m;
    if (s.arg.empty() || m.set_str(s.arg, 10) != 0 || !m.fits_slong_p()) reject("malformed statement", "bad exponent");
    return m.get_si();
  }

  void expect(const Congruence& c, const Value& lhs, const Value& rhs) {
    if (!(dom_.eval(c.lhs) == lhs) || !(dom_.eval(c.rhs) == rhs))
      reject("rule mismatch", c.lhs + " ≡ " + c.rhs);
  }

  void check_rule(std::size_t i, const Step& s, const Congruence& c) {
    const std::string& r = s.rule;
    if (r == "exact") {
      arity(s, 1);
      const Step& e = cited_exact(i, s.cites[0]);
      expect(c, dom_.eval(e.lhs), dom_.eval(e.rhs));
    } else if (r == "symm") {
      arity(s, 1);
      const Congruence& p = cited_congruence(i, s.cites[0]);
      expect(c, dom_.eval(p.rhs), dom_.eval(p.lhs));
    } else if (r == "trans") {
      arity(s, 2);
      const Congruence& p = cited_congruence(i, s.cites[0]);
      const Congruence& q = cited_congruence(i, s.cites[1]);
      if (!(dom_.eval(p.rhs) == dom_.eval(q.lhs))) reject("rule mismatch", "middle terms differ");
      expect(c, dom_.eval(p.lhs), dom_.eval(q.rhs));
    } else if (r == "mul") {
      arity(s, 2);
      const Congruence& p = cited_congruence(i, s.cites[0]);
      const Congruence& q = cited_congruence(i, s.cites[1]);
      expect(c, dom_.mul(dom_.eval(p.lhs), dom_.eval(q.lhs)), dom_.mul(dom_.eval(p.rhs), dom_.eval(q.rhs)));
    } else if (r == "mul-const") {
      arity(s, 1);
      const Congruence& p = cited_congruence(i, s.cites[0]);
      if (s.arg.empty()) reject("malformed statement", "missing factor");
      if (!dom_.is_group_element(s.arg)) reject("not a group element", s.arg);
      const Value& f = dom_.eval(s.arg);
      expect(c, dom_.mul(dom_.eval(p.lhs), f), dom_.mul(dom_.eval(p.rhs), f));
    } else if (r == "inv") {
      arity(s, 1);
      const Congruence& p = cited_congruence(i, s.cites[0]);
      expect(c, dom_.inverse(dom_.eval(p.lhs)), dom_.inverse(dom_.eval(p.rhs)));
    } else if (r == "pow") {
      arity(s, 1);
      const Congruence& p = cited_congruence(i, s.cites[0]);
      const long long m = integer_arg(s);
      expect(c, dom_.power(dom_.eval(p.lhs), m), dom_.power(dom_.eval(p.rhs), m));
    } else if (r == "scale") {
      arity(s, 2);
      const Step& a = cited(i, s.cites[0]);
      if (a.kind != StepKind::Axiom || a.name != "endo-scale")
        reject("bad citation", "step " + std::to_string(s.cites[0]) + " is not a scaling axiom");
      const Congruence& p = cited_congruence(i, s.cites[1]);
      const RingElem f = dom_.scalar(a.arg);
      expect(c, dom_.scale(dom_.eval(p.lhs), f), dom_.scale(dom_.eval(p.rhs), f));
    } else if (r == "rewrite") {
      arity(s, 1, true);
      const Congruence& p = cited_congruence(i, s.cites[0]);
      for (std::size_t j = 1; j < s.cites.size(); ++j) cited_exact(i, s.cites[j]);
      expect(c, dom_.eval(p.lhs), dom_.eval(p.rhs));
    } else {
      reject("unknown rule", r);
    }
  }

  const DerivationLog& log_;
  Domain& dom_;
  std::vector<std::optional<Congruence>> congs_;
  std::size_t hypotheses_ = 0;
};

Verdict rejected(std::optional<std::size_t> step, std::string reason, std::string detail) {
  return Verdict{false, step, std::move(reason), std::move(detail)};
}

std::string_view kind_name(StepKind k) {
  switch (k) {
    case StepKind::Exact: return "EXACT";
    case StepKind::Hypothesis: return "HYPOTHESIS";
    case StepKind::Cong: return "CONG";
    case StepKind::Axiom: return "AXIOM";
  }
  return "?";
}

StepKind kind_from_name(const std::string& s) {
  if (s == "EXACT") return StepKind::Exact;
  if (s == "HYPOTHESIS") return StepKind::Hypothesis;
  if (s == "CONG") return StepKind::Cong;
  if (s == "AXIOM") return StepKind::Axiom;
  throw Error(ErrorKind::ParseError, "unknown step kind '" + s + "'");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

json word_to_json(const ElemWord& w) {
  json out = json::array();
  for (const auto& l : w.letters())
    out.push_back({{"i", l.row + 1}, {"j", l.col + 1}, {"lambda", l.lambda.to_string()}});
  return out;
}

ElemWord word_from_json(const json& j, const Ring& ring, std::size_t size) {
  ElemWord w(size);
  for (const auto& l : j) {
    const auto i = l.at("i").get<std::size_t>();
    const auto c = l.at("j").get<std::size_t>();
    if (i == 0 || c == 0) throw Error(ErrorKind::ParseError, "transvection indices are 1-based");
    w.push(i - 1, c - 1, parse_element(ring, l.at("lambda").get<std::string>()));
  }
  return w;
}

}  // namespace

Step Step::exact(std::string lhs, std::string rhs) {
  Step s;
  s.kind = StepKind::Exact;
  s.lhs = std::move(lhs);
  s.rhs = std::move(rhs);
  return s;
}

Step Step::hypothesis(std::string label, std::string stmt) {
  Step s;
  s.kind = StepKind::Hypothesis;
  s.label = std::move(label);
  s.stmt = std::move(stmt);
  return s;
}

Step Step::cong(std::string stmt, std::string rule, std::vector<std::size_t> cites, std::string arg) {
  Step s;
  s.kind = StepKind::Cong;
  s.stmt = std::move(stmt);
  s.rule = std::move(rule);
  s.cites = std::move(cites);
  s.arg = std::move(arg);
  return s;
}

Step Step::axiom(std::string name, std::string stmt, std::string arg) {
  Step s;
  s.kind = StepKind::Axiom;
  s.name = std::move(name);
  s.stmt = std::move(stmt);
  s.arg = std::move(arg);
  return s;
}

std::string Step::statement() const { return kind == StepKind::Exact ? lhs + " = " + rhs : stmt; }

std::string congruence(std::string_view a, std::string_view b) {
  std::string s(a);
  s += kEquiv;
  s += b;
  s += kModT;
  return s;
}

std::string scale_axiom_statement(std::string_view factor) {
  return "X -> " + std::string(factor) + "*X preserves T";
}

Verdict verify_derivation_log(const DerivationLog& log) {
  const LogContext& ctx = log.context;
  if (ctx.subgroup != "opaque" && ctx.subgroup != "trivial")
    return rejected(std::nullopt, "malformed context", "subgroup '" + ctx.subgroup + "'");
  if (!ctx.hypothesis.empty() && !parse_congruence(ctx.hypothesis))
    return rejected(std::nullopt, "malformed context", "hypothesis is not a congruence");
  std::optional<Domain> dom;
  try {
    dom.emplace(ctx);
  } catch (const Error& e) {
    return rejected(std::nullopt, "malformed context", e.what());
  }

  Checker checker(log, *dom);
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    try {
      checker.check(i);
    } catch (const Rejection& r) {
      return rejected(i, r.reason, r.detail);
    } catch (const Error& e) {
      return rejected(i, e.kind() == ErrorKind::NotAUnit ? "not a group element" : "malformed statement", e.what());
    }
  }
  if (!ctx.hypothesis.empty() && checker.hypotheses() != 1)
    return rejected(std::nullopt, "hypothesis mismatch", "the hypothesis is never introduced");
  if (log.steps.empty() || log.conclusion != log.steps.back().statement())
    return rejected(std::nullopt, "conclusion mismatch", log.conclusion);
  return Verdict{true, std::nullopt, {}, {}};
}

std::string log_to_json(const DerivationLog& log) {
  const LogContext& c = log.context;
  json ctx = {{"ring", c.ring}, {"domain", c.domain}};
  if (c.domain == "series") ctx["t"] = c.t;
  if (c.domain == "matrix") ctx["size"] = c.size;
  ctx["k"] = c.k;
  if (!c.symbols.empty()) ctx["symbols"] = c.symbols;
  ctx["subgroup"] = c.subgroup;
  ctx["hypothesis"] = c.hypothesis;

  json steps = json::array();
  for (const Step& s : log.steps) {
    json j = {{"kind", kind_name(s.kind)}};
    switch (s.kind) {
      case StepKind::Exact:
        j["lhs"] = s.lhs;
        j["rhs"] = s.rhs;
        break;
      case StepKind::Hypothesis:
        j["label"] = s.label;
        j["stmt"] = s.stmt;
        break;
      case StepKind::Cong:
        j["stmt"] = s.stmt;
        j["rule"] = s.rule;
        j["cites"] = s.cites;
        if (!s.arg.empty()) j["arg"] = s.arg;
        break;
      case StepKind::Axiom:
        j["name"] = s.name;
        j["stmt"] = s.stmt;
        if (!s.arg.empty()) j["arg"] = s.arg;
        break;
    }
    steps.push_back(std::move(j));
  }
  json out = {{"schema", 1}, {"context", std::move(ctx)}, {"steps", std::move(steps)}, {"conclusion", log.conclusion}};
  return out.dump(2);
}

DerivationLog log_from_json(std::string_view text) {
  const json j = parse_json(text);
  try {
    if (j.at("schema").get<int>() != 1) throw Error(ErrorKind::ParseError, "unsupported schema version");
    DerivationLog log;
    const json& c = j.at("context");
    LogContext& ctx = log.context;
    ctx.ring = c.at("ring").get<std::string>();
    ctx.domain = c.value("domain", std::string("series"));
    ctx.t = c.value("t", std::size_t{0});
    ctx.size = c.value("size", std::size_t{0});
    ctx.k = c.at("k").is_string() ? c.at("k").get<std::string>() : c.at("k").dump();
    if (c.contains("symbols")) ctx.symbols = c.at("symbols").get<std::map<std::string, std::string>>();
    ctx.subgroup = c.value("subgroup", std::string("opaque"));
    ctx.hypothesis = c.value("hypothesis", std::string());
    for (const json& s : j.at("steps")) {
      Step step;
      step.kind = kind_from_name(s.at("kind").get<std::string>());
      switch (step.kind) {
        case StepKind::Exact:
          step.lhs = s.at("lhs").get<std::string>();
          step.rhs = s.at("rhs").get<std::string>();
          break;
        case StepKind::Hypothesis:
          step.label = s.at("label").get<std::string>();
          step.stmt = s.at("stmt").get<std::string>();
          break;
        case StepKind::Cong:
          step.stmt = s.at("stmt").get<std::string>();
          step.rule = s.at("rule").get<std::string>();
          step.cites = s.at("cites").get<std::vector<std::size_t>>();
          step.arg = s.value("arg", std::string());
          break;
        case StepKind::Axiom:
          step.name = s.at("name").get<std::string>();
          step.stmt = s.at("stmt").get<std::string>();
          step.arg = s.value("arg", std::string());
          break;
      }
      log.steps.push_back(std::move(step));
    }
    log.conclusion = j.at("conclusion").get<std::string>();
    return log;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string cert_to_json(const StableEquivCert& cert) {
  json out = {{"schema", 1},
              {"kind", "stable-equivalence"},
              {"ring", cert.source.ring().to_string()},
              {"size", cert.size},
              {"source", cert.source.to_string()},
              {"target", cert.target.to_string()},
              {"left", word_to_json(cert.left)},
              {"right", word_to_json(cert.right)}};
  return out.dump(2);
}

StableEquivCert cert_from_json(std::string_view text) {
  const json j = parse_json(text);
  try {
    if (j.at("schema").get<int>() != 1) throw Error(ErrorKind::ParseError, "unsupported schema version");
    if (j.at("kind").get<std::string>() != "stable-equivalence")
      throw Error(ErrorKind::ParseError, "not a stable-equivalence certificate");
    const Ring ring = matrix_ring(Ring::parse(j.at("ring").get<std::string>()));
    StableEquivCert cert;
    cert.size = j.at("size").get<std::size_t>();
    cert.source = PolyMatrix::parse(ring, j.at("source").get<std::string>());
    cert.target = PolyMatrix::parse(ring, j.at("target").get<std::string>());
    cert.left = word_from_json(j.at("left"), ring, cert.size);
    cert.right = word_from_json(j.at("right"), ring, cert.size);
    return cert;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace nk1
