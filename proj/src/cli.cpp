#include "nk1/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "nk1/derivation.hpp"
#include "nk1/graded.hpp"
#include "nk1/higman.hpp"
#include "nk1/series_lemmas.hpp"
#include "nk1/theorem1.hpp"
#include "nk1/witt.hpp"

namespace nk1 {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kRingHelp =
    "Rings: Z, Q, Z/n, polynomial rings such as Z/2[X,Y], truncations such as Z/5[X]/(X^4).\n"
    "Elements: 1 + 2*X - X^3, 3/4, 2 mod 8. Matrices: [[1 + X, 0],[0, 1]] (row-major).";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  std::string ring;
  std::size_t t = 0;
  std::size_t r = 0;
  unsigned long k = 0;
  std::string poly;
  std::string matrix;
  std::string inverse;
  std::string n;
  std::string elem;
  std::string emit;
  std::string input = "series";
  std::string op;
  std::string name;
  std::string path;
  std::vector<std::string> operands;
  bool unipotent = false;
};

json strings(const std::vector<RingElem>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

std::string tuple(const std::vector<RingElem>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

WittVector parse_coords(const Ring& base, std::size_t t, std::string text) {
  if (!text.empty() && text.front() == '(') text.erase(0, 1);
  if (!text.empty() && text.back() == ')') text.pop_back();
  std::vector<RingElem> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coords.push_back(parse_element(base, item));
  if (coords.size() != t)
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(t) + " coordinates, got " + std::to_string(coords.size()));
  return WittVector(base, std::move(coords));
}

int cmd_witt(const Options& o, std::ostream& out) {
  const Ring base = Ring::parse(o.ring);
  const std::size_t arity = (o.op == "add" || o.op == "mul") ? 2 : 1;
  if (o.operands.size() != arity)
    throw UsageError("witt " + o.op + " takes " + std::to_string(arity) + " operand(s)");
  std::vector<WittVector> w;
  for (const auto& s : o.operands)
    w.push_back(o.input == "coords" ? parse_coords(base, o.t, s) : witt_coords(SeriesUnit::parse(base, o.t, s)));

  if (o.op == "ghost") {
    auto g = ghost(witt_series(w[0]));
    if (o.json) {
      out << json{{"ghost", strings(g)}}.dump(2) << "\n";
    } else {
      out << "ghost: " << tuple(g) << "\n";
    }
    return 0;
  }
  WittVector result = w[0];
  if (o.op == "add") result = witt_add(w[0], w[1]);
  if (o.op == "mul") result = witt_mul(w[0], w[1]);
  if (o.op == "neg") result = witt_neg(w[0]);
  const std::string series = witt_series(result).poly().to_string();
  if (o.json) {
    out << json{{"coords", strings(result.coords())}, {"series", series}}.dump(2) << "\n";
  } else {
    out << "coords: " << result.to_string() << "\nseries: " << series << "\n";
  }
  return 0;
}

int cmd_lemma3(const Options& o, std::ostream& out) {
  const TruncatedPoly f = TruncatedPoly::parse(Ring::parse(o.ring), o.t, o.poly);
  const Lemma3Factor fac = lemma3_factor(f, o.r);
  if (o.json) {
    out << json{{"p0", fac.p0.to_string()}, {"q", fac.q.to_string()}}.dump(2) << "\n";
  } else {
    out << "P0 = " << fac.p0.to_string() << "\nQ = " << fac.q.to_string() << "\n"
        << f.to_string() << " = (1 + (" << fac.p0.to_string() << ")*X^" << o.r << ")*(1 + X^" << o.r + 1 << "*("
        << fac.q.to_string() << "))\n";
  }
  return 0;
}

void emit_log(const Options& o, const DerivationLog& log, std::ostream& out) {
  const std::string text = log_to_json(log);
  if (!o.emit.empty()) write_file(o.emit, text);
  if (o.json) {
    out << text << "\n";
  } else {
    out << "conclusion: " << log.conclusion << "\nsteps: " << log.steps.size() << "\nverified: yes\n";
  }
}

int cmd_trivialize(const Options& o, std::ostream& out) {
  const SeriesUnit f = SeriesUnit::parse(Ring::parse(o.ring), o.t, o.poly);
  emit_log(o, trivialize_k_torsion(f, o.k), out);
  return 0;
}

int cmd_theorem1(const Options& o, std::ostream& out) {
  const PolyMatrix n = PolyMatrix::parse(Ring::parse(o.ring), o.n);
  emit_log(o, theorem1_derivation(n, o.k), out);
  return 0;
}

int cmd_higman(const Options& o, std::ostream& out) {
  const Ring ring = Ring::parse(o.ring);
  const PolyMatrix a = PolyMatrix::parse(ring, o.matrix);
  std::optional<PolyMatrix> a_inv;
  if (!o.inverse.empty()) a_inv = PolyMatrix::parse(ring, o.inverse);
  HigmanStep lin;
  std::optional<UnipotentForm> uni;
  if (o.unipotent) {
    uni = unipotent_normalize(a, a_inv);
    lin = HigmanStep{PolyMatrix::identity(a.ring(), uni->n.size()) + matrix_ring(ring).variable("X") * uni->n, uni->cert};
  } else {
    lin = higman_linearize(a);
  }
  const std::string cert = cert_to_json(lin.cert);
  if (!o.emit.empty()) write_file(o.emit, cert);
  if (o.json) {
    json j = {{"target", lin.reduced.to_string()},
              {"size", lin.reduced.size()},
              {"degree", lin.reduced.degree()},
              {"certificate", json::parse(cert)}};
    if (uni) {
      j["n"] = uni->n.to_string();
      j["nilpotency_index"] = uni->nilpotency_index;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "linear form: " << lin.reduced.to_string() << "\nsize: " << lin.reduced.size()
        << "\ndegree: " << lin.reduced.degree() << "\ncertificate: " << lin.cert.left.letters().size() << " left + "
        << lin.cert.right.letters().size() << " right transvections, verified\n";
    if (uni) out << "N: " << uni->n.to_string() << "\nnilpotency index: " << uni->nilpotency_index << "\n";
  }
  return 0;
}

int cmd_whitehead(const Options& o, std::ostream& out) {
  const Ring ring = Ring::parse(o.ring);
  const PolyMatrix a = PolyMatrix::parse(ring, o.matrix);
  const PolyMatrix a_inv = o.inverse.empty() ? inverse(a) : PolyMatrix::parse(ring, o.inverse);
  const ElemWord w = whitehead_word(a, a_inv);
  if (o.json) {
    json letters = json::array();
    for (const auto& l : w.letters())
      letters.push_back({{"i", l.row + 1}, {"j", l.col + 1}, {"lambda", l.lambda.to_string()}});
    out << json{{"size", w.size()}, {"letters", letters}}.dump(2) << "\n";
  } else {
    out << "word of " << w.letters().size() << " transvections in size " << w.size() << "\n";
    for (const auto& l : w.letters())
      out << "E(" << l.row + 1 << "," << l.col + 1 << "; " << l.lambda.to_string() << ")\n";
    out << "product equals a ⊥ a^-1: verified\n";
  }
  return 0;
}

int cmd_det(const Options& o, std::ostream& out) {
  const DetCheck d = sk1_det_check(PolyMatrix::parse(Ring::parse(o.ring), o.matrix));
  if (o.json) {
    out << json{{"det", d.det.to_string()}, {"is_one", d.is_one}}.dump(2) << "\n";
  } else {
    out << "det = " << d.det.to_string() << "\ndet is 1: " << (d.is_one ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_theta(const Options& o, std::ostream& out) {
  const GradedElem a = GradedElem::decompose(parse_element(Ring::parse(o.ring), o.elem));
  const RingElem th = swan_weibel_theta(a);
  if (o.json) {
    out << json{{"components", strings(a.components())}, {"theta", th.to_string()}}.dump(2) << "\n";
  } else {
    out << "components: " << tuple(a.components()) << "\ntheta = " << th.to_string() << "\n";
  }
  return 0;
}

int cmd_fixture(const Options& o, std::ostream& out) {
  const Ring ring = Ring::parse(o.ring);
  const PolyMatrix a = mennicke_fixture(ring);
  const PolyMatrix a_inv = mennicke_fixture_inverse(ring);
  const DetCheck d = sk1_det_check(a);
  const bool even = entries_have_even_degree(a);
  const bool inverse_ok = (a * a_inv).is_identity();
  if (o.json) {
    out << json{{"matrix", a.to_string()},
                {"inverse", a_inv.to_string()},
                {"det", d.det.to_string()},
                {"even_degree", even},
                {"inverse_verified", inverse_ok}}
               .dump(2)
        << "\n";
  } else {
    out << "matrix: " << a.to_string() << "\ninverse: " << a_inv.to_string() << "\ndet = " << d.det.to_string()
        << "\nentries of even total degree: " << (even ? "yes" : "no")
        << "\nmatrix * inverse = I: " << (inverse_ok ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::string text = read_file(o.path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (j.contains("kind") && j["kind"] == "stable-equivalence") {
    const bool ok = cert_from_json(text).holds();
    if (o.json) {
      out << json{{"accepted", ok}}.dump(2) << "\n";
    } else {
      out << (ok ? "accept: certificate replays\n" : "reject: certificate does not replay\n");
    }
    return ok ? 0 : 1;
  }
  const Verdict v = verify_derivation_log(log_from_json(text));
  if (o.json) {
    json r = {{"accepted", v.accepted}};
    if (!v.accepted) {
      r["step"] = v.step ? json(*v.step) : json(nullptr);
      r["reason"] = v.reason;
      r["detail"] = v.detail;
    }
    out << r.dump(2) << "\n";
  } else if (v.accepted) {
    out << "accept\n";
  } else {
    out << "reject at step " << (v.step ? std::to_string(*v.step) : std::string("-")) << ": " << v.reason;
    if (!v.detail.empty()) out << " (" << v.detail << ")";
    out << "\n";
  }
  return v.accepted ? 0 : 1;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Ring base = Ring::parse(o.ring);
  if (base.kind() != RingKind::Modular)
    throw Error(ErrorKind::PreconditionFailed, "exhaustive enumeration needs a finite ring Z/n");
  if (!base.modulus().fits_ulong_p()) throw Error(ErrorKind::NotSupported, "modulus too large");
  const unsigned long q = base.modulus().get_ui();
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), q, o.t);
  if (total > 10'000'000) throw Error(ErrorKind::NotSupported, total.get_str() + " series is too many to scan");

  const std::size_t count = total.get_ui();
  std::vector<unsigned long> digits(o.t, 0);
  std::size_t torsion = 0;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<RingElem> c{base.one()};
    for (auto d : digits) c.push_back(base.from_integer(d));
    if (pow(TruncatedPoly::from_coeffs(base, o.t, c), static_cast<long long>(o.k)).is_one()) ++torsion;
    for (std::size_t i = 0; i < digits.size() && ++digits[i] == q; ++i) digits[i] = 0;
  }
  if (o.json) {
    out << json{{"scanned", count}, {"torsion", torsion}}.dump(2) << "\n";
  } else {
    out << count << " series scanned, " << torsion << " k-torsion element" << (torsion == 1 ? "" : "s")
        << (torsion == 1 ? " (the identity)" : "") << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with big Witt vectors, polynomial matrices and torsion-elimination proof logs"};
  app.name("nk1");
  app.footer(kRingHelp);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "JSON output");

  auto ring_opt = [&](CLI::App* s) { s->add_option("--ring", o.ring, "ring descriptor")->required(); };
  auto emit_opt = [&](CLI::App* s, const char* flag) { s->add_option(flag, o.emit, "write the artifact to this path"); };

  auto* witt = app.add_subcommand("witt", "Witt vector arithmetic");
  witt->add_option("op", o.op, "add, mul, neg, ghost or coords")
      ->required()
      ->check(CLI::IsMember({"add", "mul", "neg", "ghost", "coords"}));
  witt->add_option("operands", o.operands, "series (or coordinates with --input coords)");
  ring_opt(witt);
  witt->add_option("--t", o.t, "truncation order")->required()->check(CLI::PositiveNumber);
  witt->add_option("--input", o.input, "operand format")->check(CLI::IsMember({"series", "coords"}));

  auto* lemma3 = app.add_subcommand("lemma3", "factor 1 + X^r P as (1 + X^r P(0))(1 + X^(r+1) Q)");
  ring_opt(lemma3);
  lemma3->add_option("--t", o.t, "truncation order")->required();
  lemma3->add_option("--r", o.r, "order of the leading term")->required();
  lemma3->add_option("--poly", o.poly, "the series f")->required();

  auto* triv = app.add_subcommand("trivialize", "derive f = 1 from f^k = 1 in R_t");
  ring_opt(triv);
  triv->add_option("--t", o.t, "truncation order")->required();
  triv->add_option("--k", o.k, "the exponent k")->required();
  triv->add_option("--poly", o.poly, "the series f")->required();
  emit_opt(triv, "--emit-log");

  auto* higman = app.add_subcommand("higman", "linearize a polynomial matrix up to stable equivalence");
  ring_opt(higman);
  higman->add_option("--matrix", o.matrix, "the matrix")->required();
  higman->add_option("--inverse", o.inverse, "its inverse, checked when given");
  higman->add_flag("--unipotent", o.unipotent, "extract N with linear form I + NX (needs a(0) = I)");
  emit_opt(higman, "--emit-cert");

  auto* white = app.add_subcommand("whitehead", "elementary word for a ⊥ a^-1");
  ring_opt(white);
  white->add_option("--matrix", o.matrix, "an invertible matrix")->required();
  white->add_option("--inverse", o.inverse, "its inverse (computed when omitted)");

  auto* thm = app.add_subcommand("theorem1", "derive [I + NX] ≡ I from [(I + NX)^k] ≡ I");
  ring_opt(thm);
  thm->add_option("--k", o.k, "the exponent k")->required();
  thm->add_option("--n", o.n, "the nilpotent matrix N")->required();
  emit_opt(thm, "--emit-log");

  auto* det = app.add_subcommand("det", "determinant of a polynomial matrix");
  ring_opt(det);
  det->add_option("--matrix", o.matrix, "the matrix")->required();

  auto* theta = app.add_subcommand("theta", "the homotopy a_0 + a_1 + ... -> a_0 + a_1 X + ...");
  ring_opt(theta);
  theta->add_option("--elem", o.elem, "element of the graded ring")->required();

  auto* fixture = app.add_subcommand("fixture", "built-in example matrices");
  fixture->add_option("name", o.name, "mennicke")->required()->check(CLI::IsMember({"mennicke"}));
  ring_opt(fixture);

  auto* verify = app.add_subcommand("verify", "check a derivation log or certificate");
  verify->add_option("path", o.path, "JSON file")->required();

  auto* oracle = app.add_subcommand("oracle", "exhaustive checks");
  oracle->add_option("name", o.name, "torsion")->required()->check(CLI::IsMember({"torsion"}));
  ring_opt(oracle);
  oracle->add_option("--t", o.t, "truncation order")->required();
  oracle->add_option("--k", o.k, "the exponent k")->required();

  std::vector<const char*> argv{"nk1"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (witt->parsed()) return cmd_witt(o, out);
    if (lemma3->parsed()) return cmd_lemma3(o, out);
    if (triv->parsed()) return cmd_trivialize(o, out);
    if (higman->parsed()) return cmd_higman(o, out);
    if (white->parsed()) return cmd_whitehead(o, out);
    if (thm->parsed()) return cmd_theorem1(o, out);
    if (det->parsed()) return cmd_det(o, out);
    if (theta->parsed()) return cmd_theta(o, out);
    if (fixture->parsed()) return cmd_fixture(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace nk1
