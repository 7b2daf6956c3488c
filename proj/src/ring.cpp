#include "nk1/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace nk1 {

struct Ring::Descriptor {
  RingKind kind = RingKind::Integers;
  mpz_class modulus;
  std::shared_ptr<const Descriptor> base;
  std::vector<std::string> variables;
  std::vector<std::optional<unsigned>> max_exponents;
  std::size_t t = 0;
};

namespace {

bool same_descriptor(const std::shared_ptr<const Ring::Descriptor>& a,
                     const std::shared_ptr<const Ring::Descriptor>& b);

}  // namespace

// ---------------------------------------------------------------------------
// Ring

Ring::Ring() : Ring(integers()) {}

Ring Ring::integers() {
  static const auto d = [] {
    auto p = std::make_shared<Descriptor>();
    p->kind = RingKind::Integers;
    return std::shared_ptr<const Descriptor>(p);
  }();
  return Ring(d);
}

Ring Ring::rationals() {
  static const auto d = [] {
    auto p = std::make_shared<Descriptor>();
    p->kind = RingKind::Rationals;
    return std::shared_ptr<const Descriptor>(p);
  }();
  return Ring(d);
}

Ring Ring::modular(const mpz_class& modulus) {
  if (modulus < 2) throw Error(ErrorKind::PreconditionFailed, "modulus must be at least 2");
  auto p = std::make_shared<Descriptor>();
  p->kind = RingKind::Modular;
  p->modulus = modulus;
  return Ring(std::move(p));
}

Ring Ring::polynomial(const Ring& base, std::vector<std::string> variables,
                      std::vector<std::optional<unsigned>> max_exponents) {
  if (!base.is_scalar()) throw Error(ErrorKind::NotSupported, "polynomial base ring must be Z, Q or Z/n");
  if (variables.empty()) throw Error(ErrorKind::PreconditionFailed, "polynomial ring needs a variable");
  max_exponents.resize(variables.size());
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const auto& v = variables[i];
    if (v.size() != 1 || !std::isalpha(static_cast<unsigned char>(v[0])) || v == "I")
      throw Error(ErrorKind::PreconditionFailed, "variable names are single letters other than I: '" + v + "'");
    if (std::count(variables.begin(), variables.end(), v) != 1)
      throw Error(ErrorKind::PreconditionFailed, "duplicate variable " + v);
  }
  if (variables.size() == 1 && variables[0] == "X" && max_exponents[0]) return truncated(base, *max_exponents[0]);
  auto p = std::make_shared<Descriptor>();
  p->kind = RingKind::Polynomial;
  p->base = base.d_;
  p->variables = std::move(variables);
  p->max_exponents = std::move(max_exponents);
  return Ring(std::move(p));
}

Ring Ring::truncated(const Ring& base, std::size_t t) {
  if (!base.is_scalar()) throw Error(ErrorKind::NotSupported, "truncated base ring must be Z, Q or Z/n");
  auto p = std::make_shared<Descriptor>();
  p->kind = RingKind::Truncated;
  p->base = base.d_;
  p->variables = {"X"};
  p->max_exponents = {static_cast<unsigned>(t)};
  p->t = t;
  return Ring(std::move(p));
}

RingKind Ring::kind() const { return d_->kind; }

bool Ring::is_scalar() const {
  return d_->kind == RingKind::Integers || d_->kind == RingKind::Rationals || d_->kind == RingKind::Modular;
}

const mpz_class& Ring::modulus() const {
  if (d_->kind != RingKind::Modular) throw Error(ErrorKind::PreconditionFailed, "not a modular ring");
  return d_->modulus;
}

Ring Ring::base() const { return is_scalar() ? *this : Ring(d_->base); }

const std::vector<std::string>& Ring::variables() const { return d_->variables; }

std::optional<unsigned> Ring::max_exponent(std::size_t var) const {
  if (var >= d_->max_exponents.size()) return std::nullopt;
  return d_->max_exponents[var];
}

std::optional<std::size_t> Ring::variable_index(std::string_view name) const {
  const auto& vs = d_->variables;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i] == name) return i;
  return std::nullopt;
}

std::size_t Ring::order() const {
  if (d_->kind != RingKind::Truncated) throw Error(ErrorKind::PreconditionFailed, "not a truncated ring");
  return d_->t;
}

RingElem Ring::zero() const { return RingElem::scalar(*this, 0); }
RingElem Ring::one() const { return RingElem::scalar(*this, 1); }
RingElem Ring::from_integer(const mpz_class& n) const { return RingElem::scalar(*this, mpq_class(n)); }

RingElem Ring::variable(std::string_view name) const {
  auto idx = variable_index(name);
  if (!idx) throw Error(ErrorKind::PreconditionFailed, "ring " + to_string() + " has no variable " + std::string(name));
  if (kind() == RingKind::Truncated) {
    RingElem::Dense c(order() + 1);
    if (order() >= 1) c[1] = 1;
    return RingElem::from_dense(*this, std::move(c));
  }
  RingElem::Exponents e(variables().size(), 0);
  e[*idx] = 1;
  RingElem::Terms terms;
  terms.emplace(std::move(e), 1);
  return RingElem::from_terms(*this, std::move(terms));
}

std::string Ring::to_string() const {
  switch (d_->kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::Modular: return "Z/" + d_->modulus.get_str();
    case RingKind::Truncated: return base().to_string() + "[X]/(X^" + std::to_string(d_->t + 1) + ")";
    case RingKind::Polynomial: {
      std::string s = base().to_string() + "[";
      std::string ideal;
      for (std::size_t i = 0; i < d_->variables.size(); ++i) {
        if (i) s += ",";
        s += d_->variables[i];
        if (d_->max_exponents[i]) {
          if (!ideal.empty()) ideal += ",";
          ideal += d_->variables[i] + "^" + std::to_string(*d_->max_exponents[i] + 1);
        }
      }
      s += "]";
      if (!ideal.empty()) s += "/(" + ideal + ")";
      return s;
    }
  }
  return "?";
}

bool operator==(const Ring& a, const Ring& b) { return same_descriptor(a.d_, b.d_); }

namespace {

bool same_descriptor(const std::shared_ptr<const Ring::Descriptor>& a,
                     const std::shared_ptr<const Ring::Descriptor>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return true;
    case RingKind::Modular: return a->modulus == b->modulus;
    case RingKind::Truncated: return a->t == b->t && same_descriptor(a->base, b->base);
    case RingKind::Polynomial:
      return a->variables == b->variables && a->max_exponents == b->max_exponents && same_descriptor(a->base, b->base);
  }
  return false;
}

// --- ring descriptor parsing ----------------------------------------------

struct RingLexer {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "ring descriptor '" + std::string(s) + "': " + what);
  }
  mpz_class integer() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    return mpz_class(std::string(s.substr(start, pos - start)));
  }
  std::string letter() {
    skip();
    if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos]))) fail("expected variable name");
    return std::string(1, s[pos++]);
  }
  bool done() {
    skip();
    return pos == s.size();
  }
};

}  // namespace

Ring Ring::parse(std::string_view text) {
  RingLexer lx{text};
  Ring base;
  if (lx.eat('Q')) {
    base = rationals();
  } else if (lx.eat('Z')) {
    if (lx.eat('/')) {
      base = modular(lx.integer());
    } else {
      base = integers();
    }
  } else {
    lx.fail("expected Z, Q or Z/n");
  }
  if (lx.done()) return base;
  lx.expect('[');
  std::vector<std::string> vars{lx.letter()};
  while (lx.eat(',')) vars.push_back(lx.letter());
  lx.expect(']');
  std::vector<std::optional<unsigned>> max(vars.size());
  if (lx.eat('/')) {
    lx.expect('(');
    do {
      std::string v = lx.letter();
      auto it = std::find(vars.begin(), vars.end(), v);
      if (it == vars.end()) lx.fail("truncation on unknown variable " + v);
      lx.expect('^');
      mpz_class e = lx.integer();
      if (e < 1 || e > 1000000) lx.fail("truncation exponent out of range");
      max[static_cast<std::size_t>(it - vars.begin())] = static_cast<unsigned>(e.get_ui() - 1);
    } while (lx.eat(','));
    lx.expect(')');
  }
  if (!lx.done()) lx.fail("trailing characters");
  return polynomial(base, std::move(vars), std::move(max));
}

// ---------------------------------------------------------------------------
// Scalar kernel. Every scalar is an mpq_class; Z and Z/n keep denominator 1.

namespace {

Ring scalar_ring(const Ring& r) { return r.is_scalar() ? r : r.base(); }

void normalize(const Ring& scalar, mpq_class& v) {
  switch (scalar.kind()) {
    case RingKind::Integers:
      if (v.get_den() != 1) throw Error(ErrorKind::InternalError, "non-integral value in Z");
      break;
    case RingKind::Rationals:
      v.canonicalize();
      break;
    case RingKind::Modular: {
      if (v.get_den() != 1) {
        // a/b with b a unit mod n
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), v.get_den().get_mpz_t(), scalar.modulus().get_mpz_t()) == 0)
          throw Error(ErrorKind::NotAUnit, v.get_den().get_str() + " mod " + scalar.modulus().get_str());
        mpz_class num = v.get_num() * inv;
        v = num;
      }
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), v.get_num().get_mpz_t(), scalar.modulus().get_mpz_t());
      v = r;
      break;
    }
    default:
      throw Error(ErrorKind::InternalError, "normalize on non-scalar ring");
  }
}

std::optional<mpq_class> scalar_inverse(const Ring& scalar, const mpq_class& v) {
  switch (scalar.kind()) {
    case RingKind::Integers:
      if (v == 1 || v == -1) return v;
      return std::nullopt;
    case RingKind::Rationals:
      if (v == 0) return std::nullopt;
      return mpq_class(1) / v;
    case RingKind::Modular: {
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), v.get_num().get_mpz_t(), scalar.modulus().get_mpz_t()) == 0) return std::nullopt;
      mpq_class out(inv);
      normalize(scalar, out);
      return out;
    }
    default:
      return std::nullopt;
  }
}

bool scalar_nilpotent(const Ring& scalar, const mpq_class& v) {
  if (v == 0) return true;
  if (scalar.kind() != RingKind::Modular) return false;
  // a is nilpotent mod n iff a^e = 0 for e = bitlength(n)
  const mpz_class& n = scalar.modulus();
  mpz_class p;
  mpz_powm_ui(p.get_mpz_t(), v.get_num().get_mpz_t(), mpz_sizeinbase(n.get_mpz_t(), 2), n.get_mpz_t());
  return p == 0;
}

mpq_class scalar_pow(const Ring& scalar, mpq_class base, unsigned long e) {
  mpq_class r = 1;
  while (e) {
    if (e & 1) {
      r *= base;
      normalize(scalar, r);
    }
    e >>= 1;
    if (e) {
      base *= base;
      normalize(scalar, base);
    }
  }
  return r;
}

unsigned long exponent_sum(const RingElem::Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0ul);
}

void require_same_ring(const RingElem& a, const RingElem& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorKind::MixedRings, a.ring().to_string() + " vs " + b.ring().to_string());
}

}  // namespace

// ---------------------------------------------------------------------------
// RingElem

bool RingElem::MonomialOrder::operator()(const Exponents& a, const Exponents& b) const {
  auto da = exponent_sum(a), db = exponent_sum(b);
  if (da != db) return da < db;
  return b < a;
}

RingElem::RingElem() : scalar_(0) {}

RingElem RingElem::scalar(const Ring& ring, mpq_class value) {
  Ring sr = scalar_ring(ring);
  normalize(sr, value);
  RingElem out;
  out.ring_ = ring;
  switch (ring.kind()) {
    case RingKind::Truncated:
      out.dense_.assign(ring.order() + 1, mpq_class(0));
      out.dense_[0] = value;
      break;
    case RingKind::Polynomial:
      if (value != 0) out.terms_.emplace(Exponents(ring.variables().size(), 0), value);
      break;
    default:
      out.scalar_ = value;
  }
  return out;
}

RingElem RingElem::from_terms(const Ring& ring, Terms terms) {
  if (ring.kind() != RingKind::Polynomial) {
    // allow the constant-only / univariate shapes for convenience
    if (ring.kind() == RingKind::Truncated) {
      Dense d(ring.order() + 1);
      for (auto& [e, c] : terms) {
        if (e.size() != 1) throw Error(ErrorKind::InternalError, "bad exponent vector");
        if (e[0] <= ring.order()) d[e[0]] += c;
      }
      return from_dense(ring, std::move(d));
    }
    throw Error(ErrorKind::InternalError, "from_terms on scalar ring");
  }
  Ring sr = ring.base();
  const std::size_t nv = ring.variables().size();
  for (auto it = terms.begin(); it != terms.end();) {
    bool drop = it->first.size() != nv;
    if (drop) throw Error(ErrorKind::InternalError, "bad exponent vector");
    for (std::size_t i = 0; i < nv && !drop; ++i) {
      auto m = ring.max_exponent(i);
      if (m && it->first[i] > *m) drop = true;
    }
    if (!drop) {
      normalize(sr, it->second);
      drop = it->second == 0;
    }
    it = drop ? terms.erase(it) : std::next(it);
  }
  RingElem out;
  out.ring_ = ring;
  out.terms_ = std::move(terms);
  return out;
}

RingElem RingElem::from_dense(const Ring& ring, Dense coeffs) {
  if (ring.kind() != RingKind::Truncated) throw Error(ErrorKind::InternalError, "from_dense on non-truncated ring");
  coeffs.resize(ring.order() + 1, mpq_class(0));
  Ring sr = ring.base();
  for (auto& c : coeffs) normalize(sr, c);
  RingElem out;
  out.ring_ = ring;
  out.dense_ = std::move(coeffs);
  return out;
}

bool RingElem::is_zero() const {
  switch (ring_.kind()) {
    case RingKind::Truncated:
      return std::all_of(dense_.begin(), dense_.end(), [](const mpq_class& c) { return c == 0; });
    case RingKind::Polynomial: return terms_.empty();
    default: return scalar_ == 0;
  }
}

bool RingElem::is_one() const { return *this == ring_.one(); }

const mpq_class& RingElem::scalar_value() const {
  if (!ring_.is_scalar()) throw Error(ErrorKind::InternalError, "scalar_value on non-scalar element");
  return scalar_;
}

const RingElem::Terms& RingElem::terms() const {
  if (ring_.kind() != RingKind::Polynomial) throw Error(ErrorKind::InternalError, "terms on non-polynomial element");
  return terms_;
}

const RingElem::Dense& RingElem::dense() const {
  if (ring_.kind() != RingKind::Truncated) throw Error(ErrorKind::InternalError, "dense on non-truncated element");
  return dense_;
}

RingElem RingElem::constant_term() const {
  switch (ring_.kind()) {
    case RingKind::Truncated: return scalar(ring_.base(), dense_[0]);
    case RingKind::Polynomial: {
      Exponents zero(ring_.variables().size(), 0);
      auto it = terms_.find(zero);
      return scalar(ring_.base(), it == terms_.end() ? mpq_class(0) : it->second);
    }
    default: return *this;
  }
}

RingElem RingElem::operator-() const {
  RingElem out = *this;
  Ring sr = scalar_ring(ring_);
  switch (ring_.kind()) {
    case RingKind::Truncated:
      for (auto& c : out.dense_) {
        c = -c;
        normalize(sr, c);
      }
      break;
    case RingKind::Polynomial:
      for (auto& [e, c] : out.terms_) {
        c = -c;
        normalize(sr, c);
      }
      break;
    default:
      out.scalar_ = -out.scalar_;
      normalize(sr, out.scalar_);
  }
  return out;
}

RingElem& RingElem::operator+=(const RingElem& b) {
  require_same_ring(*this, b);
  Ring sr = scalar_ring(ring_);
  switch (ring_.kind()) {
    case RingKind::Truncated:
      for (std::size_t i = 0; i < dense_.size(); ++i) {
        dense_[i] += b.dense_[i];
        normalize(sr, dense_[i]);
      }
      break;
    case RingKind::Polynomial:
      for (const auto& [e, c] : b.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
          it->second += c;
          normalize(sr, it->second);
          if (it->second == 0) terms_.erase(it);
        }
      }
      break;
    default:
      scalar_ += b.scalar_;
      normalize(sr, scalar_);
  }
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& b) { return *this += -b; }

RingElem& RingElem::operator*=(const RingElem& b) {
  require_same_ring(*this, b);
  Ring sr = scalar_ring(ring_);
  switch (ring_.kind()) {
    case RingKind::Truncated: {
      const std::size_t n = dense_.size();
      Dense out(n, mpq_class(0));
      for (std::size_t i = 0; i < n; ++i) {
        if (dense_[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j)
          if (b.dense_[j] != 0) out[i + j] += dense_[i] * b.dense_[j];
      }
      for (auto& c : out) normalize(sr, c);
      dense_ = std::move(out);
      break;
    }
    case RingKind::Polynomial: {
      Terms out;
      const std::size_t nv = ring_.variables().size();
      for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : b.terms_) {
          Exponents e(nv);
          bool vanishes = false;
          for (std::size_t i = 0; i < nv; ++i) {
            e[i] = ea[i] + eb[i];
            auto m = ring_.max_exponent(i);
            if (m && e[i] > *m) vanishes = true;
          }
          if (vanishes) continue;
          out[std::move(e)] += ca * cb;
        }
      }
      *this = from_terms(ring_, std::move(out));
      break;
    }
    default:
      scalar_ *= b.scalar_;
      normalize(sr, scalar_);
  }
  return *this;
}

bool operator==(const RingElem& a, const RingElem& b) {
  if (!(a.ring_ == b.ring_)) return false;
  switch (a.ring_.kind()) {
    case RingKind::Truncated: return a.dense_ == b.dense_;
    case RingKind::Polynomial: return a.terms_ == b.terms_;
    default: return a.scalar_ == b.scalar_;
  }
}

namespace {

std::string monomial_string(const RingElem::Exponents& e, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string join_terms(const std::vector<std::pair<mpq_class, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, mono] : terms) {
    mpq_class mag = c;
    bool negative = c < 0;
    if (negative) mag = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace

std::string RingElem::to_string() const {
  switch (ring_.kind()) {
    case RingKind::Truncated: {
      std::vector<std::pair<mpq_class, std::string>> parts;
      for (std::size_t i = 0; i < dense_.size(); ++i) {
        if (dense_[i] == 0) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? "X" : "X^" + std::to_string(i));
        parts.emplace_back(dense_[i], mono);
      }
      return join_terms(parts);
    }
    case RingKind::Polynomial: {
      std::vector<std::pair<mpq_class, std::string>> parts;
      for (const auto& [e, c] : terms_) parts.emplace_back(c, monomial_string(e, ring_.variables()));
      return join_terms(parts);
    }
    default:
      return scalar_.get_str();
  }
}

// ---------------------------------------------------------------------------
// Free functions

RingElem ring_arith(ArithOp op, const RingElem& a, const RingElem& b) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  throw Error(ErrorKind::InternalError, "bad op");
}

namespace {

// Sum_{i>=0} g^i for nilpotent g; stops at the first vanishing power.
RingElem geometric_series(const RingElem& g, std::size_t max_terms) {
  RingElem sum = g.ring().one();
  RingElem term = sum;
  for (std::size_t i = 1; i <= max_terms; ++i) {
    term *= g;
    if (term.is_zero()) return sum;
    sum += term;
  }
  if (g.ring().kind() == RingKind::Truncated) return sum;
  throw Error(ErrorKind::InternalError, "geometric series did not terminate");
}

bool term_is_nilpotent(const Ring& r, const RingElem::Exponents& e, const mpq_class& c) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0 && r.max_exponent(i)) return true;
  return scalar_nilpotent(r.base(), c);
}

}  // namespace

bool is_nilpotent(const RingElem& a) {
  const Ring& r = a.ring();
  switch (r.kind()) {
    case RingKind::Truncated: return scalar_nilpotent(r.base(), a.dense()[0]);
    case RingKind::Polynomial:
      for (const auto& [e, c] : a.terms())
        if (!term_is_nilpotent(r, e, c)) return false;
      return true;
    default: return scalar_nilpotent(r, a.scalar_value());
  }
}

bool is_unit(const RingElem& a) {
  const Ring& r = a.ring();
  if (r.is_scalar()) return scalar_inverse(r, a.scalar_value()).has_value();
  RingElem c0 = a.constant_term();
  if (!scalar_inverse(c0.ring(), c0.scalar_value())) return false;
  if (r.kind() == RingKind::Truncated) return true;
  return is_nilpotent(a - RingElem::scalar(r, c0.scalar_value()));
}

std::optional<RingElem> try_inverse(const RingElem& a) {
  const Ring& r = a.ring();
  if (r.is_scalar()) {
    auto inv = scalar_inverse(r, a.scalar_value());
    if (!inv) return std::nullopt;
    return RingElem::scalar(r, *inv);
  }
  if (!is_unit(a)) return std::nullopt;
  // c0^{-1} * sum_i (-c0^{-1} (a - c0))^i
  mpq_class c0 = a.constant_term().scalar_value();
  mpq_class inv0 = *scalar_inverse(r.base(), c0);
  RingElem inv0_elem = RingElem::scalar(r, inv0);
  RingElem g = -(inv0_elem * (a - RingElem::scalar(r, c0)));
  std::size_t max_terms = r.kind() == RingKind::Truncated ? r.order() : 1u << 20;
  return inv0_elem * geometric_series(g, max_terms);
}

RingElem ring_inv(const RingElem& a) {
  auto inv = try_inverse(a);
  if (!inv) throw Error(ErrorKind::NotAUnit, a.to_string() + " in " + a.ring().to_string());
  return *inv;
}

RingElem pow(const RingElem& a, long long e) {
  if (e < 0) return pow(ring_inv(a), mpz_class(-mpz_class(static_cast<long>(e))));
  RingElem base = a;
  RingElem r = a.ring().one();
  unsigned long long n = static_cast<unsigned long long>(e);
  while (n) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

RingElem pow(const RingElem& a, const mpz_class& e) {
  if (e < 0) return pow(ring_inv(a), mpz_class(-e));
  RingElem r = a.ring().one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r *= r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r *= a;
  }
  return r;
}

RingElem change_ring(const RingElem& a, const Ring& target) {
  const Ring& src = a.ring();
  if (src == target) return a;
  Ring sb = scalar_ring(src), tb = scalar_ring(target);
  if (!(sb == tb)) throw Error(ErrorKind::MixedRings, src.to_string() + " -> " + target.to_string());
  if (src.is_scalar()) return RingElem::scalar(target, a.scalar_value());
  if (target.is_scalar()) {
    if (total_degree(a) <= 0) return a.constant_term();
    throw Error(ErrorKind::MixedRings, "non-constant element cannot move to " + target.to_string());
  }
  // Map variables by name.
  std::vector<std::size_t> map;
  for (const auto& v : src.variables()) {
    auto idx = target.variable_index(v);
    if (!idx) {
      map.push_back(static_cast<std::size_t>(-1));
    } else {
      map.push_back(*idx);
    }
  }
  RingElem::Terms out;
  const std::size_t nt = target.kind() == RingKind::Truncated ? 1 : target.variables().size();
  auto add_term = [&](const RingElem::Exponents& e, const mpq_class& c) {
    RingElem::Exponents te(nt, 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] == static_cast<std::size_t>(-1))
        throw Error(ErrorKind::MixedRings, "variable " + src.variables()[i] + " missing in " + target.to_string());
      te[map[i]] = e[i];
    }
    out[std::move(te)] += c;
  };
  if (src.kind() == RingKind::Truncated) {
    const auto& d = a.dense();
    for (unsigned i = 0; i < d.size(); ++i)
      if (d[i] != 0) add_term(RingElem::Exponents{i}, d[i]);
  } else {
    for (const auto& [e, c] : a.terms()) add_term(e, c);
  }
  return RingElem::from_terms(target, std::move(out));
}

long degree_in(const RingElem& a, std::string_view var) {
  if (a.is_zero()) return -1;
  const Ring& r = a.ring();
  auto idx = r.variable_index(var);
  if (r.is_scalar() || !idx) return 0;
  if (r.kind() == RingKind::Truncated) {
    const auto& d = a.dense();
    for (std::size_t i = d.size(); i-- > 0;)
      if (d[i] != 0) return static_cast<long>(i);
    return -1;
  }
  long deg = 0;
  for (const auto& [e, c] : a.terms()) deg = std::max(deg, static_cast<long>(e[*idx]));
  return deg;
}

RingElem coefficient_in(const RingElem& a, std::string_view var, unsigned i) {
  const Ring& r = a.ring();
  auto idx = r.variable_index(var);
  if (r.is_scalar() || !idx) return i == 0 ? a : r.zero();
  if (r.kind() == RingKind::Truncated) {
    mpq_class c = i < a.dense().size() ? a.dense()[i] : mpq_class(0);
    return RingElem::scalar(r, c);
  }
  RingElem::Terms out;
  for (const auto& [e, c] : a.terms()) {
    if (e[*idx] != i) continue;
    auto e2 = e;
    e2[*idx] = 0;
    out.emplace(std::move(e2), c);
  }
  return RingElem::from_terms(r, std::move(out));
}

namespace {

RingElem substitute(const RingElem& a, std::string_view var, const RingElem& c, bool keep_variable) {
  const Ring& r = a.ring();
  if (r.is_scalar()) return a;
  Ring sr = r.base();
  if (!(c.ring() == sr)) throw Error(ErrorKind::MixedRings, "substitution constant must lie in " + sr.to_string());
  auto idx = r.variable_index(var);
  if (!idx) return a;
  const mpq_class& cv = c.scalar_value();
  if (r.kind() == RingKind::Truncated) {
    RingElem::Dense d = a.dense();
    if (keep_variable) {
      for (std::size_t i = 0; i < d.size(); ++i) d[i] *= scalar_pow(sr, cv, i);
      return RingElem::from_dense(r, std::move(d));
    }
    mpq_class sum = 0;
    for (std::size_t i = 0; i < d.size(); ++i) sum += d[i] * scalar_pow(sr, cv, i);
    return RingElem::scalar(r, sum);
  }
  RingElem::Terms out;
  for (const auto& [e, coeff] : a.terms()) {
    auto e2 = e;
    mpq_class v = coeff * scalar_pow(sr, cv, e[*idx]);
    if (!keep_variable) e2[*idx] = 0;
    out[std::move(e2)] += v;
  }
  return RingElem::from_terms(r, std::move(out));
}

}  // namespace

RingElem scale_variable(const RingElem& a, std::string_view var, const RingElem& c) {
  return substitute(a, var, c, true);
}

RingElem evaluate_variable(const RingElem& a, std::string_view var, const RingElem& c) {
  return substitute(a, var, c, false);
}

long total_degree(const RingElem& a) {
  if (a.is_zero()) return -1;
  const Ring& r = a.ring();
  if (r.is_scalar()) return 0;
  if (r.kind() == RingKind::Truncated) return degree_in(a, "X");
  long deg = 0;
  for (const auto& [e, c] : a.terms()) deg = std::max(deg, static_cast<long>(exponent_sum(e)));
  return deg;
}

}  // namespace nk1
