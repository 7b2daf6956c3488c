#include "nk1/matrix.hpp"

#include <algorithm>

namespace nk1 {

namespace {

void require_matrix_ring(const Ring& r) {
  if (r.kind() != RingKind::Polynomial || !r.variable_index("X") || r.max_exponent(*r.variable_index("X")))
    throw Error(ErrorKind::PreconditionFailed, "matrix entries must live in a polynomial ring with free variable X, got " +
                                                   r.to_string());
}

void require_same_shape(const PolyMatrix& a, const PolyMatrix& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::MixedRings, a.ring().to_string() + " vs " + b.ring().to_string());
  if (a.size() != b.size())
    throw Error(ErrorKind::SizeMismatch, std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

}  // namespace

Ring matrix_ring(const Ring& coeff) {
  if (coeff.is_scalar()) return Ring::polynomial(coeff, {"X"});
  if (coeff.kind() == RingKind::Truncated)
    throw Error(ErrorKind::NotSupported, "matrices over truncated rings: " + coeff.to_string());
  if (coeff.variable_index("X")) return coeff;
  std::vector<std::string> vars{"X"};
  std::vector<std::optional<unsigned>> max{std::nullopt};
  for (std::size_t i = 0; i < coeff.variables().size(); ++i) {
    vars.push_back(coeff.variables()[i]);
    max.push_back(coeff.max_exponent(i));
  }
  return Ring::polynomial(coeff.base(), std::move(vars), std::move(max));
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix() : PolyMatrix(matrix_ring(Ring::integers()), 0) {}

PolyMatrix::PolyMatrix(const Ring& ring, std::size_t n) : ring_(ring), n_(n), entries_(n * n, ring.zero()) {
  require_matrix_ring(ring_);
}

PolyMatrix PolyMatrix::identity(const Ring& ring, std::size_t n) {
  PolyMatrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

PolyMatrix PolyMatrix::from_rows(const Ring& ring, const std::vector<std::vector<RingElem>>& rows) {
  PolyMatrix m(ring, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorKind::SizeMismatch, "matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = change_ring(rows[i][j], ring);
  }
  return m;
}

PolyMatrix PolyMatrix::parse(const Ring& ring, std::string_view text) {
  MatrixEnv env{matrix_ring(ring), 0, {}};
  Expr e = parse_expr(text);
  if (e.kind == Expr::Kind::Matrix && e.rows != e.cols) throw Error(ErrorKind::SizeMismatch, "matrix must be square");
  if (e.kind == Expr::Kind::Matrix) env.size = e.rows;
  return eval_as_matrix(e, env);
}

long PolyMatrix::degree() const {
  long d = -1;
  for (const auto& x : entries_) d = std::max(d, degree_in(x, "X"));
  return d;
}

PolyMatrix PolyMatrix::coefficient(unsigned i) const {
  PolyMatrix out(ring_, n_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = coefficient_in(entries_[k], "X", i);
  return out;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const RingElem& x) { return x.is_zero(); });
}

bool PolyMatrix::is_identity() const { return *this == identity(ring_, n_); }

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out = *this;
  for (auto& x : out.entries_) x = -x;
  return out;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& b) {
  require_same_shape(*this, b);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += b.entries_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& b) {
  require_same_shape(*this, b);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= b.entries_[k];
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_shape(a, b);
  const std::size_t n = a.n_;
  PolyMatrix out(a.ring_, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const RingElem& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
    }
  return out;
}

PolyMatrix operator*(const RingElem& s, const PolyMatrix& a) {
  RingElem c = change_ring(s, a.ring_);
  PolyMatrix out = a;
  for (auto& x : out.entries_) x = c * x;
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.n_ == b.n_ && a.ring_ == b.ring_ && a.entries_ == b.entries_;
}

std::string PolyMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

PolyMatrix block_sum(const PolyMatrix& a, const PolyMatrix& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::MixedRings, a.ring().to_string() + " vs " + b.ring().to_string());
  PolyMatrix out(a.ring(), a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = a(i, j);
  const std::size_t o = a.size();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(o + i, o + j) = b(i, j);
  return out;
}

PolyMatrix pad_identity(const PolyMatrix& a, std::size_t n) {
  if (n < a.size()) throw Error(ErrorKind::SizeMismatch, "cannot pad to a smaller size");
  if (n == a.size()) return a;
  return block_sum(a, PolyMatrix::identity(a.ring(), n - a.size()));
}

PolyMatrix scale_x(const PolyMatrix& a, const RingElem& c) {
  PolyMatrix out(a.ring(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = scale_variable(a(i, j), "X", c);
  return out;
}

// ---------------------------------------------------------------------------
// Determinant and inverse

std::vector<RingElem> characteristic_polynomial(const PolyMatrix& a) {
  const Ring& r = a.ring();
  const std::size_t n = a.size();
  std::vector<RingElem> vect{r.one()};
  if (n == 0) return vect;
  vect.push_back(-a(0, 0));
  for (std::size_t k = 1; k < n; ++k) {
    // Leading block A_k, column C = A[0..k)[k], row R = A[k][0..k), corner A[k][k].
    std::vector<RingElem> q{r.one(), -a(k, k)};
    std::vector<RingElem> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = a(k, j);
    for (std::size_t i = 0; i < k; ++i) {
      RingElem dot = r.zero();
      for (std::size_t j = 0; j < k; ++j) dot += row[j] * a(j, k);
      q.push_back(-dot);
      if (i + 1 == k) break;
      std::vector<RingElem> next(k, r.zero());
      for (std::size_t j = 0; j < k; ++j) {
        if (row[j].is_zero()) continue;
        for (std::size_t l = 0; l < k; ++l) next[l] += row[j] * a(j, l);
      }
      row = std::move(next);
    }
    // vect <- T * vect with T lower-triangular Toeplitz on q.
    std::vector<RingElem> out(k + 2, r.zero());
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j) out[i] += q[i - j] * vect[j];
    vect = std::move(out);
  }
  return vect;
}

RingElem determinant(const PolyMatrix& a) {
  auto p = characteristic_polynomial(a);
  return a.size() % 2 == 0 ? p.back() : -p.back();
}

std::optional<PolyMatrix> try_inverse(const PolyMatrix& a) {
  const std::size_t n = a.size();
  auto p = characteristic_polynomial(a);
  auto inv_pn = try_inverse(p[n]);
  if (!inv_pn) return std::nullopt;
  if (n == 0) return a;
  // A (A^{n-1} + p_1 A^{n-2} + ... + p_{n-1}) = -p_n I
  const PolyMatrix id = PolyMatrix::identity(a.ring(), n);
  PolyMatrix b = id;
  for (std::size_t i = 1; i < n; ++i) b = b * a + p[i] * id;
  return (-*inv_pn) * b;
}

PolyMatrix inverse(const PolyMatrix& a) {
  auto inv = try_inverse(a);
  if (!inv) throw Error(ErrorKind::NotAUnit, "matrix with determinant " + determinant(a).to_string());
  return *inv;
}

PolyMatrix pow(const PolyMatrix& a, long long e) {
  PolyMatrix base = e < 0 ? inverse(a) : a;
  unsigned long long n = e < 0 ? 0ull - static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
  PolyMatrix r = PolyMatrix::identity(a.ring(), a.size());
  while (n) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

std::size_t nilpotency_index(const PolyMatrix& n, std::size_t bound_per_size) {
  const std::size_t bound = std::max<std::size_t>(1, bound_per_size * n.size());
  PolyMatrix p = n;
  for (std::size_t m = 1; m <= bound; ++m) {
    if (p.is_zero()) return m;
    p = p * n;
  }
  throw Error(ErrorKind::NotNilpotent, "no power up to " + std::to_string(bound) + " vanishes");
}

DetCheck sk1_det_check(const PolyMatrix& a) {
  DetCheck out;
  out.det = determinant(a);
  out.is_one = out.det.is_one();
  return out;
}

// ---------------------------------------------------------------------------
// Elementary words

void ElemWord::push(std::size_t row, std::size_t col, RingElem lambda) {
  if (row == col) throw Error(ErrorKind::PreconditionFailed, "transvection needs i != j");
  if (row >= size_ || col >= size_) throw Error(ErrorKind::SizeMismatch, "transvection index out of range");
  letters_.push_back({row, col, std::move(lambda)});
}

void ElemWord::append(const ElemWord& w) {
  if (w.size_ != size_) throw Error(ErrorKind::SizeMismatch, "word sizes differ");
  letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
}

ElemWord ElemWord::resized(std::size_t n) const {
  for (const auto& l : letters_)
    if (l.row >= n || l.col >= n) throw Error(ErrorKind::SizeMismatch, "word does not fit");
  ElemWord out = *this;
  out.size_ = n;
  return out;
}

ElemWord ElemWord::inverse() const {
  ElemWord out(size_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back({it->row, it->col, -it->lambda});
  return out;
}

PolyMatrix elem_apply(const ElemWord& w, const PolyMatrix& a) {
  if (w.size() != a.size()) throw Error(ErrorKind::SizeMismatch, "word size " + std::to_string(w.size()) +
                                                                      " vs matrix size " + std::to_string(a.size()));
  PolyMatrix out = a;
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
    if (it->lambda.is_zero()) continue;
    RingElem lam = change_ring(it->lambda, a.ring());
    // row i += lambda * row j
    for (std::size_t c = 0; c < a.size(); ++c)
      if (!out(it->col, c).is_zero()) out(it->row, c) += lam * out(it->col, c);
  }
  return out;
}

PolyMatrix elem_apply_right(const PolyMatrix& a, const ElemWord& w) {
  if (w.size() != a.size()) throw Error(ErrorKind::SizeMismatch, "word size " + std::to_string(w.size()) +
                                                                      " vs matrix size " + std::to_string(a.size()));
  PolyMatrix out = a;
  for (const auto& l : w.letters()) {
    if (l.lambda.is_zero()) continue;
    RingElem lam = change_ring(l.lambda, a.ring());
    // column j += lambda * column i
    for (std::size_t r = 0; r < a.size(); ++r)
      if (!out(r, l.row).is_zero()) out(r, l.col) += out(r, l.row) * lam;
  }
  return out;
}

PolyMatrix word_product(const ElemWord& w, const Ring& ring) {
  return elem_apply(w, PolyMatrix::identity(ring, w.size()));
}

namespace {

// [[I,B],[0,I]] (upper) or [[I,0],[B,I]] (lower), entries of B row-major.
void push_block(ElemWord& w, const PolyMatrix& b, bool upper) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (upper) {
        w.push(i, n + j, b(i, j));
      } else {
        w.push(n + i, j, b(i, j));
      }
    }
}

}  // namespace

ElemWord whitehead_word(const PolyMatrix& a, const PolyMatrix& a_inv) {
  require_same_shape(a, a_inv);
  const std::size_t n = a.size();
  const PolyMatrix id = PolyMatrix::identity(a.ring(), n);
  if (!(a * a_inv == id)) throw Error(ErrorKind::NotInverse, "a * a_inv != I");
  ElemWord w(2 * n);
  push_block(w, a, true);
  push_block(w, id - a_inv, false);
  push_block(w, -id, true);
  push_block(w, id - a, false);
  if (!(word_product(w, a.ring()) == block_sum(a, a_inv)))
    throw Error(ErrorKind::InternalError, "Whitehead word does not multiply to a ⊥ a^-1");
  return w;
}

// ---------------------------------------------------------------------------
// Expression evaluation over matrices

namespace {

PolyMatrix promote(const MatrixValue& v, const MatrixEnv& env) {
  if (auto m = std::get_if<PolyMatrix>(&v)) return *m;
  if (env.size == 0) throw Error(ErrorKind::ParseError, "scalar used where a matrix of known size is required");
  return std::get<RingElem>(v) * PolyMatrix::identity(env.ring, env.size);
}

}  // namespace

MatrixValue eval_matrix_expr(const Expr& e, const MatrixEnv& env) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number:
    case K::ModNumber: return eval_scalar(e, env.ring);
    case K::Symbol: {
      if (e.symbol == 'I') {
        if (env.size == 0) throw Error(ErrorKind::ParseError, "I needs a known matrix size");
        return PolyMatrix::identity(env.ring, env.size);
      }
      auto it = env.symbols.find(e.symbol);
      if (it != env.symbols.end()) return it->second;
      return eval_scalar(e, env.ring);
    }
    case K::Matrix: {
      if (e.rows != e.cols) throw Error(ErrorKind::SizeMismatch, "matrix must be square");
      if (env.size && e.rows != env.size)
        throw Error(ErrorKind::SizeMismatch, "matrix literal of size " + std::to_string(e.rows));
      PolyMatrix m(env.ring, e.rows);
      for (std::size_t i = 0; i < e.rows; ++i)
        for (std::size_t j = 0; j < e.cols; ++j) m(i, j) = eval_scalar(e.args[i * e.cols + j], env.ring);
      return m;
    }
    case K::Neg: {
      auto v = eval_matrix_expr(e.args[0], env);
      if (auto s = std::get_if<RingElem>(&v)) return -*s;
      return -std::get<PolyMatrix>(v);
    }
    case K::Pow: {
      auto v = eval_matrix_expr(e.args[0], env);
      if (auto s = std::get_if<RingElem>(&v)) return pow(*s, e.exponent);
      return pow(std::get<PolyMatrix>(v), e.exponent);
    }
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
      auto a = eval_matrix_expr(e.args[0], env);
      auto b = eval_matrix_expr(e.args[1], env);
      const bool both_scalar = std::holds_alternative<RingElem>(a) && std::holds_alternative<RingElem>(b);
      if (e.kind == K::Div) {
        auto d = std::get_if<RingElem>(&b);
        if (!d) throw Error(ErrorKind::ParseError, "division by a matrix");
        RingElem inv = ring_inv(*d);
        if (auto s = std::get_if<RingElem>(&a)) return *s * inv;
        return inv * std::get<PolyMatrix>(a);
      }
      if (both_scalar) {
        const auto& x = std::get<RingElem>(a);
        const auto& y = std::get<RingElem>(b);
        if (e.kind == K::Add) return x + y;
        if (e.kind == K::Sub) return x - y;
        return x * y;
      }
      if (e.kind == K::Mul) {
        if (auto s = std::get_if<RingElem>(&a)) return *s * std::get<PolyMatrix>(b);
        if (auto s = std::get_if<RingElem>(&b)) return *s * std::get<PolyMatrix>(a);
        return std::get<PolyMatrix>(a) * std::get<PolyMatrix>(b);
      }
      PolyMatrix x = promote(a, env), y = promote(b, env);
      return e.kind == K::Add ? x + y : x - y;
    }
  }
  throw Error(ErrorKind::InternalError, "bad expression node");
}

PolyMatrix eval_as_matrix(const Expr& e, const MatrixEnv& env) { return promote(eval_matrix_expr(e, env), env); }

}  // namespace nk1
