#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nk1/expr.hpp"
#include "nk1/ring.hpp"

namespace nk1 {

/// The ring matrices live in: `coeff` with the variable X adjoined
/// (Z/5 -> Z/5[X], Z/2[Y] -> Z/2[X,Y]); unchanged if X is already present.
Ring matrix_ring(const Ring& coeff);

/// Square matrix over a polynomial ring containing X. Degree and the
/// coefficient matrices a_i are taken with respect to X.
class PolyMatrix {
 public:
  PolyMatrix();
  PolyMatrix(const Ring& ring, std::size_t n);

  static PolyMatrix identity(const Ring& ring, std::size_t n);
  static PolyMatrix from_rows(const Ring& ring, const std::vector<std::vector<RingElem>>& rows);
  /// Row-major literal "[[1+X, 0],[0, 1]]" over matrix_ring(ring).
  static PolyMatrix parse(const Ring& ring, std::string_view text);

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return n_; }

  const RingElem& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  RingElem& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  /// Maximum X-degree of the entries, -1 for the zero matrix.
  long degree() const;
  /// The X-free matrix a_i with this = sum_i a_i X^i.
  PolyMatrix coefficient(unsigned i) const;
  PolyMatrix at_zero() const { return coefficient(0); }
  bool is_zero() const;
  bool is_identity() const;

  PolyMatrix operator-() const;
  PolyMatrix& operator+=(const PolyMatrix& b);
  PolyMatrix& operator-=(const PolyMatrix& b);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const RingElem& s, const PolyMatrix& a);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  std::string to_string() const;

 private:
  Ring ring_;
  std::size_t n_ = 0;
  std::vector<RingElem> entries_;
};

/// a ⊥ b, block diagonal.
PolyMatrix block_sum(const PolyMatrix& a, const PolyMatrix& b);
/// a ⊥ I_(n - size).
PolyMatrix pad_identity(const PolyMatrix& a, std::size_t n);
/// Substitution X -> c*X in every entry.
PolyMatrix scale_x(const PolyMatrix& a, const RingElem& c);

/// Coefficients p_0 = 1, p_1, ..., p_n of det(lambda I - A) = sum p_i lambda^(n-i),
/// by Berkowitz's division-free algorithm.
std::vector<RingElem> characteristic_polynomial(const PolyMatrix& a);
RingElem determinant(const PolyMatrix& a);
/// Inverse via Cayley-Hamilton when the determinant is a unit.
std::optional<PolyMatrix> try_inverse(const PolyMatrix& a);
PolyMatrix inverse(const PolyMatrix& a);
PolyMatrix pow(const PolyMatrix& a, long long e);

/// Smallest m >= 1 with N^m = 0; NotNilpotent past bound_per_size * size.
std::size_t nilpotency_index(const PolyMatrix& n, std::size_t bound_per_size = 16);

struct DetCheck {
  RingElem det;
  bool is_one = false;
};
DetCheck sk1_det_check(const PolyMatrix& a);

/// E_ij(lambda) = I + lambda e_ij, i != j (0-based indices).
struct Transvection {
  std::size_t row = 0;
  std::size_t col = 0;
  RingElem lambda;
};

/// The product E_1 E_2 ... E_k of transvections, read left to right.
class ElemWord {
 public:
  ElemWord() = default;
  explicit ElemWord(std::size_t size) : size_(size) {}

  std::size_t size() const { return size_; }
  const std::vector<Transvection>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  void push(std::size_t row, std::size_t col, RingElem lambda);
  /// Appends w on the right (this * w).
  void append(const ElemWord& w);
  /// Same letters acting on a larger identity block.
  ElemWord resized(std::size_t n) const;
  /// Reversed with negated entries.
  ElemWord inverse() const;

 private:
  std::size_t size_ = 0;
  std::vector<Transvection> letters_;
};

/// word * a, applied letter by letter as row operations.
PolyMatrix elem_apply(const ElemWord& w, const PolyMatrix& a);
/// a * word, as column operations.
PolyMatrix elem_apply_right(const PolyMatrix& a, const ElemWord& w);
PolyMatrix word_product(const ElemWord& w, const Ring& ring);

/// Word of size 2n multiplying to a ⊥ a_inv, from
///   [[a,0],[0,a^-1]] = [[I,a],[0,I]] [[I,0],[I-a^-1,I]] [[I,-I],[0,I]] [[I,0],[I-a,I]].
/// Throws NotInverse unless a * a_inv = I.
ElemWord whitehead_word(const PolyMatrix& a, const PolyMatrix& a_inv);

/// Values of the expression language over matrices: scalars promote to s*I.
using MatrixValue = std::variant<RingElem, PolyMatrix>;

struct MatrixEnv {
  Ring ring;                              // a matrix_ring
  std::size_t size = 0;                   // size of I; 0 if I is unavailable
  std::map<char, PolyMatrix> symbols;
};

MatrixValue eval_matrix_expr(const Expr& e, const MatrixEnv& env);
/// As above, promoting a scalar result to s*I (needs env.size).
PolyMatrix eval_as_matrix(const Expr& e, const MatrixEnv& env);

}  // namespace nk1
