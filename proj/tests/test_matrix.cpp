#include <gtest/gtest.h>

#include "nk1/expr.hpp"
#include "nk1/graded.hpp"
#include "nk1/higman.hpp"
#include "support/gen.hpp"

using namespace nk1;
using nk1::testing::Gen;

namespace {

PolyMatrix mat(const Ring& coeff, const char* text) { return PolyMatrix::parse(coeff, text); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalError;
}

// Oracle: Laplace expansion along the first row.
RingElem cofactor_det(const PolyMatrix& a) {
  const std::size_t n = a.size();
  if (n == 1) return a(0, 0);
  RingElem out = a.ring().zero();
  for (std::size_t j = 0; j < n; ++j) {
    PolyMatrix minor(a.ring(), n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0, mc = 0; c < n; ++c)
        if (c != j) minor(i - 1, mc++) = a(i, c);
    RingElem term = a(0, j) * cofactor_det(minor);
    out = j % 2 == 0 ? out + term : out - term;
  }
  return out;
}

PolyMatrix x_times(const PolyMatrix& a, unsigned power) {
  return pow(a.ring().variable("X"), power) * a;
}

}  // namespace

TEST(Matrix, ParsesIntoMatrixRing) {
  const Ring z5 = Ring::modular(5);
  PolyMatrix a = mat(z5, "[[1 + X, 2],[0, 3X^2]]");
  EXPECT_EQ(a.ring(), matrix_ring(z5));
  EXPECT_EQ(a.degree(), 2);
  EXPECT_EQ(a.at_zero(), mat(z5, "[[1, 2],[0, 0]]"));
  EXPECT_EQ(a.coefficient(2), mat(z5, "[[0, 0],[0, 3]]"));
  EXPECT_EQ(PolyMatrix::parse(z5, a.to_string()), a);
  EXPECT_EQ(matrix_ring(Ring::parse("Z/2[Y]")).variables(), (std::vector<std::string>{"X", "Y"}));
  EXPECT_THROW(mat(z5, "[[1, 2],[3]]"), Error);
}

TEST(Matrix, ElementaryActions) {
  Gen g(41);
  const Ring r = Ring::modular(6);
  const Ring mr = matrix_ring(r);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(g.range(2, 4));
    ElemWord w = g.word(r, n, static_cast<std::size_t>(g.range(0, 8)), 2);
    PolyMatrix a = g.matrix(r, n, 2);
    PolyMatrix p = word_product(w, mr);
    ASSERT_EQ(elem_apply(w, a), p * a);
    ASSERT_EQ(elem_apply_right(a, w), a * p);
    ASSERT_TRUE((p * word_product(w.inverse(), mr)).is_identity());
    ASSERT_EQ(word_product(w.resized(n + 2), mr), pad_identity(p, n + 2));
  }
}

TEST(Matrix, WordProductReadsLeftToRight) {
  const Ring z = Ring::integers();
  const Ring mr = matrix_ring(z);
  ElemWord w(2);
  w.push(0, 1, mr.from_integer(2));
  w.push(1, 0, mr.from_integer(3));
  // [[1,2],[0,1]] [[1,0],[3,1]] = [[7,2],[3,1]]
  EXPECT_EQ(word_product(w, mr), mat(z, "[[7, 2],[3, 1]]"));
}

TEST(Whitehead, ScalarExample) {
  const Ring z5 = Ring::modular(5);
  PolyMatrix a = mat(z5, "[[2]]"), b = mat(z5, "[[3]]");
  ElemWord w = whitehead_word(a, b);
  EXPECT_EQ(w.size(), 2u);
  EXPECT_EQ(word_product(w, a.ring()), mat(z5, "[[2, 0],[0, 3]]"));
  EXPECT_EQ(kind_of([&] { whitehead_word(a, a); }), ErrorKind::NotInverse);
}

TEST(Whitehead, Identity) {
  const Ring q = Ring::rationals();
  PolyMatrix i = PolyMatrix::identity(matrix_ring(q), 3);
  EXPECT_TRUE(word_product(whitehead_word(i, i), i.ring()).is_identity());
}

TEST(Whitehead, RandomInvertibleMatrices) {
  Gen g(42);
  const Ring z7 = Ring::modular(7);
  const Ring mr = matrix_ring(z7);
  for (int i = 0; i < 40; ++i) {
    const auto n = static_cast<std::size_t>(g.range(1, 3));
    PolyMatrix a = word_product(g.word(z7, n, 6, i % 2 == 0 ? 0 : 1), mr);
    PolyMatrix d = PolyMatrix::identity(mr, n);
    d(0, 0) = mr.from_integer(g.range(1, 6));
    a = d * a;
    PolyMatrix inv = inverse(a);
    ElemWord w = whitehead_word(a, inv);
    ASSERT_EQ(word_product(w, mr), block_sum(a, inv));
    ASSERT_EQ(w.letters().size(), 4 * n * n);
  }
}

TEST(Determinant, MatchesCofactorExpansion) {
  Gen g(43);
  for (const Ring& r : {Ring::integers(), Ring::modular(12), Ring::rationals(), Ring::parse("Z/3[Y]")}) {
    for (int i = 0; i < 40; ++i) {
      PolyMatrix a = g.matrix(r, static_cast<std::size_t>(g.range(1, 4)), 2);
      ASSERT_EQ(determinant(a), cofactor_det(a)) << a.to_string();
    }
  }
}

TEST(Determinant, WordsHaveDeterminantOne) {
  Gen g(44);
  for (const Ring& r : {Ring::integers(), Ring::modular(8)}) {
    for (int i = 0; i < 50; ++i) {
      const auto n = static_cast<std::size_t>(g.range(1, 4));
      PolyMatrix p = word_product(g.word(r, n, 10, 2), matrix_ring(r));
      ASSERT_TRUE(determinant(p).is_one());
      ASSERT_TRUE(sk1_det_check(p).is_one);
    }
  }
  DetCheck c = sk1_det_check(mat(Ring::modular(5), "[[2, 0],[0, 1]]"));
  EXPECT_FALSE(c.is_one);
  EXPECT_EQ(c.det.to_string(), "2");
}

TEST(Inverse, CayleyHamilton) {
  Gen g(45);
  const Ring z9 = Ring::modular(9);
  for (int i = 0; i < 50; ++i) {
    PolyMatrix a = word_product(g.word(z9, 3, 8, 1), matrix_ring(z9));
    ASSERT_TRUE((a * inverse(a)).is_identity());
    ASSERT_TRUE((inverse(a) * a).is_identity());
  }
  EXPECT_FALSE(try_inverse(mat(Ring::integers(), "[[2, 0],[0, 1]]")).has_value());
  EXPECT_FALSE(try_inverse(mat(Ring::integers(), "[[1 + X]]")).has_value());
  EXPECT_EQ(inverse(mat(Ring::modular(4), "[[1 + 2X]]")), mat(Ring::modular(4), "[[1 + 2X]]"));
}

TEST(Nilpotency, Examples) {
  EXPECT_EQ(nilpotency_index(mat(Ring::integers(), "[[0, 1],[0, 0]]")), 2u);
  EXPECT_EQ(nilpotency_index(mat(Ring::integers(), "[[0, 0],[0, 0]]")), 1u);
  EXPECT_EQ(nilpotency_index(mat(Ring::modular(8), "[[2]]")), 3u);
  EXPECT_EQ(kind_of([] { nilpotency_index(mat(Ring::integers(), "[[1]]")); }), ErrorKind::NotNilpotent);
  Gen g(46);
  for (int i = 0; i < 30; ++i) {
    const auto n = static_cast<std::size_t>(g.range(1, 5));
    PolyMatrix s = g.strictly_upper(Ring::modular(7), n);
    const std::size_t m = nilpotency_index(s);
    ASSERT_LE(m, n);
    ASSERT_TRUE(pow(s, static_cast<long long>(m)).is_zero());
    if (m > 1) ASSERT_FALSE(pow(s, static_cast<long long>(m) - 1).is_zero());
  }
}

TEST(Higman, SingleStepOnePlusXSquared) {
  const Ring z = Ring::integers();
  HigmanStep s = higman_reduce_step(mat(z, "[[1 + X^2]]"));
  EXPECT_EQ(s.reduced, mat(z, "[[1, -X],[X, 1]]"));
  EXPECT_TRUE(s.cert.holds());
  EXPECT_EQ(s.cert.size, 2u);
  EXPECT_EQ(determinant(s.reduced), determinant(mat(z, "[[1 + X^2]]")));
}

TEST(Higman, AlreadyLinear) {
  EXPECT_EQ(kind_of([] { higman_reduce_step(mat(Ring::integers(), "[[1 + X, 2],[0, 1]]")); }), ErrorKind::AlreadyLinear);
  HigmanStep s = higman_linearize(mat(Ring::integers(), "[[1 + X]]"));
  EXPECT_EQ(s.reduced, mat(Ring::integers(), "[[1 + X]]"));
  EXPECT_TRUE(s.cert.holds());
}

TEST(Higman, CubicScalar) {
  const Ring z = Ring::integers();
  HigmanStep s = higman_linearize(mat(z, "[[1 + X^3]]"));
  EXPECT_EQ(s.reduced.size(), 4u);
  EXPECT_LE(s.reduced.degree(), 1);
  EXPECT_TRUE(s.cert.holds());
}

TEST(Higman, RandomCertificatesReplay) {
  Gen g(47);
  const Ring z6 = Ring::modular(6);
  for (int i = 0; i < 30; ++i) {
    PolyMatrix a = g.matrix(z6, 2, 3);
    if (a.degree() < 2) continue;
    HigmanStep s = higman_linearize(a);
    const std::size_t expected = 2u << (a.degree() - 1);
    ASSERT_EQ(s.reduced.size(), expected);
    ASSERT_LE(s.reduced.degree(), 1);
    ASSERT_TRUE(s.cert.holds());
    ASSERT_EQ(determinant(s.reduced), determinant(a));
  }
}

TEST(Higman, TamperedCertificateFails) {
  HigmanStep s = higman_linearize(mat(Ring::integers(), "[[1 + X^2]]"));
  StableEquivCert bad = s.cert;
  bad.left.push(0, 1, bad.source.ring().one());
  EXPECT_FALSE(bad.holds());
  bad = s.cert;
  bad.target(0, 0) += bad.target.ring().one();
  EXPECT_FALSE(bad.holds());
}

TEST(Unipotent, QuadraticNilpotent) {
  Gen g(48);
  const Ring z5 = Ring::modular(5);
  for (int i = 0; i < 20; ++i) {
    const auto r = static_cast<std::size_t>(g.range(1, 3));
    PolyMatrix n = g.strictly_upper(z5, r);
    PolyMatrix a = PolyMatrix::identity(n.ring(), r) + x_times(n, 2);
    UnipotentForm f = unipotent_normalize(a, inverse(a));
    ASSERT_EQ(f.n.size(), n.is_zero() ? r : 2 * r);
    ASSERT_EQ(f.n.degree() <= 0, true);
    ASSERT_TRUE(f.cert.holds());
    ASSERT_EQ(f.cert.target, PolyMatrix::identity(n.ring(), f.n.size()) + x_times(f.n, 1));
    ASSERT_TRUE(pow(f.n, static_cast<long long>(f.nilpotency_index)).is_zero());
  }
}

TEST(Unipotent, Errors) {
  const Ring z = Ring::integers();
  EXPECT_EQ(kind_of([&] { unipotent_normalize(mat(z, "[[1 + X, 0],[0, 1]]")); }), ErrorKind::NotNilpotent);
  EXPECT_EQ(kind_of([&] { unipotent_normalize(mat(z, "[[2 + X]]")); }), ErrorKind::NotUnipotentAtZero);
  EXPECT_EQ(kind_of([&] { unipotent_normalize(mat(z, "[[1, X],[0, 1]]"), mat(z, "[[1, X],[0, 1]]")); }),
            ErrorKind::NotInverse);
  UnipotentForm f = unipotent_normalize(mat(z, "[[1, X],[0, 1]]"), mat(z, "[[1, -X],[0, 1]]"));
  EXPECT_EQ(f.n, mat(z, "[[0, 1],[0, 0]]"));
  EXPECT_EQ(f.nilpotency_index, 2u);
}

TEST(Graded, DecomposeAndSum) {
  const Ring r = Ring::parse("Z/7[Y]");
  RingElem a = parse_element(r, "3 + Y + 5Y^3");
  GradedElem g = GradedElem::decompose(a);
  ASSERT_EQ(g.components().size(), 4u);
  EXPECT_EQ(g.components()[2], r.zero());
  EXPECT_EQ(g.sum(), a);
  EXPECT_EQ(kind_of([&] { GradedElem(r, {r.zero(), parse_element(r, "Y^2")}); }), ErrorKind::NotHomogeneous);
}

TEST(Graded, ThetaIsAHomomorphism) {
  Gen g(49);
  for (const Ring& r : {Ring::parse("Z/7[Y]"), Ring::parse("Q[Y,Z]")}) {
    const Ring tr = theta_ring(r);
    const RingElem x = tr.variable("X");
    auto theta = [](const RingElem& e) { return swan_weibel_theta(GradedElem::decompose(e)); };
    // oracle: each monomial of total degree d picks up X^d
    auto substitute = [&](const RingElem& e) {
      RingElem out = tr.zero();
      for (const auto& [exps, c] : e.terms()) {
        unsigned d = 0;
        RingElem mono = change_ring(RingElem::scalar(r.base(), c), tr);
        for (std::size_t v = 0; v < exps.size(); ++v) {
          d += exps[v];
          mono *= pow(tr.variable(r.variables()[v]), exps[v]);
        }
        out += mono * pow(x, d);
      }
      return out;
    };
    for (int i = 0; i < 100; ++i) {
      RingElem a = g.element(r), b = g.element(r);
      ASSERT_EQ(theta(a), substitute(a));
      ASSERT_EQ(evaluate_variable(theta(a), "X", tr.base().one()), change_ring(a, tr));
      ASSERT_EQ(theta(a + b), theta(a) + theta(b));
      ASSERT_EQ(theta(a * b), theta(a) * theta(b));
      ASSERT_EQ(theta(r.one()), tr.one());
    }
  }
  EXPECT_EQ(kind_of([] { theta_ring(Ring::parse("Z[X]")); }), ErrorKind::PreconditionFailed);
}

TEST(Graded, MennickeFixture) {
  for (const Ring& r : {Ring::integers(), Ring::modular(5), Ring::rationals()}) {
    PolyMatrix m = mennicke_fixture(r), inv = mennicke_fixture_inverse(r);
    EXPECT_TRUE((m * inv).is_identity());
    EXPECT_TRUE(determinant(m).is_one());
    EXPECT_TRUE(entries_have_even_degree(m));
    EXPECT_EQ(m.ring().variables(), (std::vector<std::string>{"X", "Y"}));
    EXPECT_EQ(m(0, 0), parse_element(m.ring(), "1 - X*Y"));
    EXPECT_EQ(m(0, 1), parse_element(m.ring(), "X^2"));
  }
  EXPECT_FALSE(entries_have_even_degree(mat(Ring::integers(), "[[1 + X]]")));
  EXPECT_EQ(kind_of([] { mennicke_fixture(Ring::parse("Z[Y]")); }), ErrorKind::NotSupported);
}
