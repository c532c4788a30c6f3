#include <gtest/gtest.h>

#include "cases.hpp"
#include "valent/element_io.hpp"
#include "valent/entropy.hpp"
#include "valent/errors.hpp"

using namespace valent;
using valent::cli::Rng;

namespace {

FieldElement el(const char* text) { return parse_element(text); }
ExtRational q(long n, long d = 1) { return ExtRational(n, d); }

MatrixQ mat(std::initializer_list<std::initializer_list<const char*>> rows) {
  MatrixQ m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (const char* e : r) m(i, j++) = el(e);
    ++i;
  }
  return m;
}

VectorQ vec(std::initializer_list<const char*> xs) {
  VectorQ v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const char* e : xs) v(i++) = el(e);
  return v;
}

bool same(const MatrixQ& a, const MatrixQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (!(a(i, j) == b(i, j))) return false;
    }
  }
  return true;
}

// Membership oracle for a lattice with a known Q-basis: coordinates in R.
bool in_span_of_basis(const VectorQ& x, const MatrixQ& basis) {
  const MatrixQ c = multiply(inverse(basis), MatrixQ(x));
  for (Index i = 0; i < c.rows(); ++i) {
    if (!c(i, 0).in_ring()) return false;
  }
  return true;
}

// 2x2 invariants of B^-1 A by hand: d_1 is the minimal entry valuation,
// d_1 + d_2 the determinant valuation.
std::vector<ExtRational> smith_2x2(const MatrixQ& b, const MatrixQ& a) {
  const MatrixQ c = multiply(inverse(b), a);
  ExtRational d1 = ExtRational::infinity();
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) d1 = std::min(d1, c(i, j).valuation());
  }
  const ExtRational det = (c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0)).valuation();
  return {d1, det - d1};
}

}  // namespace

TEST(CharPoly, SpecExamples) {
  EXPECT_EQ(char_poly(MatrixQ(MatrixQ::Identity(2, 2))), PolynomialQ({FieldElement(1), FieldElement(-2), FieldElement(1)}));
  EXPECT_EQ(char_poly(mat({{"0", "t^-1"}, {"1", "0"}})), PolynomialQ({-el("t^-1"), FieldElement(0), FieldElement(1)}));
  EXPECT_EQ(char_poly(mat({{"t^(1/2)", "0"}, {"0", "t"}})),
            PolynomialQ({el("t^(3/2)"), -el("t^(1/2) + t"), FieldElement(1)}));
}

TEST(CharPoly, MatchesCofactorOracleOn2x2) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const MatrixQ a = valent::cli::random_monomial_matrix(rng, 2, 2, valent::cli::valuation_grid(-2, 2, 3));
    const FieldElement tr = a(0, 0) + a(1, 1);
    const FieldElement det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    EXPECT_EQ(char_poly(a), PolynomialQ({det, -tr, FieldElement(1)}));
  }
}

TEST(CharPoly, RejectsNonSquare) { EXPECT_THROW(char_poly(MatrixQ(2, 3)), NonSquare); }

TEST(Determinant, MatchesCharPolyConstantTerm) {
  Rng rng(37);
  for (int i = 0; i < 40; ++i) {
    const MatrixQ a = valent::cli::random_monomial_matrix(rng, 3, 3, valent::cli::valuation_grid(-1, 1, 2));
    const PolynomialQ p = char_poly(a);
    EXPECT_EQ(determinant(a), -p(FieldElement(0)));
  }
}

TEST(NormalizeLattice, SpecExample) {
  const Lattice l(mat({{"1", "t", "0"}, {"0", "0", "t^(1/2)"}}));
  const Lattice n = normalize_lattice(l);
  const MatrixQ expected = mat({{"1", "0"}, {"0", "t^(1/2)"}});
  ASSERT_EQ(n.generators().cols(), 2);
  EXPECT_TRUE(same(n.generators(), expected));
  for (Index c = 0; c < 3; ++c) EXPECT_TRUE(in_span_of_basis(l.generators().col(c), expected));
  for (Index c = 0; c < 2; ++c) EXPECT_TRUE(lattice_membership(expected.col(c), l));
}

TEST(NormalizeLattice, ZeroAndIdempotent) {
  const Lattice zero(MatrixQ::Zero(2, 3));
  EXPECT_EQ(normalize_lattice(zero).generator_count(), 0);
  EXPECT_EQ(rank(zero), 0);
  const Lattice once = normalize_lattice(Lattice(mat({{"t^-1", "1"}, {"t", "t^(1/3)"}})));
  EXPECT_TRUE(same(normalize_lattice(once).generators(), once.generators()));
}

TEST(NormalizeLattice, CanonicalAcrossGeneratingSets) {
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ basis = valent::cli::random_invertible(rng, n);
    const MatrixQ change = valent::cli::random_integral_nonsingular(rng, n);
    // Unimodular change: multiply by an R-matrix with unit determinant.
    MatrixQ u = MatrixQ::Identity(n, n);
    for (Index r = 1; r < n; ++r) u(r - 1, r) = monomial(rng.between(0, 2));
    const Lattice a(basis);
    const Lattice b(multiply(basis, u));
    EXPECT_TRUE(same(normalize_lattice(a).generators(), normalize_lattice(b).generators()));
    EXPECT_TRUE(lattice_equal(a, b));
    const Lattice c(multiply(basis, change));
    EXPECT_TRUE(is_sublattice(c, a));
    EXPECT_EQ(is_sublattice(a, c), determinant(change).is_unit());
  }
}

TEST(NormalizeLattice, RankDeficient) {
  const Lattice l(mat({{"1", "t^-1", "t"}, {"t", "1", "t^2"}, {"0", "0", "0"}}));
  EXPECT_EQ(rank(l), 1);
  const Lattice n = normalize_lattice(l);
  ASSERT_EQ(n.generator_count(), 1);
  // Span is R * (t^-1, 1, 0).
  EXPECT_TRUE(lattice_membership(vec({"t^-1", "1", "0"}), n));
  EXPECT_FALSE(lattice_membership(vec({"t^-2", "t^-1", "0"}), n));
}

TEST(Membership, SpecExamples) {
  const Lattice e1(mat({{"1"}, {"0"}}));
  EXPECT_TRUE(lattice_membership(vec({"t", "0"}), e1));
  EXPECT_FALSE(lattice_membership(vec({"t^-1", "0"}), e1));
  EXPECT_TRUE(lattice_membership(vec({"1", "1"}), Lattice::standard(2)));
  EXPECT_FALSE(lattice_membership(vec({"0", "1"}), e1));
}

TEST(Membership, AgreesWithBasisOracle) {
  Rng rng(43);
  const auto vals = valent::cli::valuation_grid(-2, 2, 2);
  for (int i = 0; i < 100; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ basis = valent::cli::random_invertible(rng, n);
    MatrixQ g(n, n + 1);
    g.leftCols(n) = basis;
    g.col(n) = multiply(basis, valent::cli::random_monomial_matrix(rng, n, 1, valent::cli::valuation_grid(0, 1, 2)));
    const Lattice l(g);
    const VectorQ x = valent::cli::random_monomial_matrix(rng, n, 1, vals).col(0);
    EXPECT_EQ(lattice_membership(x, l), in_span_of_basis(x, basis));
  }
}

TEST(QuotientLength, SpecExamples) {
  EXPECT_EQ(quotient_length(Lattice::standard(2), Lattice(mat({{"t^(1/3)", "0"}, {"0", "t^(1/4)"}}))), q(7, 12));
  EXPECT_EQ(quotient_length(Lattice::standard(2), Lattice::standard(2)), q(0));
  EXPECT_EQ(quotient_length(Lattice::standard(2), Lattice(mat({{"1"}, {"0"}}))), ExtRational::infinity());
  EXPECT_THROW(quotient_length(Lattice::standard(1), Lattice(mat({{"t^-1"}}))), NotASubmodule);
}

TEST(QuotientLength, MatchesDeterminantOracle) {
  Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ b = valent::cli::random_invertible(rng, n);
    const MatrixQ x = valent::cli::random_integral_nonsingular(rng, n);
    EXPECT_EQ(quotient_length(Lattice(b), Lattice(multiply(b, x))), determinant(x).valuation());
  }
}

TEST(SmithInvariants, SpecExamples) {
  EXPECT_EQ(smith_invariants(Lattice::standard(2), Lattice(mat({{"t", "0"}, {"0", "t^(1/2)"}}))),
            (std::vector<ExtRational>{q(1, 2), q(1)}));
  EXPECT_EQ(smith_invariants(Lattice::standard(2), Lattice(mat({{"1", "t"}, {"1", "1 + t"}}))),
            (std::vector<ExtRational>{q(0), q(0)}));
  const std::vector<ExtRational> inv = smith_invariants(Lattice::standard(2), Lattice(mat({{"t^(1/2)", "1"}, {"0", "t"}})));
  EXPECT_EQ(inv, (std::vector<ExtRational>{q(0), q(3, 2)}));
  EXPECT_EQ(sum_of(inv), q(3, 2));
  EXPECT_THROW(smith_invariants(Lattice::standard(2), Lattice(mat({{"1"}, {"0"}}))), InvalidArgument);
}

TEST(SmithInvariants, Match2x2Oracle) {
  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    const MatrixQ b = valent::cli::random_invertible(rng, 2);
    const MatrixQ a = multiply(b, valent::cli::random_integral_nonsingular(rng, 2));
    EXPECT_EQ(smith_invariants(Lattice(b), Lattice(a)), smith_2x2(b, a));
  }
}

TEST(Kernel, SpecExamples) {
  const MatrixQ k = kernel(mat({{"0", "1"}, {"0", "0"}}));
  ASSERT_EQ(k.cols(), 1);
  EXPECT_TRUE(k(1, 0).is_zero());
  EXPECT_FALSE(k(0, 0).is_zero());
  EXPECT_EQ(kernel(mat({{"t", "1"}, {"0", "t^-1"}})).cols(), 0);
  const MatrixQ equal_rows = mat({{"1", "t", "t^(1/2)"}, {"1", "t", "t^(1/2)"}, {"1", "t", "t^(1/2)"}});
  const MatrixQ k3 = kernel(equal_rows);
  EXPECT_EQ(k3.cols(), 2);
  EXPECT_EQ(valent::rank(k3), 2);
  EXPECT_TRUE(same(multiply(equal_rows, k3), MatrixQ::Zero(3, 2)));
}

TEST(Preimage, SpecExamples) {
  EXPECT_TRUE(lattice_equal(preimage_lattice(mat({{"t"}}), Lattice::standard(1)), Lattice(mat({{"t^-1"}}))));
  const Lattice n(mat({{"t^(1/3)", "1"}, {"0", "t^-2"}}));
  EXPECT_TRUE(lattice_equal(preimage_lattice(MatrixQ(MatrixQ::Identity(2, 2)), n), n));
  EXPECT_TRUE(lattice_equal(preimage_lattice(mat({{"t^(-1/2)"}}), Lattice::standard(1)), Lattice(mat({{"t^(1/2)"}}))));
  EXPECT_THROW(preimage_lattice(mat({{"0", "1"}, {"0", "0"}}), Lattice::standard(2)), SingularMap);
}

TEST(Preimage, InvertsImage) {
  Rng rng(59);
  const auto vals = valent::cli::valuation_grid(-2, 2, 3);
  for (int i = 0; i < 60; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ a = valent::cli::random_monomial_matrix(rng, n, n, vals, 0, 1);
    if (valent::rank(a) < n) continue;
    const Lattice target(valent::cli::random_invertible(rng, n));
    const Lattice pre = preimage_lattice(a, target);
    EXPECT_TRUE(lattice_equal(lattice_image(a, pre), target));
    EXPECT_TRUE(lattice_equal(pre, Lattice(multiply(inverse(a), target.generators()))));
  }
}

TEST(Rank, SpecExamples) {
  EXPECT_EQ(rank(Lattice::standard(2)), 2);
  EXPECT_EQ(rank(Lattice(3)), 0);
  EXPECT_EQ(rank(Lattice(mat({{"1", "t"}, {"0", "0"}}))), 1);
}

TEST(LatticeSum, MatchesConcatenatedGenerators) {
  Rng rng(61);
  for (int i = 0; i < 40; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ a = valent::cli::random_invertible(rng, n);
    const MatrixQ b = valent::cli::random_invertible(rng, n);
    MatrixQ both(n, 2 * n);
    both << a, b;
    const Lattice s = lattice_sum(Lattice(a), Lattice(b));
    EXPECT_TRUE(lattice_equal(s, Lattice(both)));
    EXPECT_TRUE(is_sublattice(Lattice(a), s));
    EXPECT_EQ(quotient_length(s, Lattice(both)), q(0));
  }
}
