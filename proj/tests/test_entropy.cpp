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

std::vector<ExtRational> repeat(const ExtRational& x, std::size_t n) { return std::vector<ExtRational>(n, x); }

// Closed form computed directly from the 2x2 characteristic polynomial:
// max(0, -min(v(tr), v(det))).
ExtRational iayf_2x2(const MatrixQ& a) {
  const ExtRational vt = (a(0, 0) + a(1, 1)).valuation();
  const ExtRational vd = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).valuation();
  const ExtRational m = std::min(vt, vd);
  return m >= q(0) ? q(0) : -m;
}

}  // namespace

TEST(Stabilization, WindowRule) {
  EXPECT_EQ(stabilization_step({q(3), q(2), q(1), q(1), q(1)}, 3), 3);
  EXPECT_EQ(stabilization_step({q(3), q(2), q(1), q(1)}, 3), std::nullopt);
  EXPECT_EQ(stabilization_step({q(0)}, 1), 1);
  EXPECT_EQ(default_horizon(3), 10);
}

TEST(EntIayf, SpecExamples) {
  const IayfResult integral = ent_iayf(VectorSpaceModule(mat({{"t", "1 + t^(1/2)"}, {"3", "t^2"}})));
  EXPECT_EQ(integral.report.value, q(0));
  EXPECT_EQ(integral.report.method, Method::iayf);
  EXPECT_EQ(ent_iayf(VectorSpaceModule(mat({{"t^(-1/2)"}}))).report.value, q(1, 2));
  const IayfResult companion = ent_iayf(VectorSpaceModule(mat({{"0", "t^-1"}, {"1", "0"}})));
  EXPECT_EQ(companion.report.value, q(1));
  EXPECT_EQ(companion.s.valuation(), q(1));
  EXPECT_EQ(content_valuation(companion.primitive), q(0));
}

TEST(EntIayf, MatchesHandComputed2x2) {
  Rng rng(83);
  const auto vals = valent::cli::valuation_grid(-2, 2, 3);
  for (int i = 0; i < 200; ++i) {
    const MatrixQ a = valent::cli::random_monomial_matrix(rng, 2, 2, vals);
    EXPECT_EQ(ent_iayf(VectorSpaceModule(a)).report.value, iayf_2x2(a));
  }
}

TEST(TrajectoryGrowth, SpecExamples) {
  const EntropyReport half = trajectory_growth(VectorSpaceModule(mat({{"t^(-1/2)"}})), Lattice::standard(1), 6);
  EXPECT_EQ(half.certificate.growth, repeat(q(1, 2), 6));
  EXPECT_EQ(half.value, q(1, 2));
  EXPECT_EQ(half.certificate.stabilized_at, 1);

  const EntropyReport id = trajectory_growth(VectorSpaceModule(MatrixQ(MatrixQ::Identity(3, 3))), Lattice::standard(3), 10);
  EXPECT_EQ(id.certificate.growth, repeat(q(0), 10));
  EXPECT_EQ(id.value, q(0));

  const EntropyReport b = trajectory_growth(BernoulliModule{{el("t^(1/3)")}}, 7);
  EXPECT_EQ(b.certificate.growth, repeat(q(1, 3), 7));
  EXPECT_EQ(b.value, q(1, 3));
}

TEST(TrajectoryGrowth, RejectsNonInertStart) {
  EXPECT_THROW(trajectory_growth(VectorSpaceModule(mat({{"0", "1"}, {"1", "0"}})), Lattice(mat({{"1"}, {"0"}})), 4),
               NotInert);
}

TEST(TrajectoryGrowth, UnstabilizedRunIsFlagged) {
  // Rank 3 needs a constant window of 4; a horizon of 2 cannot certify.
  const MatrixQ c = mat({{"0", "0", "t^-1"}, {"1", "0", "0"}, {"0", "1", "0"}});
  const EntropyReport r = trajectory_growth(VectorSpaceModule(c), Lattice::standard(3), 2);
  EXPECT_FALSE(r.certificate.stabilized_at.has_value());
  EXPECT_EQ(r.value, r.certificate.growth.back());
  EXPECT_EQ(r.value, q(1));
}

TEST(AntiTrajectory, SpecExamples) {
  const auto by_t = anti_trajectory_sequence(VectorSpaceModule(mat({{"t"}})), Lattice::standard(1), 4);
  for (Index n = 1; n <= 4; ++n) {
    EXPECT_TRUE(lattice_equal(by_t[static_cast<std::size_t>(n - 1)], Lattice(MatrixQ::Constant(1, 1, monomial(1 - n)))));
  }
  const VectorSpaceModule half(mat({{"t^(-1/2)"}}));
  for (Index n = 1; n <= 4; ++n) EXPECT_TRUE(lattice_equal(anti_trajectory(half, Lattice::standard(1), n), Lattice::standard(1)));
  const Lattice k(mat({{"t^2", "1"}, {"0", "t^-1"}}));
  EXPECT_TRUE(lattice_equal(anti_trajectory(VectorSpaceModule(MatrixQ(MatrixQ::Identity(2, 2))), k, 3), k));
  EXPECT_THROW(anti_trajectory(VectorSpaceModule(mat({{"0"}})), Lattice::standard(1), 2), SingularMap);
}

TEST(AntiTrajectoryCheck, SpecExamples) {
  const auto check = [](const char* phi, const ExtRational& expect) {
    const AntiTrajectoryCheck c = antitrajectory_length_check(VectorSpaceModule(mat({{phi}})), Lattice::standard(1), 6);
    EXPECT_TRUE(c.holds);
    ASSERT_EQ(c.table.size(), 6u);
    for (const auto& row : c.table) {
      EXPECT_EQ(row.trajectory_side, expect);
      EXPECT_EQ(row.anti_side, expect);
    }
  };
  check("t", q(0));
  check("t^(-1/2)", q(1, 2));
  check("1", q(0));
}

TEST(LimitFree, SpecExamples) {
  EXPECT_EQ(limit_free_value(VectorSpaceModule(mat({{"t^(-1/2)"}})), Lattice::standard(1)), q(1, 2));
  EXPECT_EQ(limit_free_value(VectorSpaceModule(MatrixQ(MatrixQ::Identity(2, 2))), Lattice::standard(2)), q(0));
  EXPECT_THROW(limit_free_value(VectorSpaceModule(mat({{"t"}})), Lattice::standard(1)), PreconditionFailed);
}

TEST(LimitFree, EqualsDeterminantValuation) {
  Rng rng(89);
  for (int i = 0; i < 40; ++i) {
    const Index n = rng.between(1, 3);
    // phi^-1 over R, so R^n is phi^-1-stable.
    const MatrixQ w = valent::cli::random_integral_nonsingular(rng, n);
    const MatrixQ phi = inverse(w);
    EXPECT_EQ(limit_free_value(VectorSpaceModule(phi), Lattice::standard(n)), -determinant(phi).valuation());
  }
}

TEST(BernoulliEntropy, SpecExamples) {
  EXPECT_EQ(bernoulli_entropy(BernoulliModule{{el("t^(1/3)")}}, 12).value, q(1, 3));
  EXPECT_EQ(bernoulli_entropy(BernoulliModule{{}}, 4).value, q(0));
  const EntropyReport two = bernoulli_entropy(BernoulliModule{{el("t"), el("t^(1/2)")}}, 5);
  EXPECT_EQ(two.value, q(3, 2));
  EXPECT_EQ(two.method, Method::bernoulli_closed_form);
  EXPECT_EQ(two.certificate.growth, repeat(q(3, 2), 5));
  EXPECT_TRUE(two.certificate.oracle_agrees);
}

TEST(CyclicAnalysis, SpecExamples) {
  VectorQ one(1);
  one << FieldElement(1);
  const CyclicAnalysis half = cyclic_trajectory_analysis(VectorSpaceModule(mat({{"t^(-1/2)"}})), one);
  EXPECT_EQ(half.rank, 1);
  EXPECT_EQ(half.s_valuation, q(1, 2));
  EXPECT_EQ(half.primitive, PolynomialQ({FieldElement(-1), el("t^(1/2)")}));
  EXPECT_TRUE(half.smith_pattern_holds);

  VectorQ e1(2);
  e1 << FieldElement(1), FieldElement(0);
  const CyclicAnalysis integral = cyclic_trajectory_analysis(VectorSpaceModule(mat({{"0", "t"}, {"1", "1"}})), e1);
  EXPECT_EQ(integral.rank, 2);
  EXPECT_TRUE(integral.free_basis);
  EXPECT_EQ(integral.s_valuation, q(0));
  EXPECT_EQ(integral.minimal_poly.leading(), FieldElement(1));
  EXPECT_TRUE(integral.s.is_unit());

  const CyclicAnalysis comp = cyclic_trajectory_analysis(VectorSpaceModule(mat({{"0", "t^-1"}, {"1", "0"}})), e1);
  EXPECT_EQ(comp.rank, 2);
  EXPECT_EQ(comp.s_valuation, q(1));
  ASSERT_EQ(comp.smith_tables.size(), 4u);
  for (const auto& table : comp.smith_tables) EXPECT_EQ(table, (std::vector<ExtRational>{q(0), q(1)}));
}

TEST(CyclicAnalysis, NonFreeVector) {
  VectorQ x(2);
  x << FieldElement(1), FieldElement(0);
  const CyclicAnalysis a = cyclic_trajectory_analysis(VectorSpaceModule(mat({{"t^-1", "0"}, {"0", "t"}})), x);
  EXPECT_EQ(a.rank, 1);
  EXPECT_EQ(a.s_valuation, q(1));
  EXPECT_THROW(cyclic_trajectory_analysis(VectorSpaceModule(mat({{"t"}})), VectorQ::Zero(1)), ZeroVector);
}

TEST(Entropy, SpecExamples) {
  const MatrixQ blocks = block_diagonal(mat({{"t^-1"}}), mat({{"t^(-1/3)"}}));
  EXPECT_EQ(entropy(VectorSpaceModule(blocks)).value, q(4, 3));
  EXPECT_EQ(trajectory_growth(VectorSpaceModule(blocks), Lattice::standard(2), 8).value, q(4, 3));

  MatrixQ shift = MatrixQ::Zero(2, 2);
  shift(1, 0) = FieldElement(1);
  const EntropyReport torsion = entropy(Module{TorsionModule({el("t"), el("t^(1/2)")}, shift)});
  EXPECT_EQ(torsion.value, q(0));
  ASSERT_FALSE(torsion.certificate.growth.empty());
  EXPECT_EQ(torsion.certificate.growth.front(), q(0));

  EXPECT_EQ(entropy(VectorSpaceModule(MatrixQ(0, 0))).value, q(0));
  EXPECT_EQ(entropy(Module{FreePolynomialModule{}}).value, ExtRational::infinity());
}

TEST(Entropy, DispatchesThroughHyperkernel) {
  const MatrixQ phi = block_diagonal(mat({{"0", "t^-5"}, {"0", "0"}}), mat({{"t^(-2/3)"}}));
  const EntropyReport r = entropy(VectorSpaceModule(phi));
  EXPECT_EQ(r.value, q(2, 3));
  EXPECT_EQ(r.certificate.rank, 1);
  EXPECT_TRUE(r.certificate.oracle_agrees);
}

TEST(Entropy, DirectSumAddsParts) {
  const Module sum = direct_sum({Module{VectorSpaceModule(mat({{"t^(-1/2)"}}))}, Module{BernoulliModule{{el("t^(1/4)")}}},
                                 Module{TorsionModule({el("t")})}});
  EXPECT_EQ(entropy(sum).value, q(3, 4));
  EXPECT_EQ(entropy(direct_sum({sum, Module{FreePolynomialModule{}}})).value, ExtRational::infinity());
}

TEST(AdditionCheck, SpecExamples) {
  const AdditionCheck c = addition_check(VectorSpaceModule(mat({{"t^-1", "1"}, {"0", "t^(-1/3)"}})), 1);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.full.value, q(4, 3));
  EXPECT_EQ(c.invariant_part.value, q(1));
  EXPECT_EQ(c.quotient_part.value, q(1, 3));

  EXPECT_TRUE(addition_check(VectorSpaceModule(block_diagonal(mat({{"t^-2"}}), mat({{"t"}}))), 1).holds);
  const AdditionCheck integral = addition_check(VectorSpaceModule(mat({{"t", "t^-4"}, {"0", "1 + t"}})), 1);
  EXPECT_TRUE(integral.holds);
  EXPECT_EQ(integral.full.value, q(0));
  EXPECT_THROW(addition_check(VectorSpaceModule(mat({{"1", "0"}, {"1", "1"}})), 1), NotBlockTriangular);
}

TEST(Properties, ConjugationInvariance) {
  Rng rng(97);
  const auto vals = valent::cli::valuation_grid(-2, 1, 2);
  for (int i = 0; i < 40; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ phi = valent::cli::random_monomial_matrix(rng, n, n, vals);
    const MatrixQ u = valent::cli::random_invertible(rng, n);
    const MatrixQ psi = multiply(multiply(u, phi), inverse(u));
    EXPECT_EQ(char_poly(psi), char_poly(phi));
    const EntropyReport a = trajectory_growth(VectorSpaceModule(phi), Lattice::standard(n), default_horizon(n));
    const EntropyReport b = trajectory_growth(VectorSpaceModule(psi), Lattice::standard(n), default_horizon(n));
    EXPECT_EQ(a.value, b.value);
  }
}

TEST(Properties, UpperContinuityOverStartingLattices) {
  Rng rng(101);
  const auto vals = valent::cli::valuation_grid(-2, 1, 2);
  for (int i = 0; i < 20; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ phi = valent::cli::random_monomial_matrix(rng, n, n, vals);
    const ExtRational e = entropy(VectorSpaceModule(phi)).value;
    ExtRational best = q(0);
    for (int f = 0; f < 3; ++f) {
      const EntropyReport r =
          trajectory_growth(VectorSpaceModule(phi), Lattice(valent::cli::random_invertible(rng, n)), default_horizon(n));
      ASSERT_TRUE(r.certificate.stabilized_at);
      best = std::max(best, r.value);
    }
    EXPECT_EQ(best, e);
  }
}

TEST(Properties, LimitFreeBoundedByEntropy) {
  Rng rng(103);
  const auto vals = valent::cli::valuation_grid(-1, 1, 2);
  for (int i = 0; i < 30; ++i) {
    const Index n = rng.between(1, 2);
    const MatrixQ phi = valent::cli::random_monomial_matrix(rng, n, n, vals, 0, 1);
    if (valent::rank(phi) < n) continue;
    const VectorSpaceModule m(phi);
    // N = A_j once stable, or any phi^-1-stable lattice.
    const auto anti = anti_trajectory_sequence(m, Lattice::standard(n), 6);
    const ExtRational e = entropy(m).value;
    for (std::size_t j = 0; j + 1 < anti.size(); ++j) {
      if (!lattice_equal(anti[j], anti[j + 1])) continue;
      EXPECT_EQ(limit_free_value(m, anti[j]), e);
      break;
    }
  }
}
