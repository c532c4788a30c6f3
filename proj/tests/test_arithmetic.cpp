#include <gtest/gtest.h>

#include <map>

#include "cases.hpp"
#include "valent/element_io.hpp"
#include "valent/errors.hpp"

using namespace valent;

namespace {

FieldElement el(const char* text) { return parse_element(text); }
ExtRational q(long n, long d = 1) { return ExtRational(n, d); }

// Dense Euclid over Q on integer-exponent polynomials, exponent -> coefficient.
using Dense = std::map<long, mpq_class>;

Dense dense_of(const PuiseuxPoly& p) {
  Dense d;
  for (std::size_t i = 0; i < p.size(); ++i) d[p.exponent(i).get_num().get_si()] = p.coefficient(i);
  return d;
}

Dense dense_rem(Dense a, const Dense& b) {
  const auto [bd, bc] = *b.rbegin();
  while (!a.empty() && a.rbegin()->first >= bd) {
    const auto [ad, ac] = *a.rbegin();
    const mpq_class f = ac / bc;
    for (const auto& [e, c] : b) {
      mpq_class& slot = a[e + ad - bd];
      slot -= f * c;
      if (slot == 0) a.erase(e + ad - bd);
    }
  }
  return a;
}

Dense dense_gcd(Dense a, Dense b) {
  while (!b.empty()) {
    Dense r = dense_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  const mpq_class lead = a.rbegin()->second;
  for (auto& [e, c] : a) c /= lead;
  return a;
}

}  // namespace

TEST(ExtRational, FormatsAndParses) {
  EXPECT_EQ(q(3, 6).to_string(), "1/2");
  EXPECT_EQ(q(-4, 2).to_string(), "-2");
  EXPECT_EQ(ExtRational::infinity().to_string(), "inf");
  EXPECT_EQ(ExtRational::parse("-7/21"), q(-1, 3));
  EXPECT_EQ(ExtRational::parse("inf"), ExtRational::infinity());
  EXPECT_THROW(ExtRational::parse("1/0"), InvalidArgument);
  EXPECT_THROW(ExtRational::parse("abc"), InvalidArgument);
}

TEST(ExtRational, InfinityAbsorbsAndOrders) {
  const ExtRational inf = ExtRational::infinity();
  EXPECT_EQ(inf + q(5), inf);
  EXPECT_EQ(q(-3) + inf, inf);
  EXPECT_LT(q(1000000), inf);
  EXPECT_GT(q(1, 3), q(1, 4));
  EXPECT_THROW(inf.value(), InvalidArgument);
  EXPECT_THROW(inf - inf, InvalidArgument);
  const std::vector<ExtRational> xs = {q(1, 2), inf, q(-1, 3)};
  EXPECT_EQ(min_of(xs), q(-1, 3));
  EXPECT_EQ(sum_of(xs), inf);
  EXPECT_EQ(min_of(std::vector<ExtRational>{}), inf);
}

TEST(Puiseux, CanonicalRamificationAndTerms) {
  const PuiseuxPoly a = PuiseuxPoly::monomial(2, mpq_class(1, 2));
  const PuiseuxPoly b = PuiseuxPoly::monomial(-2, mpq_class(2, 4));
  EXPECT_TRUE((a + b).is_zero());
  const PuiseuxPoly c = PuiseuxPoly::monomial(1, mpq_class(1, 3)) * PuiseuxPoly::monomial(1, mpq_class(1, 6));
  EXPECT_EQ(c.ramification(), 2);
  EXPECT_EQ(c.exponent(0), mpq_class(1, 2));
  EXPECT_THROW(PuiseuxPoly::monomial(1, -1), InvalidArgument);
  EXPECT_NO_THROW(LaurentPoly::monomial(1, -1));
}

TEST(Puiseux, GcdMatchesEuclidOracle) {
  valent::cli::Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    auto poly = [&](int terms) {
      PuiseuxPoly p;
      for (int k = 0; k < terms; ++k) p += PuiseuxPoly::monomial(rng.between(-3, 3), rng.between(0, 3));
      return p;
    };
    const PuiseuxPoly common = poly(2) + PuiseuxPoly(1);
    const PuiseuxPoly a = common * (poly(2) + PuiseuxPoly(2));
    const PuiseuxPoly b = common * (poly(2) + PuiseuxPoly(-1));
    if (a.is_zero() || b.is_zero() || a.is_monomial() || b.is_monomial()) continue;
    const PuiseuxPoly g = gcd(a, b);
    // Strip common t-powers on the oracle side, matching "ignoring monomial factors".
    auto strip = [](const PuiseuxPoly& p) { return p.shifted(-p.exponent(0)); };
    Dense expect = dense_gcd(dense_of(strip(a)), dense_of(strip(b)));
    Dense got = dense_of(strip(g));
    const mpq_class lead = got.rbegin()->second;
    for (auto& [e, c] : got) c /= lead;
    EXPECT_EQ(got, expect);
  }
}

TEST(Puiseux, SeriesDivisionInvertsMultiplication) {
  const LaurentPoly num = to_laurent(el("1 + t^(1/2)").numerator());
  const LaurentPoly den = to_laurent(el("2*t + t^(3/2) - t^3").numerator());
  const mpq_class bound(7, 2);
  const LaurentPoly s = divide_series(num, den, bound);
  EXPECT_EQ(s.valuation(), q(-1));
  // s * den agrees with num below bound + v(den).
  EXPECT_EQ(multiply_truncated(s, den, bound + 1), num.truncated_below(bound + 1));
}

TEST(FieldArith, SpecExamples) {
  EXPECT_EQ(el("t^(1/2)") * el("t^(1/3)"), el("t^(5/6)"));
  EXPECT_TRUE((el("t^(1/2)") + el("-t^(1/2)")).is_zero());
  EXPECT_EQ((FieldElement(1) / el("t^(2/3)")).valuation(), q(-2, 3));
  EXPECT_THROW(FieldElement(1) / FieldElement(), DivisionByZero);
}

TEST(FieldArith, DivisionRoundTrip) {
  valent::cli::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const FieldElement x = valent::cli::random_element(rng);
    const FieldElement y = valent::cli::random_element(rng);
    if (y.is_zero()) continue;
    EXPECT_EQ((x / y) * y, x);
    EXPECT_EQ((x - y) + y, x);
  }
}

TEST(FieldArith, CanonicalForm) {
  const FieldElement x = el("(2*t + 2*t^2)/(4*t^3 + 4*t^4)");
  EXPECT_EQ(x, el("(1)/(2*t^2)"));
  EXPECT_EQ(x.numerator(), PuiseuxPoly(mpq_class(1, 2)));
  EXPECT_EQ(x.denominator(), PuiseuxPoly::monomial(1, 2));
  EXPECT_EQ(x.valuation(), q(-2));
}

TEST(Valuation, SpecExamples) {
  EXPECT_EQ(el("t^(1/2) + t").valuation(), q(1, 2));
  EXPECT_EQ(el("(t+1)/(t^2)").valuation(), q(-2));
  EXPECT_EQ(FieldElement().valuation(), ExtRational::infinity());
  EXPECT_TRUE(el("t").in_ring());
  EXPECT_FALSE(el("t^-1").in_ring());
  EXPECT_TRUE(el("(1 + t)/(3 - t^2)").is_unit());
}

TEST(Monomial, SpecExamples) {
  EXPECT_EQ(monomial(mpq_class(1, 2)), el("t^(1/2)"));
  EXPECT_EQ(monomial(-1), FieldElement(1) / el("t"));
  EXPECT_EQ(monomial(0), FieldElement(1));
  EXPECT_EQ(monomial(mpq_class(2, 3), 5), el("5*t^(2/3)"));
  for (const auto& v : valent::cli::valuation_grid(-3, 3, 5)) EXPECT_EQ(monomial(v).valuation(), ExtRational(v));
}

TEST(ParseElement, SpecExamples) {
  const FieldElement a = el("3/2*t^(1/2) + 1");
  EXPECT_EQ(a.denominator(), PuiseuxPoly(1));
  EXPECT_EQ(a.numerator().size(), 2u);
  EXPECT_EQ(a.numerator().coefficient(1), mpq_class(3, 2));
  EXPECT_EQ(el("(t+1)/(t^2)").valuation(), q(-2));
  EXPECT_EQ(el("t^(-1/3)") * el("t^(1/3)"), FieldElement(1));
  EXPECT_EQ(el(" t ^ ( 2 ) "), el("t^2"));
  EXPECT_EQ(el("t^(4)"), el("t^4"));
}

TEST(ParseElement, RejectsMalformedInput) {
  for (const char* bad : {"", "t^", "t^(1/0)", "(t)/(0)", "1 +", "x", "t^(1/2", "3//4"}) {
    EXPECT_THROW(el(bad), Error) << bad;
  }
  try {
    el("1 + * t");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(FormatElement, RoundTripsAndUsesLaurentForm) {
  EXPECT_EQ(format_element(el("t^(-1/2)")), "t^(-1/2)");
  EXPECT_EQ(format_element(el("(1 + t)/(t)")), "t^-1 + 1");
  EXPECT_EQ(format_element(el("(1)/(1 + t)")), "(1)/(1 + t)");
  EXPECT_EQ(format_element(el("-3/2*t^(2/3)")), "-3/2*t^(2/3)");
  valent::cli::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const FieldElement x = valent::cli::random_element(rng);
    EXPECT_EQ(el(format_element(x).c_str()), x) << format_element(x);
  }
}

TEST(Truncation, SeriesOfRingElements) {
  const FieldElement x = el("(1)/(1 - t)");
  EXPECT_EQ(truncate_series(x, 3), el("1 + t + t^2").numerator());
  EXPECT_THROW(truncate_series(el("t^-1"), 2), InvalidArgument);
  EXPECT_EQ(from_laurent(laurent_series(el("(1)/(t - t^2)"), 1)), el("t^-1 + 1"));
}
