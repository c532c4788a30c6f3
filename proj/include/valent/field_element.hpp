#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <iosfwd>
#include <string>

#include "valent/ext_rational.hpp"
#include "valent/puiseux.hpp"

namespace valent {

/// Element of the Puiseux-fraction field Q: numerator / denominator, both
/// finite Puiseux polynomials. Stored with the common monomial factor and
/// the polynomial gcd removed, and the denominator's lowest coefficient 1.
/// The valuation v(x) = v(num) - v(den) has value group the rationals; the
/// valuation ring R is {x : v(x) >= 0}.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(int value) : FieldElement(mpq_class(value)) {}  // NOLINT
  FieldElement(long value) : FieldElement(mpq_class(value)) {}  // NOLINT
  FieldElement(const mpq_class& value);                          // NOLINT
  explicit FieldElement(PuiseuxPoly numerator);
  FieldElement(PuiseuxPoly numerator, PuiseuxPoly denominator);

  const PuiseuxPoly& numerator() const noexcept { return num_; }
  const PuiseuxPoly& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  ExtRational valuation() const;
  /// v(x) >= 0.
  bool in_ring() const;
  /// v(x) == 0.
  bool is_unit() const;

  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  /// Cross-multiplication: num_a * den_b == num_b * den_a.
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string to_string() const;

 private:
  void normalize();

  PuiseuxPoly num_;
  PuiseuxPoly den_{mpq_class(1)};
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

/// c * t^q for any rational q (negative q gives 1 / t^(-q)).
FieldElement monomial(const mpq_class& q, const mpq_class& c = 1);
inline FieldElement monomial(long num, long den, long c = 1) {
  return monomial(mpq_class(num, den), mpq_class(c));
}

inline ExtRational valuation(const FieldElement& x) { return x.valuation(); }

/// Power-series expansion of x (which must lie in R) truncated to the terms
/// of exponent strictly below `bound`. x - result has valuation >= bound.
PuiseuxPoly truncate_series(const FieldElement& x, const mpq_class& bound);

/// Laurent-Puiseux expansion of x at t = 0 with the terms below the bound.
LaurentPoly laurent_series(const FieldElement& x, const mpq_class& bound);
FieldElement from_laurent(const LaurentPoly& p);

FieldElement pow(FieldElement base, unsigned exponent);

}  // namespace valent

namespace Eigen {

template <>
struct NumTraits<valent::FieldElement> : GenericNumTraits<valent::FieldElement> {
  using Real = valent::FieldElement;
  using NonInteger = valent::FieldElement;
  using Nested = valent::FieldElement;
  using Literal = valent::FieldElement;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 200,
    MulCost = 400
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 10,
    MulCost = 10
  };
};

}  // namespace Eigen
