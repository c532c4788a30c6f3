#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "valent/ext_rational.hpp"

namespace valent {

/// Finite sum c_i t^(e_i / N) over Q. Terms are kept sorted by exponent with
/// no zero coefficients, and N (the ramification) is the smallest
/// denominator that expresses every exponent, so the representation is
/// canonical. With AllowNegative = false every exponent is >= 0 (Puiseux
/// polynomials); with true the exponents are unrestricted (Laurent-Puiseux
/// polynomials, used for truncated expansions).
template <bool AllowNegative>
class BasicPuiseux {
 public:
  struct Term {
    std::int64_t exponent;  // numerator over ramification()
    mpq_class coefficient;
  };

  BasicPuiseux() = default;
  explicit BasicPuiseux(const mpq_class& constant);

  static BasicPuiseux monomial(const mpq_class& coefficient, const mpq_class& exponent);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::int64_t ramification() const noexcept { return ramification_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  mpq_class exponent(std::size_t i) const;
  const mpq_class& coefficient(std::size_t i) const { return terms_[i].coefficient; }

  /// Exponent of the lowest term, INF for zero.
  ExtRational valuation() const;
  const mpq_class& lowest_coefficient() const { return terms_.front().coefficient; }

  BasicPuiseux operator-() const;
  template <bool B>
  friend BasicPuiseux<B> operator+(const BasicPuiseux<B>& a, const BasicPuiseux<B>& b);
  template <bool B>
  friend BasicPuiseux<B> operator*(const BasicPuiseux<B>& a, const BasicPuiseux<B>& b);
  template <bool B>
  friend bool operator==(const BasicPuiseux<B>& a, const BasicPuiseux<B>& b);

  BasicPuiseux& operator+=(const BasicPuiseux& other) { return *this = *this + other; }
  BasicPuiseux& operator-=(const BasicPuiseux& other) { return *this = *this + (-other); }

  BasicPuiseux scaled(const mpq_class& factor) const;
  /// Multiply by t^q (for Puiseux polynomials q >= -valuation()).
  BasicPuiseux shifted(const mpq_class& q) const;

  /// Terms with exponent strictly below the bound.
  BasicPuiseux truncated_below(const mpq_class& bound) const;
  /// Terms with exponent at or above the bound.
  BasicPuiseux tail_from(const mpq_class& bound) const;

  /// Exact quotient a / b in Q[t^(±1/N)] for the common ramification N;
  /// throws InvalidArgument if b does not divide a.
  static BasicPuiseux divide_exact(const BasicPuiseux& a, const BasicPuiseux& b);

  /// Rewrite with a ramification that is a multiple of the current one.
  std::vector<Term> terms_at(std::int64_t ramification) const;
  static BasicPuiseux from_terms(std::vector<Term> terms, std::int64_t ramification);

 private:
  void normalize();
  /// Largest exponent numerator (at ramification n) strictly below bound.
  static std::int64_t limit_at(const mpq_class& bound, std::int64_t n);

  std::int64_t ramification_ = 1;
  std::vector<Term> terms_;
};

template <bool B>
BasicPuiseux<B> operator-(const BasicPuiseux<B>& a, const BasicPuiseux<B>& b) {
  return a + (-b);
}

using PuiseuxPoly = BasicPuiseux<false>;
using LaurentPoly = BasicPuiseux<true>;

extern template class BasicPuiseux<false>;
extern template class BasicPuiseux<true>;

/// Monic-at-lowest-term gcd in Q[t^(1/N)] for the common ramification N,
/// ignoring monomial factors. Returns 1 when either argument is a monomial.
PuiseuxPoly gcd(const PuiseuxPoly& a, const PuiseuxPoly& b);

LaurentPoly to_laurent(const PuiseuxPoly& p);
/// Throws InvalidArgument on a negative exponent.
PuiseuxPoly to_puiseux(const LaurentPoly& p);

/// Terms of a * b with exponent strictly below the bound.
LaurentPoly multiply_truncated(const LaurentPoly& a, const LaurentPoly& b, const mpq_class& bound);

/// Expansion of num / den as a Laurent-Puiseux series at t = 0, keeping the
/// terms below the bound. den must be nonzero.
LaurentPoly divide_series(const LaurentPoly& num, const LaurentPoly& den, const mpq_class& bound);

namespace detail {
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);
}  // namespace detail

}  // namespace valent
