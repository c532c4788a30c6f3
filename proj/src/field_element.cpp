#include "valent/field_element.hpp"

#include <ostream>

#include "valent/element_io.hpp"
#include "valent/errors.hpp"

namespace valent {

FieldElement::FieldElement(const mpq_class& value) : num_(value) {}

FieldElement::FieldElement(PuiseuxPoly numerator) : num_(std::move(numerator)) {}

FieldElement::FieldElement(PuiseuxPoly numerator, PuiseuxPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  normalize();
}

void FieldElement::normalize() {
  if (den_.is_zero()) throw DivisionByZero("field_arith", "zero denominator");
  if (num_.is_zero()) {
    den_ = PuiseuxPoly(mpq_class(1));
    return;
  }
  const mpq_class low = std::min(num_.exponent(0), den_.exponent(0));
  if (low != 0) {
    num_ = num_.shifted(-low);
    den_ = den_.shifted(-low);
  }
  if (!den_.is_monomial() && !num_.is_monomial()) {
    PuiseuxPoly g = gcd(num_, den_);
    if (g.size() > 1) {
      num_ = PuiseuxPoly::divide_exact(num_, g);
      den_ = PuiseuxPoly::divide_exact(den_, g);
    }
  }
  if (den_.is_monomial() && num_.exponent(0) >= den_.exponent(0)) {
    num_ = PuiseuxPoly::divide_exact(num_, den_);
    den_ = PuiseuxPoly(mpq_class(1));
    return;
  }
  if (den_.lowest_coefficient() != 1) {
    const mpq_class scale = 1 / den_.lowest_coefficient();
    num_ = num_.scaled(scale);
    den_ = den_.scaled(scale);
  }
}

ExtRational FieldElement::valuation() const {
  if (is_zero()) return ExtRational::infinity();
  return ExtRational(mpq_class(num_.exponent(0) - den_.exponent(0)));
}

bool FieldElement::in_ring() const { return is_zero() || num_.exponent(0) >= den_.exponent(0); }

bool FieldElement::is_unit() const { return !is_zero() && num_.exponent(0) == den_.exponent(0); }

namespace {
bool is_one(const PuiseuxPoly& p) {
  return p.is_monomial() && p.terms().front().exponent == 0 && p.lowest_coefficient() == 1;
}
}  // namespace

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ = num_ + other.num_;
    if (is_one(den_)) return *this;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  }
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) { return *this += -other; }

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = FieldElement();
  const bool plain = is_one(den_) && is_one(other.den_);
  num_ = num_ * other.num_;
  if (plain) return *this;
  den_ = den_ * other.den_;
  normalize();
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& other) {
  if (other.is_zero()) throw DivisionByZero("field_arith", "division by zero");
  if (is_zero()) return *this;
  PuiseuxPoly num = num_ * other.den_;
  PuiseuxPoly den = den_ * other.num_;
  num_ = std::move(num);
  den_ = std::move(den);
  normalize();
  return *this;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.num_ = -r.num_;
  return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string FieldElement::to_string() const { return format_element(*this); }

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

FieldElement monomial(const mpq_class& q, const mpq_class& c) {
  if (c == 0) return {};
  if (q >= 0) return FieldElement(PuiseuxPoly::monomial(c, q));
  return FieldElement(PuiseuxPoly(c), PuiseuxPoly::monomial(1, -q));
}

PuiseuxPoly truncate_series(const FieldElement& x, const mpq_class& bound) {
  if (!x.in_ring()) throw InvalidArgument("truncate_series", "element outside the valuation ring");
  if (x.is_zero() || bound <= 0) return {};
  return to_puiseux(laurent_series(x, bound));
}

LaurentPoly laurent_series(const FieldElement& x, const mpq_class& bound) {
  if (x.is_zero()) return {};
  const LaurentPoly num = to_laurent(x.numerator());
  const PuiseuxPoly& den = x.denominator();
  if (den.is_monomial()) {
    return num.scaled(1 / den.lowest_coefficient()).shifted(-den.exponent(0)).truncated_below(bound);
  }
  return divide_series(num, to_laurent(den), bound);
}

FieldElement from_laurent(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  const mpq_class low = p.exponent(0);
  if (low >= 0) return FieldElement(to_puiseux(p));
  return FieldElement(to_puiseux(p.shifted(-low)), PuiseuxPoly::monomial(1, -low));
}

FieldElement pow(FieldElement base, unsigned exponent) {
  FieldElement result(1);
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace valent
