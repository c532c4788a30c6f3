#include "valent/puiseux.hpp"

#include <algorithm>
#include <numeric>

#include "valent/errors.hpp"

namespace valent {

namespace detail {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("puiseux", "exponent overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("puiseux", "exponent overflow");
  return r;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  return checked_mul(a / std::gcd(a, b), b);
}

}  // namespace detail

namespace {

using Dense = std::vector<mpq_class>;
using DenseZ = std::vector<mpz_class>;

template <class V>
void trim(V& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

mpq_class to_exponent(std::int64_t numerator, std::int64_t ramification) {
  mpq_class q(static_cast<long>(numerator), static_cast<unsigned long>(ramification));
  q.canonicalize();
  return q;
}

// Integer primitive part of a rational polynomial.
DenseZ primitive_integer(const Dense& p) {
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  DenseZ out(p.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = p[i].get_num() * (l / p[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1) {
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

void make_primitive(DenseZ& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

// Arithmetic modulo a 61-bit prime, used to detect coprime inputs cheaply.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mod_mul(r, a);
    a = mod_mul(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> reduce_mod_prime(const DenseZ& p) {
  std::vector<std::uint64_t> out(p.size());
  mpz_class m(std::to_string(kPrime));
  mpz_class r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    mpz_fdiv_r(r.get_mpz_t(), p[i].get_mpz_t(), m.get_mpz_t());
    out[i] = std::stoull(r.get_str());
  }
  return out;
}

// Degree of gcd modulo the prime, or -1 if a leading coefficient vanishes.
long modular_gcd_degree(const DenseZ& a, const DenseZ& b) {
  auto x = reduce_mod_prime(a);
  auto y = reduce_mod_prime(b);
  if (x.back() == 0 || y.back() == 0) return -1;
  while (!y.empty()) {
    const std::uint64_t inv = mod_pow(y.back(), kPrime - 2);
    while (x.size() >= y.size() && !x.empty()) {
      const std::uint64_t f = mod_mul(x.back(), inv);
      const std::size_t off = x.size() - y.size();
      for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        x[off + i] = (x[off + i] + kPrime - mod_mul(f, y[i])) % kPrime;
      }
      x.pop_back();
      trim(x);
    }
    std::swap(x, y);
  }
  return static_cast<long>(x.size()) - 1;
}

// Primitive polynomial remainder sequence over Z.
DenseZ integer_gcd(DenseZ a, DenseZ b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (modular_gcd_degree(a, b) == 0) return {1};
  while (!b.empty()) {
    const mpz_class lb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
      const mpz_class la = a.back();
      const std::size_t off = a.size() - b.size();
      for (auto& c : a) c *= lb;
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= la * b[i];
      trim(a);
      make_primitive(a);
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

template <bool N>
std::int64_t BasicPuiseux<N>::limit_at(const mpq_class& bound, std::int64_t n) {
  // e / n < bound  <=>  e < ceil(bound * n)
  mpq_class scaled = bound * n;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (!c.fits_slong_p()) return c > 0 ? INT64_MAX : INT64_MIN;
  return c.get_si();
}

template <bool N>
BasicPuiseux<N>::BasicPuiseux(const mpq_class& constant) {
  if (constant != 0) terms_.push_back({0, constant});
}

template <bool N>
BasicPuiseux<N> BasicPuiseux<N>::monomial(const mpq_class& coefficient, const mpq_class& exponent) {
  if (!N && exponent < 0) throw InvalidArgument("PuiseuxPoly", "negative exponent");
  BasicPuiseux p;
  if (coefficient == 0) return p;
  mpq_class e = exponent;
  e.canonicalize();
  if (!e.get_den().fits_slong_p() || !e.get_num().fits_slong_p()) {
    throw Overflow("PuiseuxPoly", "exponent out of range");
  }
  p.ramification_ = e.get_den().get_si();
  p.terms_.push_back({e.get_num().get_si(), coefficient});
  return p;
}

template <bool N>
mpq_class BasicPuiseux<N>::exponent(std::size_t i) const {
  return to_exponent(terms_[i].exponent, ramification_);
}

template <bool N>
ExtRational BasicPuiseux<N>::valuation() const {
  if (is_zero()) return ExtRational::infinity();
  return ExtRational(exponent(0));
}

template <bool N>
void BasicPuiseux<N>::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& term : terms_) {
    if (!merged.empty() && merged.back().exponent == term.exponent) {
      merged.back().coefficient += term.coefficient;
    } else {
      if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
      merged.push_back(std::move(term));
    }
  }
  if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
  terms_ = std::move(merged);

  std::int64_t g = ramification_;
  for (const auto& term : terms_) g = std::gcd(g, term.exponent);
  if (terms_.empty()) g = ramification_;
  if (g > 1) {
    ramification_ /= g;
    for (auto& term : terms_) term.exponent /= g;
  }
}

template <bool N>
std::vector<typename BasicPuiseux<N>::Term> BasicPuiseux<N>::terms_at(std::int64_t ramification) const {
  const std::int64_t factor = ramification / ramification_;
  std::vector<Term> out = terms_;
  if (factor != 1) {
    for (auto& term : out) term.exponent = detail::checked_mul(term.exponent, factor);
  }
  return out;
}

template <bool N>
BasicPuiseux<N> BasicPuiseux<N>::from_terms(std::vector<Term> terms, std::int64_t ramification) {
  BasicPuiseux p;
  p.ramification_ = ramification;
  p.terms_ = std::move(terms);
  p.normalize();
  if (!N && !p.terms_.empty() && p.terms_.front().exponent < 0) {
    throw InvalidArgument("PuiseuxPoly", "negative exponent");
  }
  return p;
}

template <bool N>
BasicPuiseux<N> BasicPuiseux<N>::operator-() const {
  BasicPuiseux p = *this;
  for (auto& term : p.terms_) term.coefficient = -term.coefficient;
  return p;
}

template <bool B>
BasicPuiseux<B> operator+(const BasicPuiseux<B>& a, const BasicPuiseux<B>& b) {
  using Term = typename BasicPuiseux<B>::Term;
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t n = detail::checked_lcm(a.ramification_, b.ramification_);
  auto ta = a.terms_at(n);
  auto tb = b.terms_at(n);
  std::vector<Term> out;
  out.reserve(ta.size() + tb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].exponent < tb[j].exponent)) {
      out.push_back(std::move(ta[i++]));
    } else if (i == ta.size() || tb[j].exponent < ta[i].exponent) {
      out.push_back(std::move(tb[j++]));
    } else {
      mpq_class c = ta[i].coefficient + tb[j].coefficient;
      if (c != 0) out.push_back({ta[i].exponent, std::move(c)});
      ++i;
      ++j;
    }
  }
  return BasicPuiseux<B>::from_terms(std::move(out), n);
}

template <bool B>
BasicPuiseux<B> operator*(const BasicPuiseux<B>& a, const BasicPuiseux<B>& b) {
  using Term = typename BasicPuiseux<B>::Term;
  if (a.is_zero() || b.is_zero()) return {};
  const std::int64_t n = detail::checked_lcm(a.ramification_, b.ramification_);
  const auto ta = a.terms_at(n);
  const auto tb = b.terms_at(n);
  std::vector<Term> out;
  out.reserve(ta.size() * tb.size());
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      out.push_back({detail::checked_add(x.exponent, y.exponent), x.coefficient * y.coefficient});
    }
  }
  return BasicPuiseux<B>::from_terms(std::move(out), n);
}

template <bool B>
bool operator==(const BasicPuiseux<B>& a, const BasicPuiseux<B>& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.terms_.empty()) return true;
  if (a.ramification_ != b.ramification_) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponent != b.terms_[i].exponent ||
        a.terms_[i].coefficient != b.terms_[i].coefficient) {
      return false;
    }
  }
  return true;
}

template <bool N>
BasicPuiseux<N> BasicPuiseux<N>::scaled(const mpq_class& factor) const {
  if (factor == 0) return {};
  BasicPuiseux p = *this;
  for (auto& term : p.terms_) term.coefficient *= factor;
  return p;
}

template <bool N>
BasicPuiseux<N> BasicPuiseux<N>::shifted(const mpq_class& q) const {
  if (is_zero() || q == 0) return *this;
  mpq_class e = q;
  e.canonicalize();
  if (!e.get_num().fits_slong_p() || !e.get_den().fits_slong_p()) {
    throw Overflow("PuiseuxPoly", "exponent out of range");
  }
  const std::int64_t qden = e.get_den().get_si();
  const std::int64_t n = detail::checked_lcm(ramification_, qden);
  const std::int64_t offset = detail::checked_mul(e.get_num().get_si(), n / qden);
  auto terms = terms_at(n);
  for (auto& term : terms) term.exponent = detail::checked_add(term.exponent, offset);
  if (!N && terms.front().exponent < 0) throw InvalidArgument("PuiseuxPoly", "shift below zero");
  return from_terms(std::move(terms), n);
}

template <bool N>
BasicPuiseux<N> BasicPuiseux<N>::truncated_below(const mpq_class& bound) const {
  if (is_zero()) return *this;
  const std::int64_t lim = limit_at(bound, ramification_);
  if (terms_.back().exponent < lim) return *this;
  std::vector<Term> kept;
  for (const auto& t : terms_) {
    if (t.exponent >= lim) break;
    kept.push_back(t);
  }
  return from_terms(std::move(kept), ramification_);
}

template <bool N>
BasicPuiseux<N> BasicPuiseux<N>::tail_from(const mpq_class& bound) const {
  if (is_zero()) return *this;
  const std::int64_t lim = limit_at(bound, ramification_);
  if (terms_.front().exponent >= lim) return *this;
  std::vector<Term> kept;
  for (const auto& t : terms_) {
    if (t.exponent >= lim) kept.push_back(t);
  }
  return from_terms(std::move(kept), ramification_);
}

template <bool N>
BasicPuiseux<N> BasicPuiseux<N>::divide_exact(const BasicPuiseux& a, const BasicPuiseux& b) {
  if (b.is_zero()) throw DivisionByZero("PuiseuxPoly", "division by zero polynomial");
  if (a.is_zero()) return {};
  if (b.is_monomial()) {
    return a.scaled(1 / b.lowest_coefficient()).shifted(-b.exponent(0));
  }
  const std::int64_t n = detail::checked_lcm(a.ramification_, b.ramification_);
  auto ta = a.terms_at(n);
  auto tb = b.terms_at(n);
  const std::int64_t sa = ta.front().exponent;
  const std::int64_t sb = tb.front().exponent;
  if (!N && sa < sb) throw InvalidArgument("PuiseuxPoly", "inexact division");
  Dense num(static_cast<std::size_t>(ta.back().exponent - sa) + 1);
  for (const auto& t : ta) num[static_cast<std::size_t>(t.exponent - sa)] = t.coefficient;
  Dense den(static_cast<std::size_t>(tb.back().exponent - sb) + 1);
  for (const auto& t : tb) den[static_cast<std::size_t>(t.exponent - sb)] = t.coefficient;
  if (num.size() < den.size()) throw InvalidArgument("PuiseuxPoly", "inexact division");

  const std::size_t dd = den.size() - 1;
  Dense quot(num.size() - dd);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const mpq_class factor = num[k + dd] / den.back();
    quot[k] = factor;
    if (factor == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) num[k + i] -= factor * den[i];
  }
  for (const auto& r : num) {
    if (r != 0) throw InvalidArgument("PuiseuxPoly", "inexact division");
  }
  std::vector<Term> out;
  for (std::size_t i = 0; i < quot.size(); ++i) {
    if (quot[i] != 0) out.push_back({static_cast<std::int64_t>(i) + (sa - sb), quot[i]});
  }
  return from_terms(std::move(out), n);
}

template class BasicPuiseux<false>;
template class BasicPuiseux<true>;
template PuiseuxPoly operator+(const PuiseuxPoly&, const PuiseuxPoly&);
template LaurentPoly operator+(const LaurentPoly&, const LaurentPoly&);
template PuiseuxPoly operator*(const PuiseuxPoly&, const PuiseuxPoly&);
template LaurentPoly operator*(const LaurentPoly&, const LaurentPoly&);
template bool operator==(const PuiseuxPoly&, const PuiseuxPoly&);
template bool operator==(const LaurentPoly&, const LaurentPoly&);

PuiseuxPoly gcd(const PuiseuxPoly& a, const PuiseuxPoly& b) {
  using Term = PuiseuxPoly::Term;
  const PuiseuxPoly one(mpq_class(1));
  if (a.is_zero() && b.is_zero()) return one;
  if (a.is_zero()) return b.scaled(1 / b.lowest_coefficient()).shifted(-b.exponent(0));
  if (b.is_zero()) return a.scaled(1 / a.lowest_coefficient()).shifted(-a.exponent(0));
  if (a.is_monomial() || b.is_monomial()) return one;

  const std::int64_t n = detail::checked_lcm(a.ramification(), b.ramification());
  auto ta = a.terms_at(n);
  auto tb = b.terms_at(n);
  const std::int64_t sa = ta.front().exponent;
  const std::int64_t sb = tb.front().exponent;
  std::int64_t step = 0;
  for (auto& t : ta) step = std::gcd(step, t.exponent -= sa);
  for (auto& t : tb) step = std::gcd(step, t.exponent -= sb);

  auto to_dense = [step](const std::vector<Term>& terms) {
    Dense d(static_cast<std::size_t>(terms.back().exponent / step) + 1);
    for (const auto& t : terms) d[static_cast<std::size_t>(t.exponent / step)] = t.coefficient;
    return primitive_integer(d);
  };
  DenseZ g = integer_gcd(to_dense(ta), to_dense(tb));
  if (g.size() <= 1) return one;
  std::vector<Term> out;
  std::size_t low = 0;
  while (g[low] == 0) ++low;
  for (std::size_t i = low; i < g.size(); ++i) {
    if (g[i] != 0) {
      mpq_class c(g[i], g[low]);
      c.canonicalize();
      out.push_back({detail::checked_mul(static_cast<std::int64_t>(i - low), step), c});
    }
  }
  return PuiseuxPoly::from_terms(std::move(out), n);
}

LaurentPoly to_laurent(const PuiseuxPoly& p) {
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.exponent, t.coefficient});
  return LaurentPoly::from_terms(std::move(terms), p.ramification());
}

PuiseuxPoly to_puiseux(const LaurentPoly& p) {
  std::vector<PuiseuxPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.exponent, t.coefficient});
  return PuiseuxPoly::from_terms(std::move(terms), p.ramification());
}

LaurentPoly multiply_truncated(const LaurentPoly& a, const LaurentPoly& b, const mpq_class& bound) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::int64_t n = detail::checked_lcm(a.ramification(), b.ramification());
  const auto ta = a.terms_at(n);
  const auto tb = b.terms_at(n);
  mpq_class scaled = bound * n;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const std::int64_t lim = c.fits_slong_p() ? c.get_si() : (c > 0 ? INT64_MAX : INT64_MIN);
  std::vector<LaurentPoly::Term> out;
  for (const auto& x : ta) {
    if (x.exponent + tb.front().exponent >= lim) break;
    for (const auto& y : tb) {
      const std::int64_t e = detail::checked_add(x.exponent, y.exponent);
      if (e >= lim) break;
      out.push_back({e, x.coefficient * y.coefficient});
    }
  }
  return LaurentPoly::from_terms(std::move(out), n);
}

LaurentPoly divide_series(const LaurentPoly& num, const LaurentPoly& den, const mpq_class& bound) {
  if (den.is_zero()) throw DivisionByZero("divide_series", "division by zero");
  if (num.is_zero()) return {};
  const mpq_class d0 = den.exponent(0);
  const mpq_class c0 = den.lowest_coefficient();
  // num / den = t^-d0 (num / u) with u = den t^-d0 a unit; u^-1 is needed to
  // precision bound + d0 - v(num).
  const mpq_class v_num = num.exponent(0);
  if (v_num - d0 >= bound) return {};
  const LaurentPoly unit = den.shifted(-d0);
  const LaurentPoly rest = unit - LaurentPoly(c0);  // all exponents > 0
  const mpq_class precision = bound + d0;
  LaurentPoly remainder = num.truncated_below(precision);
  LaurentPoly quotient;
  std::vector<LaurentPoly::Term> out;
  while (!remainder.is_zero() && remainder.exponent(0) < precision) {
    const mpq_class e = remainder.exponent(0);
    const mpq_class q = remainder.lowest_coefficient() / c0;
    quotient += LaurentPoly::monomial(q, e);
    const LaurentPoly lead = LaurentPoly::monomial(q, e);
    remainder = (remainder - LaurentPoly::monomial(remainder.lowest_coefficient(), e)) -
                multiply_truncated(lead, rest, precision);
  }
  return quotient.shifted(-d0);
}

}  // namespace valent
