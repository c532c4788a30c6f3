#include "valent/element_io.hpp"

#include <cctype>

#include "valent/errors.hpp"

namespace valent {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FieldElement element() {
    FieldElement value;
    if (peek() == '(') {
      expect('(');
      FieldElement num = sum();
      expect(')');
      expect('/');
      expect('(');
      const std::size_t den_pos = pos_;
      FieldElement den = sum();
      expect(')');
      if (den.is_zero()) throw ParseError("zero denominator", den_pos);
      value = num / den;
    } else {
      value = sum();
    }
    if (peek() != '\0') throw ParseError("unexpected character '" + std::string(1, peek()) + "'", pos_);
    return value;
  }

 private:
  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  mpz_class integer() {
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected integer", start);
    mpz_class value(std::string(text_.substr(start, pos_ - start)));
    return negative ? mpz_class(-value) : value;
  }

  mpq_class exponent() {
    if (peek() == '(') {
      ++pos_;
      const mpz_class num = integer();
      mpz_class den = 1;
      const std::size_t den_pos = pos_;
      if (peek() == '/') {
        ++pos_;
        den = integer();
      }
      if (den == 0) throw ParseError("zero exponent denominator", den_pos);
      expect(')');
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    return mpq_class(integer());
  }

  FieldElement power(const mpq_class& coefficient) {
    expect('t');
    mpq_class e = 1;
    if (peek() == '^') {
      ++pos_;
      e = exponent();
    }
    return monomial(e, coefficient);
  }

  FieldElement term(bool negate) {
    if (peek() == 't') return power(negate ? mpq_class(-1) : mpq_class(1));
    mpq_class c(integer());
    if (peek() == '/') {
      ++pos_;
      const std::size_t den_pos = pos_;
      const mpz_class den = integer();
      if (den == 0) throw ParseError("zero coefficient denominator", den_pos);
      c /= mpq_class(den);
    }
    if (negate) c = -c;
    if (peek() == '*') {
      ++pos_;
      return power(c);
    }
    return FieldElement(c);
  }

  FieldElement sum() {
    bool negate = false;
    if (peek() == '+') {
      ++pos_;
    } else if (peek() == '-' && pos_ + 1 < text_.size() && !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      negate = true;
    }
    FieldElement total = term(negate);
    while (peek() == '+' || peek() == '-') {
      const bool minus = text_[pos_] == '-';
      ++pos_;
      total += term(minus);
    }
    return total;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_exponent(const mpq_class& e) {
  if (e.get_den() == 1) return e.get_str();
  return "(" + e.get_str() + ")";
}

template <bool N>
std::string format_terms(const BasicPuiseux<N>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    mpq_class c = p.coefficient(i);
    const mpq_class e = p.exponent(i);
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    if (e == 0) {
      out += c.get_str();
      continue;
    }
    if (c != 1) out += c.get_str() + "*";
    out += "t";
    if (e != 1) out += "^" + format_exponent(e);
  }
  return out;
}

}  // namespace

FieldElement parse_element(std::string_view text) { return Parser(text).element(); }

std::string format_poly(const PuiseuxPoly& p) { return format_terms(p); }

std::string format_element(const FieldElement& x) {
  const PuiseuxPoly& den = x.denominator();
  if (den.is_monomial()) {
    const mpq_class q = den.exponent(0);
    return format_terms(to_laurent(x.numerator()).scaled(1 / den.lowest_coefficient()).shifted(-q));
  }
  return "(" + format_poly(x.numerator()) + ")/(" + format_poly(den) + ")";
}

}  // namespace valent
