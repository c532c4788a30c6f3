#include "valent/dense.hpp"

#include "valent/element_io.hpp"

namespace valent {

ExtRational content_valuation(const PolynomialQ& p) {
  ExtRational best = ExtRational::infinity();
  for (const auto& c : p.coeffs) best = std::min(best, c.valuation());
  return best;
}

std::string format_polynomial(const PolynomialQ& p) {
  if (p.is_zero_poly()) return "0";
  std::string out;
  for (long i = p.degree(); i >= 0; --i) {
    const FieldElement& c = p.coeffs[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string power = i == 0 ? "" : (i == 1 ? "X" : "X^" + std::to_string(i));
    if (i == 0) {
      out += "(" + format_element(c) + ")";
    } else if (c == FieldElement(1)) {
      out += power;
    } else {
      out += "(" + format_element(c) + ")*" + power;
    }
  }
  return out;
}

}  // namespace valent
