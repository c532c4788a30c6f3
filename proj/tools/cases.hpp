#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "valent/entropy.hpp"

namespace valent::cli {

/// Seeded generator with a portable bounded draw, so a seed reproduces the
/// same cases on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Rationals p/q with q <= max_den and lo <= p/q <= hi, sorted.
std::vector<mpq_class> valuation_grid(long lo, long hi, long max_den);

/// c t^q with q from `valuations` and c in ±1..3; zero with probability zero_num/zero_den.
FieldElement random_monomial(Rng& rng, const std::vector<mpq_class>& valuations, std::uint64_t zero_num = 1,
                             std::uint64_t zero_den = 6);
/// Sum of one to three monomials over a one- or two-term denominator.
FieldElement random_element(Rng& rng);
MatrixQ random_monomial_matrix(Rng& rng, Index rows, Index cols, const std::vector<mpq_class>& valuations,
                               std::uint64_t zero_num = 1, std::uint64_t zero_den = 6);

/// P L D U with L, U unipotent, D diagonal monomials and P a permutation:
/// invertible, with an inverse whose entries are again Laurent polynomials.
MatrixQ random_invertible(Rng& rng, Index n);
/// Square matrix over R with nonzero determinant.
MatrixQ random_integral_nonsingular(Rng& rng, Index n);
/// [[A, B], [0, C]] with A of size r.
MatrixQ random_block_triangular(Rng& rng, Index r, Index s, const std::vector<mpq_class>& valuations);
/// Cell annihilators with positive valuations.
std::vector<FieldElement> random_cell(Rng& rng, Index cells);
/// Torsion presentation with a random compatible action.
TorsionModule random_torsion(Rng& rng, Index cells);

}  // namespace valent::cli
