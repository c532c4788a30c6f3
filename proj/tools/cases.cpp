#include "cases.hpp"

#include <algorithm>

namespace valent::cli {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  // Rejection sampling keeps the draw unbiased and independent of the
  // standard library's distribution implementation.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::vector<mpq_class> valuation_grid(long lo, long hi, long max_den) {
  std::vector<mpq_class> out;
  for (long q = 1; q <= max_den; ++q) {
    for (long p = lo * q; p <= hi * q; ++p) {
      mpq_class x(p, q);
      x.canonicalize();
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FieldElement random_monomial(Rng& rng, const std::vector<mpq_class>& valuations, std::uint64_t zero_num,
                             std::uint64_t zero_den) {
  if (rng.chance(zero_num, zero_den)) return {};
  long c = rng.between(1, 3);
  if (rng.chance(1, 2)) c = -c;
  return monomial(rng.pick(valuations), mpq_class(c));
}

FieldElement random_element(Rng& rng) {
  static const std::vector<mpq_class> exps = valuation_grid(0, 2, 3);
  auto poly = [&](long terms) {
    PuiseuxPoly p;
    for (long i = 0; i < terms; ++i) {
      long c = rng.between(1, 4);
      if (rng.chance(1, 2)) c = -c;
      p += PuiseuxPoly::monomial(mpq_class(c), rng.pick(exps));
    }
    return p;
  };
  PuiseuxPoly num = poly(rng.between(1, 3));
  if (num.is_zero()) num = PuiseuxPoly(mpq_class(1));
  PuiseuxPoly den = poly(rng.between(1, 2));
  if (den.is_zero()) den = PuiseuxPoly(mpq_class(1));
  return FieldElement(num, den);
}

MatrixQ random_monomial_matrix(Rng& rng, Index rows, Index cols, const std::vector<mpq_class>& valuations,
                               std::uint64_t zero_num, std::uint64_t zero_den) {
  MatrixQ m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = random_monomial(rng, valuations, zero_num, zero_den);
  }
  return m;
}

MatrixQ random_invertible(Rng& rng, Index n) {
  static const std::vector<mpq_class> vals = valuation_grid(-1, 1, 2);
  MatrixQ l = MatrixQ::Identity(n, n);
  MatrixQ u = MatrixQ::Identity(n, n);
  MatrixQ d = MatrixQ::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = random_monomial(rng, vals, 0, 1);
    for (Index j = 0; j < i; ++j) {
      l(i, j) = random_monomial(rng, vals, 1, 3);
      u(j, i) = random_monomial(rng, vals, 1, 3);
    }
  }
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (Index i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
  MatrixQ p = MatrixQ::Zero(n, n);
  for (Index i = 0; i < n; ++i) p(i, perm[static_cast<std::size_t>(i)]) = FieldElement(1);
  return multiply(p, multiply(l, multiply(d, u)));
}

MatrixQ random_integral_nonsingular(Rng& rng, Index n) {
  static const std::vector<mpq_class> vals = valuation_grid(0, 2, 2);
  for (;;) {
    MatrixQ m = random_monomial_matrix(rng, n, n, vals, 1, 4);
    if (valent::rank(m) == n) return m;
  }
}

MatrixQ random_block_triangular(Rng& rng, Index r, Index s, const std::vector<mpq_class>& valuations) {
  MatrixQ m = MatrixQ::Zero(r + s, r + s);
  m.topLeftCorner(r, r) = random_monomial_matrix(rng, r, r, valuations);
  m.topRightCorner(r, s) = random_monomial_matrix(rng, r, s, valuations);
  m.bottomRightCorner(s, s) = random_monomial_matrix(rng, s, s, valuations);
  return m;
}

std::vector<FieldElement> random_cell(Rng& rng, Index cells) {
  static const std::vector<mpq_class> vals = [] {
    auto g = valuation_grid(0, 2, 4);
    g.erase(std::remove_if(g.begin(), g.end(), [](const mpq_class& q) { return q <= 0; }), g.end());
    return g;
  }();
  std::vector<FieldElement> out;
  for (Index i = 0; i < cells; ++i) {
    FieldElement a = monomial(rng.pick(vals), mpq_class(rng.between(1, 3)));
    // Occasionally a non-monomial annihilator of the same valuation.
    if (rng.chance(1, 4)) a += monomial(a.valuation().value() + 1);
    out.push_back(std::move(a));
  }
  return out;
}

TorsionModule random_torsion(Rng& rng, Index cells) {
  static const std::vector<mpq_class> vals = valuation_grid(0, 2, 2);
  auto ann = random_cell(rng, cells);
  MatrixQ phi(cells, cells);
  for (Index i = 0; i < cells; ++i) {
    for (Index j = 0; j < cells; ++j) {
      FieldElement x = random_monomial(rng, vals, 1, 3);
      if (x.is_zero()) {
        phi(i, j) = x;
        continue;
      }
      // Raise the valuation until the entry descends to the quotient.
      const ExtRational need = ann[static_cast<std::size_t>(i)].valuation() - ann[static_cast<std::size_t>(j)].valuation();
      if (x.valuation() < need) x *= monomial(need.value() - x.valuation().value());
      phi(i, j) = x;
    }
  }
  return TorsionModule(std::move(ann), std::move(phi));
}

}  // namespace valent::cli
