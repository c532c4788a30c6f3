#include "valent/lattice.hpp"

#include <algorithm>

namespace valent {

namespace {

bool all_zero(const SeriesColumn& c) {
  return std::all_of(c.begin(), c.end(), [](const LaurentPoly& x) { return x.is_zero(); });
}

SeriesColumns series_of(const MatrixQ& g, const mpq_class& bound) {
  SeriesColumns cols(static_cast<std::size_t>(g.cols()), SeriesColumn(static_cast<std::size_t>(g.rows())));
  for (Index c = 0; c < g.cols(); ++c) {
    for (Index r = 0; r < g.rows(); ++r) {
      if (!g(r, c).is_zero()) cols[c][r] = laurent_series(g(r, c), bound);
    }
  }
  return cols;
}

MatrixQ exact_of(const SeriesColumns& cols, Index n) {
  MatrixQ m(n, static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (Index r = 0; r < n; ++r) m(r, static_cast<Index>(c)) = from_laurent(cols[c][r]);
  }
  return m;
}

MatrixQ concat(const MatrixQ& a, const MatrixQ& b) {
  MatrixQ g(a.rows(), a.cols() + b.cols());
  g.leftCols(a.cols()) = a;
  g.rightCols(b.cols()) = b;
  return g;
}

mpq_class matrix_min_valuation(const MatrixQ& m) {
  std::optional<mpq_class> best;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      const mpq_class v = m(i, j).valuation().value();
      if (!best || v < *best) best = v;
    }
  }
  return best.value_or(mpq_class(0));
}

void axpy_column(MatrixQ& m, Index target, const FieldElement& factor, Index source) {
  for (Index r = 0; r < m.rows(); ++r) {
    if (!m(r, source).is_zero()) m(r, target) -= factor * m(r, source);
  }
}

// Column echelon form over FieldElements; used when no floor is available.
MatrixQ echelon(const MatrixQ& generators, std::vector<Index>& pivot_rows) {
  MatrixQ g = generators;
  const Index n = g.rows();
  std::vector<Index> active;
  for (Index c = 0; c < g.cols(); ++c) {
    for (Index r = 0; r < n; ++r) {
      if (!g(r, c).is_zero()) {
        active.push_back(c);
        break;
      }
    }
  }
  std::vector<Index> basis;
  for (Index row = 0; row < n && !active.empty(); ++row) {
    auto best = active.end();
    ExtRational best_val = ExtRational::infinity();
    for (auto it = active.begin(); it != active.end(); ++it) {
      const ExtRational v = g(row, *it).valuation();
      if (v < best_val) {
        best_val = v;
        best = it;
      }
    }
    if (best == active.end()) continue;
    const Index pivot = *best;
    active.erase(best);
    for (Index c : active) {
      if (g(row, c).is_zero()) continue;
      axpy_column(g, c, g(row, c) / g(row, pivot), pivot);
    }
    basis.push_back(pivot);
    pivot_rows.push_back(row);
  }

  for (std::size_t q = 0; q < basis.size(); ++q) {
    const Index row = pivot_rows[q];
    const FieldElement& pivot = g(row, basis[q]);
    const ExtRational pivot_val = pivot.valuation();
    for (std::size_t p = 0; p < q; ++p) {
      const FieldElement& entry = g(row, basis[p]);
      if (entry.is_zero() || entry.valuation() < pivot_val) continue;
      axpy_column(g, basis[p], entry / pivot, basis[q]);
    }
  }

  MatrixQ out(n, static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) out.col(static_cast<Index>(k)) = g.col(basis[k]);
  return out;
}

// x ∈ L for a Hermite lattice, with x given by expansions below the floor.
bool series_member(SeriesColumn x, const Lattice& l) {
  const mpq_class& floor = *l.floor();
  const auto& h = l.hermite_columns();
  const auto& d = l.pivot_valuations();
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j].is_zero()) continue;
    if (x[j].exponent(0) < d[j]) return false;
    const LaurentPoly c = x[j].shifted(-d[j]);
    for (std::size_t r = j + 1; r < n; ++r) {
      if (!h[j][r].is_zero()) x[r] -= multiply_truncated(c, h[j][r], floor);
    }
  }
  return true;
}

// Smith invariants of a square matrix over R whose determinant has valuation
// `total`; entries are reduced modulo t^(total + 1).
std::vector<ExtRational> smith_truncated(std::vector<std::vector<LaurentPoly>> c, const mpq_class& total) {
  const std::size_t r = c.size();
  const mpq_class bound = total + 1;
  for (auto& row : c) {
    for (auto& x : row) x = x.truncated_below(bound);
  }
  std::vector<ExtRational> invariants;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t bi = r;
    std::size_t bj = r;
    std::optional<mpq_class> best;
    for (std::size_t i = k; i < r; ++i) {
      for (std::size_t j = k; j < r; ++j) {
        if (c[i][j].is_zero()) continue;
        const mpq_class v = c[i][j].exponent(0);
        if (!best || v < *best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (!best) throw InvalidArgument("smith_invariants", "ranks differ");
    std::swap(c[k], c[bi]);
    for (auto& row : c) std::swap(row[k], row[bj]);
    invariants.emplace_back(*best);
    const mpq_class v = *best;
    // Rescale the pivot row by a unit so the pivot becomes t^v.
    if (!c[k][k].is_monomial() || c[k][k].lowest_coefficient() != 1) {
      const LaurentPoly w = divide_series(LaurentPoly::monomial(1, v), c[k][k], bound);
      for (std::size_t j = k; j < r; ++j) c[k][j] = multiply_truncated(w, c[k][j], bound);
      c[k][k] = LaurentPoly::monomial(1, v);
    }
    for (std::size_t i = k + 1; i < r; ++i) {
      if (c[i][k].is_zero()) continue;
      const LaurentPoly factor = c[i][k].shifted(-v);
      for (std::size_t j = k + 1; j < r; ++j) {
        if (!c[k][j].is_zero()) c[i][j] -= multiply_truncated(factor, c[k][j], bound);
      }
      c[i][k] = LaurentPoly();
    }
  }
  std::sort(invariants.begin(), invariants.end());
  return invariants;
}

}  // namespace

SeriesMatrix::SeriesMatrix(MatrixQ m)
    : m_(std::move(m)),
      min_valuation_(matrix_min_valuation(m_)),
      cache_(static_cast<std::size_t>(m_.size())),
      precision_(static_cast<std::size_t>(m_.size())),
      exact_(static_cast<std::size_t>(m_.size())) {}

LaurentPoly SeriesMatrix::entry(Index i, Index j, const mpq_class& bound) const {
  const FieldElement& x = m_(i, j);
  if (x.is_zero()) return {};
  const auto k = static_cast<std::size_t>(j * m_.rows() + i);
  if (!exact_[k] && (!precision_[k] || *precision_[k] < bound)) {
    if (x.denominator().is_monomial()) {
      // Finite expansion: keep all of it.
      const PuiseuxPoly& num = x.numerator();
      const mpq_class top = num.exponent(num.size() - 1) - x.denominator().exponent(0) + 1;
      cache_[k] = laurent_series(x, top);
      precision_[k] = std::max(top, bound);
      exact_[k] = true;
    } else {
      cache_[k] = laurent_series(x, bound);
      precision_[k] = bound;
    }
  }
  return cache_[k].truncated_below(bound);
}

Lattice::Lattice(Index ambient_dim)
    : ambient_dim_(ambient_dim),
      generators_(std::make_shared<const MatrixQ>(ambient_dim, 0)),
      normalized_(true) {
  if (ambient_dim == 0) {
    floor_ = mpq_class(0);
    hermite_form_ = true;
  }
}

Lattice::Lattice(MatrixQ generators)
    : ambient_dim_(generators.rows()),
      generator_count_(generators.cols()),
      generators_(std::make_shared<const MatrixQ>(std::move(generators))) {}

Lattice::Lattice(MatrixQ generators, const mpq_class& floor) : Lattice(std::move(generators)) { floor_ = floor; }

Lattice Lattice::blank(Index n, Index generator_count) {
  Lattice l;
  l.ambient_dim_ = n;
  l.generator_count_ = generator_count;
  l.generators_.reset();
  l.normalized_ = false;
  l.floor_.reset();
  l.hermite_form_ = false;
  return l;
}

Lattice Lattice::standard(Index n) {
  SeriesColumns cols(static_cast<std::size_t>(n), SeriesColumn(static_cast<std::size_t>(n)));
  for (Index i = 0; i < n; ++i) cols[i][i] = LaurentPoly(mpq_class(1));
  return hermite_from_series(n, std::move(cols), 0);
}

const MatrixQ& Lattice::generators() const {
  if (!generators_) {
    generators_ = std::make_shared<const MatrixQ>(hermite_form_ ? exact_of(hermite_, ambient_dim_) : exact_());
  }
  return *generators_;
}

SeriesColumns Lattice::generator_series(const mpq_class& bound) const {
  if (hermite_form_) {
    SeriesColumns out = hermite_;
    for (auto& col : out) {
      for (auto& x : col) x = x.truncated_below(bound);
    }
    return out;
  }
  if (series_) return series_(bound);
  return series_of(generators(), bound);
}

Lattice hermite_from_series(Index n, SeriesColumns generators, const mpq_class& floor) {
  const auto dim = static_cast<std::size_t>(n);
  const mpq_class& top = floor;
  std::vector<SeriesColumn> active;
  for (auto& col : generators) {
    for (auto& x : col) x = x.truncated_below(top);
    if (!all_zero(col)) active.push_back(std::move(col));
  }

  SeriesColumns h(dim, SeriesColumn(dim));
  std::vector<mpq_class> d(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t best = active.size();
    mpq_class best_val;
    for (std::size_t c = 0; c < active.size(); ++c) {
      if (active[c][i].is_zero()) continue;
      const mpq_class v = active[c][i].exponent(0);
      if (best == active.size() || v < best_val) {
        best = c;
        best_val = v;
      }
    }
    if (best == active.size()) {
      // Only t^floor e_i reaches this row.
      h[i][i] = LaurentPoly::monomial(1, top);
      d[i] = top;
      continue;
    }
    SeriesColumn p = std::move(active[best]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
    const mpq_class v = best_val;
    if (!p[i].is_monomial() || p[i].lowest_coefficient() != 1) {
      mpq_class low = v;
      for (std::size_t r = i + 1; r < dim; ++r) {
        if (!p[r].is_zero()) low = std::min(low, p[r].exponent(0));
      }
      const LaurentPoly w = divide_series(LaurentPoly::monomial(1, v), p[i], top - low);
      for (std::size_t r = i + 1; r < dim; ++r) {
        if (!p[r].is_zero()) p[r] = multiply_truncated(w, p[r], top);
      }
      p[i] = LaurentPoly::monomial(1, v);
    }
    for (auto& c : active) {
      if (c[i].is_zero()) continue;
      const LaurentPoly factor = c[i].shifted(-v);
      for (std::size_t r = i + 1; r < dim; ++r) {
        if (!p[r].is_zero()) c[r] -= multiply_truncated(factor, p[r], top);
      }
      c[i] = LaurentPoly();
    }
    // t^floor e_i reduced by the pivot column.
    SeriesColumn syzygy(dim);
    const LaurentPoly shift = LaurentPoly::monomial(1, top - v);
    for (std::size_t r = i + 1; r < dim; ++r) {
      if (!p[r].is_zero()) syzygy[r] = multiply_truncated(shift, p[r], top);
    }
    active.erase(std::remove_if(active.begin(), active.end(), all_zero), active.end());
    if (!all_zero(syzygy)) active.push_back(std::move(syzygy));
    h[i] = std::move(p);
    d[i] = v;
  }

  for (std::size_t q = 0; q < dim; ++q) {
    for (std::size_t p = 0; p < q; ++p) {
      const LaurentPoly high = h[p][q].tail_from(d[q]);
      if (high.is_zero()) continue;
      const LaurentPoly factor = high.shifted(-d[q]);
      h[p][q] -= high;
      for (std::size_t r = q + 1; r < dim; ++r) {
        if (!h[q][r].is_zero()) h[p][r] = (h[p][r] - multiply_truncated(factor, h[q][r], top)).truncated_below(top);
      }
    }
  }

  Lattice l = Lattice::blank(n, n);
  l.normalized_ = true;
  l.floor_ = floor;
  l.hermite_form_ = true;
  for (Index i = 0; i < n; ++i) l.pivot_rows_.push_back(i);
  l.hermite_ = std::move(h);
  l.pivot_valuations_ = std::move(d);
  return l;
}

Lattice normalize_lattice(const Lattice& lattice) {
  if (lattice.normalized()) return lattice;
  const Index n = lattice.ambient_dim();
  if (lattice.floor()) {
    return hermite_from_series(n, lattice.generator_series(*lattice.floor()), *lattice.floor());
  }
  std::vector<Index> pivot_rows;
  MatrixQ e = echelon(lattice.generators(), pivot_rows);
  if (e.cols() == n) {
    // t^D R^n ⊆ span(E) once D >= v(det E) - (n - 1) min v(E), by the adjugate.
    mpq_class det_val = 0;
    for (Index i = 0; i < n; ++i) det_val += e(i, i).valuation().value();
    const mpq_class floor = det_val - (n - 1) * matrix_min_valuation(e);
    return hermite_from_series(n, series_of(e, floor), floor);
  }
  Lattice result(std::move(e));
  result.normalized_ = true;
  result.pivot_rows_ = std::move(pivot_rows);
  return result;
}

std::optional<VectorQ> lattice_coordinates(const VectorQ& x, const Lattice& normalized) {
  if (x.size() != normalized.ambient_dim()) {
    throw DimensionMismatch("lattice_membership", "vector and lattice dimensions differ");
  }
  const Lattice& l = normalized;
  const MatrixQ& g = l.generators();
  const auto& pivots = l.pivot_rows();
  VectorQ rest = x;
  VectorQ coords = VectorQ::Zero(g.cols());
  std::size_t next = 0;
  for (Index row = 0; row < g.rows(); ++row) {
    if (next < pivots.size() && pivots[next] == row) {
      const Index col = static_cast<Index>(next);
      if (!rest(row).is_zero()) {
        const FieldElement c = rest(row) / g(row, col);
        for (Index r = row; r < g.rows(); ++r) {
          if (!g(r, col).is_zero()) rest(r) -= c * g(r, col);
        }
        coords(col) = c;
      }
      ++next;
    } else if (!rest(row).is_zero()) {
      return std::nullopt;
    }
  }
  return coords;
}

bool lattice_membership(const VectorQ& x, const Lattice& lattice) {
  if (x.size() != lattice.ambient_dim()) {
    throw DimensionMismatch("lattice_membership", "vector and lattice dimensions differ");
  }
  const Lattice l = normalize_lattice(lattice);
  if (l.is_hermite()) {
    MatrixQ m(x.size(), 1);
    m.col(0) = x;
    return series_member(series_of(m, *l.floor())[0], l);
  }
  const auto coords = lattice_coordinates(x, l);
  if (!coords) return false;
  return std::all_of(coords->begin(), coords->end(), [](const FieldElement& c) { return c.in_ring(); });
}

bool is_sublattice(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("is_sublattice", "ambient dimensions differ");
  }
  const Lattice nb = normalize_lattice(b);
  if (nb.is_hermite()) {
    for (auto& col : a.generator_series(*nb.floor())) {
      if (!series_member(std::move(col), nb)) return false;
    }
    return true;
  }
  const MatrixQ& g = a.generators();
  for (Index c = 0; c < g.cols(); ++c) {
    if (!lattice_membership(g.col(c), nb)) return false;
  }
  return true;
}

bool lattice_equal(const Lattice& a, const Lattice& b) { return is_sublattice(a, b) && is_sublattice(b, a); }

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("lattice_sum", "ambient dimensions differ");
  Lattice s = Lattice::blank(a.ambient_dim(), a.generator_count() + b.generator_count());
  s.exact_ = [a, b] { return concat(a.generators(), b.generators()); };
  s.series_ = [a, b](const mpq_class& bound) {
    SeriesColumns cols = a.generator_series(bound);
    for (auto& col : b.generator_series(bound)) cols.push_back(std::move(col));
    return cols;
  };
  if (a.floor() && b.floor()) {
    s.floor_ = std::min(*a.floor(), *b.floor());
  } else if (a.floor()) {
    s.floor_ = a.floor();
  } else if (b.floor()) {
    s.floor_ = b.floor();
  }
  return s;
}

Lattice lattice_image(const std::shared_ptr<const SeriesMatrix>& a, const Lattice& lattice) {
  if (a->matrix().cols() != lattice.ambient_dim()) {
    throw DimensionMismatch("lattice_image", "matrix and lattice dimensions differ");
  }
  Lattice img = Lattice::blank(a->matrix().rows(), lattice.generator_count());
  img.exact_ = [a, lattice] { return multiply(a->matrix(), lattice.generators()); };
  img.series_ = [a, lattice](const mpq_class& bound) {
    const Index rows = a->matrix().rows();
    const Index inner = a->matrix().cols();
    const SeriesColumns g = lattice.generator_series(bound - a->min_valuation());
    SeriesColumns out(g.size(), SeriesColumn(static_cast<std::size_t>(rows)));
    for (std::size_t c = 0; c < g.size(); ++c) {
      for (Index j = 0; j < inner; ++j) {
        const LaurentPoly& x = g[c][j];
        if (x.is_zero()) continue;
        const mpq_class need = bound - x.exponent(0);
        for (Index i = 0; i < rows; ++i) {
          if (a->matrix()(i, j).is_zero()) continue;
          out[c][i] += multiply_truncated(a->entry(i, j, need), x, bound);
        }
      }
    }
    return out;
  };
  return img;
}

Lattice lattice_image(const MatrixQ& a, const Lattice& lattice) {
  return lattice_image(std::make_shared<const SeriesMatrix>(a), lattice);
}

Index rank(const Lattice& lattice) {
  if (lattice.normalized()) return lattice.generator_count();
  if (lattice.floor()) return lattice.ambient_dim();
  return valent::rank(lattice.generators());
}

std::vector<ExtRational> smith_invariants(const Lattice& b, const Lattice& a) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("smith_invariants", "ambient dimensions differ");
  }
  const Lattice nb = normalize_lattice(b);
  const Lattice na = normalize_lattice(a);
  const Index r = nb.generator_count();
  if (na.generator_count() != r) throw InvalidArgument("smith_invariants", "ranks differ");

  if (nb.is_hermite() && na.is_hermite()) {
    if (!is_sublattice(na, nb)) throw NotASubmodule("smith_invariants", "A is not contained in B");
    const auto dim = static_cast<std::size_t>(r);
    mpq_class total = 0;
    for (std::size_t i = 0; i < dim; ++i) total += na.pivot_valuations()[i] - nb.pivot_valuations()[i];
    const auto& hb = nb.hermite_columns();
    const auto& db = nb.pivot_valuations();
    std::vector<std::vector<LaurentPoly>> c(dim, std::vector<LaurentPoly>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
      SeriesColumn rest = na.hermite_columns()[col];
      for (std::size_t j = 0; j < dim; ++j) {
        if (rest[j].is_zero()) continue;
        c[j][col] = rest[j].shifted(-db[j]);
        for (std::size_t row = j + 1; row < dim; ++row) {
          if (!hb[j][row].is_zero()) rest[row] -= c[j][col] * hb[j][row];
        }
      }
    }
    return smith_truncated(std::move(c), total);
  }

  MatrixQ c(r, r);
  for (Index j = 0; j < r; ++j) {
    const auto coords = lattice_coordinates(na.generators().col(j), nb);
    if (!coords || !std::all_of(coords->begin(), coords->end(), [](const FieldElement& x) { return x.in_ring(); })) {
      throw NotASubmodule("smith_invariants", "A is not contained in B");
    }
    c.col(j) = *coords;
  }

  std::vector<ExtRational> invariants;
  for (Index k = 0; k < r; ++k) {
    Index bi = -1;
    Index bj = -1;
    ExtRational best = ExtRational::infinity();
    for (Index j = k; j < r; ++j) {
      for (Index i = k; i < r; ++i) {
        const ExtRational v = c(i, j).valuation();
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) throw InvalidArgument("smith_invariants", "ranks differ");
    c.row(k).swap(c.row(bi));
    c.col(k).swap(c.col(bj));
    invariants.push_back(best);
    // The pivot divides every remaining entry; clearing its column by row
    // operations leaves its row to be cleared by column operations, which
    // touch nothing else.
    for (Index i = k + 1; i < r; ++i) {
      if (c(i, k).is_zero()) continue;
      const FieldElement factor = c(i, k) / c(k, k);
      for (Index j = k + 1; j < r; ++j) {
        if (!c(k, j).is_zero()) c(i, j) -= factor * c(k, j);
      }
    }
  }
  std::sort(invariants.begin(), invariants.end());
  return invariants;
}

ExtRational quotient_length(const Lattice& b, const Lattice& a) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("quotient_length", "ambient dimensions differ");
  }
  const Lattice nb = normalize_lattice(b);
  const Lattice na = normalize_lattice(a);
  if (!is_sublattice(na, nb)) throw NotASubmodule("quotient_length", "A is not contained in B");
  if (rank(na) < rank(nb)) return ExtRational::infinity();
  if (na.is_hermite() && nb.is_hermite()) {
    mpq_class total = 0;
    for (std::size_t i = 0; i < na.pivot_valuations().size(); ++i) {
      total += na.pivot_valuations()[i] - nb.pivot_valuations()[i];
    }
    return ExtRational(total);
  }
  return sum_of(smith_invariants(nb, na));
}

InverseMap invert_map(const MatrixQ& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("preimage_lattice", "map must be square");
  MatrixQ inv;
  try {
    inv = inverse(a);
  } catch (const SingularMap&) {
    throw SingularMap("preimage_lattice", "map has a nontrivial kernel; reduce by the hyperkernel first");
  }
  return {std::make_shared<const SeriesMatrix>(std::move(inv)), matrix_min_valuation(a)};
}

Lattice preimage_lattice(const InverseMap& a, const Lattice& n) {
  if (a.inverse->matrix().cols() != n.ambient_dim()) {
    throw DimensionMismatch("preimage_lattice", "map and lattice dimensions differ");
  }
  Lattice img = lattice_image(a.inverse, normalize_lattice(n));
  // x ∈ t^(D - min v(a)) R^n gives a x ∈ t^D R^n ⊆ N.
  if (n.floor()) img.floor_ = *n.floor() - a.forward_min_valuation;
  return normalize_lattice(img);
}

Lattice preimage_lattice(const MatrixQ& a, const Lattice& n) {
  if (a.rows() != a.cols()) throw DimensionMismatch("preimage_lattice", "map must be square");
  if (a.rows() != n.ambient_dim()) throw DimensionMismatch("preimage_lattice", "map and lattice dimensions differ");
  return preimage_lattice(invert_map(a), n);
}

}  // namespace valent
