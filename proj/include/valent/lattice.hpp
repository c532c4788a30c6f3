#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "valent/dense.hpp"
#include "valent/ext_rational.hpp"

namespace valent {

/// Column of Laurent-Puiseux expansions, one per ambient coordinate.
using SeriesColumn = std::vector<LaurentPoly>;
using SeriesColumns = std::vector<SeriesColumn>;

/// Matrix over Q with memoized expansions of its entries.
class SeriesMatrix {
 public:
  explicit SeriesMatrix(MatrixQ m);

  const MatrixQ& matrix() const noexcept { return m_; }
  /// Expansion of entry (i, j) with the terms below the bound.
  LaurentPoly entry(Index i, Index j, const mpq_class& bound) const;
  /// Minimal valuation over the nonzero entries (0 for the zero matrix).
  const mpq_class& min_valuation() const noexcept { return min_valuation_; }

 private:
  MatrixQ m_;
  mpq_class min_valuation_;
  mutable std::vector<LaurentPoly> cache_;
  mutable std::vector<std::optional<mpq_class>> precision_;
  mutable std::vector<bool> exact_;
};

struct InverseMap;

/// Finitely generated R-submodule of Q^n, given by the R-span of the columns
/// of a generator matrix. Finitely generated torsion-free modules over a
/// valuation domain are free, so a normalized lattice carries a basis.
///
/// A lattice may know a floor D with t^D R^n inside it. Full-rank lattices
/// with a floor are normalized to the unique lower-triangular basis whose
/// diagonal entries are monomials t^{d_i} and whose entries below the
/// diagonal in row i only involve exponents below d_i. The computation runs
/// in Q^n / t^D R^n, where every entry is a finite Laurent-Puiseux sum.
class Lattice {
 public:
  /// Zero lattice in Q^n.
  explicit Lattice(Index ambient_dim = 0);
  /// R-span of the columns of `generators`.
  explicit Lattice(MatrixQ generators);
  /// R-span of the columns of `generators`, which must contain t^floor R^n.
  Lattice(MatrixQ generators, const mpq_class& floor);

  /// R^n.
  static Lattice standard(Index n);

  Index ambient_dim() const noexcept { return ambient_dim_; }
  /// Exact generators (the basis once normalized).
  const MatrixQ& generators() const;
  Index generator_count() const noexcept { return generator_count_; }
  bool normalized() const noexcept { return normalized_; }
  /// Row of the pivot of each basis column; empty unless normalized.
  const std::vector<Index>& pivot_rows() const noexcept { return pivot_rows_; }

  const std::optional<mpq_class>& floor() const noexcept { return floor_; }
  /// Normalized, full rank and in the monomial-pivot form above.
  bool is_hermite() const noexcept { return hermite_form_; }
  /// Basis columns of the Hermite form, exact.
  const SeriesColumns& hermite_columns() const noexcept { return hermite_; }
  /// Exponents d_i of the diagonal of the Hermite form.
  const std::vector<mpq_class>& pivot_valuations() const noexcept { return pivot_valuations_; }

  /// Expansions of the generators agreeing with them below the bound.
  SeriesColumns generator_series(const mpq_class& bound) const;

 private:
  friend Lattice normalize_lattice(const Lattice& lattice);
  friend Lattice lattice_image(const MatrixQ& a, const Lattice& lattice);
  friend Lattice lattice_image(const std::shared_ptr<const SeriesMatrix>& a, const Lattice& lattice);
  friend Lattice lattice_sum(const Lattice& a, const Lattice& b);
  friend Lattice preimage_lattice(const InverseMap& a, const Lattice& n);
  friend Lattice hermite_from_series(Index n, SeriesColumns generators, const mpq_class& floor);

  static Lattice blank(Index n, Index generator_count);

  Index ambient_dim_ = 0;
  Index generator_count_ = 0;
  mutable std::shared_ptr<const MatrixQ> generators_;
  std::function<MatrixQ()> exact_;
  std::function<SeriesColumns(const mpq_class&)> series_;
  bool normalized_ = false;
  std::vector<Index> pivot_rows_;
  std::optional<mpq_class> floor_;
  bool hermite_form_ = false;
  SeriesColumns hermite_;
  std::vector<mpq_class> pivot_valuations_;
};

/// Canonical basis. Full-rank lattices get the Hermite form (finding a floor
/// first if none is known). Others get a column echelon form over R: for
/// each row from the top, the column whose entry has minimal valuation
/// (ties: lowest index) becomes a pivot and clears that row in the remaining
/// columns; earlier columns are then reduced by later pivots wherever the
/// quotient lies in R. Zero columns are dropped.
Lattice normalize_lattice(const Lattice& lattice);

/// Hermite form of the span of `generators` (expansions below `floor`)
/// together with t^floor R^n. The caller guarantees that t^floor R^n lies in
/// the lattice the generators describe.
Lattice hermite_from_series(Index n, SeriesColumns generators, const mpq_class& floor);

/// Q-coordinates of x in the basis of a normalized lattice, or nullopt when
/// x is outside its Q-span.
std::optional<VectorQ> lattice_coordinates(const VectorQ& x, const Lattice& normalized);

/// x is an R-linear combination of the generators.
bool lattice_membership(const VectorQ& x, const Lattice& lattice);

/// a ⊆ b.
bool is_sublattice(const Lattice& a, const Lattice& b);
/// Equal R-spans (mutual membership).
bool lattice_equal(const Lattice& a, const Lattice& b);

Lattice lattice_sum(const Lattice& a, const Lattice& b);
/// Image a(L).
Lattice lattice_image(const MatrixQ& a, const Lattice& lattice);
Lattice lattice_image(const std::shared_ptr<const SeriesMatrix>& a, const Lattice& lattice);

/// Rank over Q of the generator matrix.
Index rank(const Lattice& lattice);

/// Valuations d_1 <= ... <= d_r with B/A ≅ ⊕ R/(t^{d_i}). Requires A ⊆ B
/// (NotASubmodule otherwise) and equal ranks (InvalidArgument otherwise).
std::vector<ExtRational> smith_invariants(const Lattice& b, const Lattice& a);

/// Valuation length of B/A: the sum of the Smith invariants, INF when
/// rank(A) < rank(B). Throws NotASubmodule when A is not inside B.
ExtRational quotient_length(const Lattice& b, const Lattice& a);

/// {x : a x ∈ N} for an invertible square a; SingularMap when a has a kernel.
Lattice preimage_lattice(const MatrixQ& a, const Lattice& n);

/// Inverse of an invertible square map, kept for repeated preimages.
struct InverseMap {
  std::shared_ptr<const SeriesMatrix> inverse;
  /// Minimal entry valuation of the forward map.
  mpq_class forward_min_valuation;
};

/// SingularMap when a has a kernel, DimensionMismatch when a is not square.
InverseMap invert_map(const MatrixQ& a);
Lattice preimage_lattice(const InverseMap& a, const Lattice& n);

}  // namespace valent
