#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valent/module.hpp"

namespace valent {

enum class Method { iayf, trajectory_oracle, limit_free, bernoulli_closed_form, additivity };

std::string to_string(Method method);

struct Certificate {
  /// d_k = L_v(T_{k+1} / T_k), k = 1..horizon.
  std::vector<ExtRational> growth;
  /// First k from which d_k is constant through the horizon, when that run
  /// is at least rank + 1 long.
  std::optional<Index> stabilized_at;
  Index horizon = 0;
  /// Torsion-free rank of the module the growth was measured on.
  Index rank = 0;
  /// The growth table is consistent with the reported value: equal to the
  /// stabilized d_k, or at most the last d_k when the run did not stabilize.
  bool oracle_agrees = true;
  std::vector<std::string> notes;
};

struct EntropyReport {
  ExtRational value;
  Method method = Method::trajectory_oracle;
  Certificate certificate;
};

/// 2n + 4: room for the trailing window of n + 1 after n transient steps.
inline Index default_horizon(Index dim) { return 2 * dim + 4; }

/// First index (1-based) of the constant tail of `growth` if the tail has at
/// least `window` entries.
std::optional<Index> stabilization_step(const std::vector<ExtRational>& growth, Index window);

struct IayfResult {
  EntropyReport report;
  PolynomialQ char_poly;
  /// Monomial of minimal valuation with s * p in R[X].
  FieldElement s;
  /// s * p, primitive (content valuation 0).
  PolynomialQ primitive;
};

/// Closed form: the entropy is v(s) for the leading coefficient s of the
/// primitive characteristic polynomial over R, i.e. max(0, -min_i v(c_i)).
IayfResult ent_iayf(const VectorSpaceModule& module);

/// Growth oracle from the infimum formula. NotInert when K + phi K has
/// larger rank than K.
EntropyReport trajectory_growth(const VectorSpaceModule& module, const Lattice& start, Index horizon);
EntropyReport trajectory_growth(const TorsionModule& module, const std::vector<VectorQ>& start, Index horizon);
/// Starts from the first cell of the shift.
EntropyReport trajectory_growth(const BernoulliModule& module, Index horizon);

/// A_1 = K, A_{j+1} = K + phi^{-1} A_j. SingularMap unless phi is injective.
std::vector<Lattice> anti_trajectory_sequence(const VectorSpaceModule& module, const Lattice& start, Index count);
Lattice anti_trajectory(const VectorSpaceModule& module, const Lattice& start, Index n);

struct AntiTrajectoryRow {
  Index n = 0;
  ExtRational trajectory_side;  // L_v(T_{n+1} / T_n)
  ExtRational anti_side;        // L_v(A_{n+1} / phi^{-1} A_n)
};

struct AntiTrajectoryCheck {
  bool holds = true;
  std::vector<AntiTrajectoryRow> table;
};

AntiTrajectoryCheck antitrajectory_length_check(const VectorSpaceModule& module, const Lattice& start, Index horizon);

/// L_v(N / phi^{-1} N) for an inert N with phi^{-1} N ⊆ N. PreconditionFailed
/// names the violated condition.
ExtRational limit_free_value(const VectorSpaceModule& module, const Lattice& n);

/// Closed form L_v(cell), certified by the growth table of the truncated shift.
EntropyReport bernoulli_entropy(const BernoulliModule& module, Index horizon);

struct CyclicAnalysis {
  /// Rank of the full trajectory of x.
  Index rank = 0;
  /// x, phi x, ..., phi^{n-1} x are independent, so T_n(phi, x) is free on them.
  bool free_basis = false;
  /// Monic annihilating polynomial of x over Q.
  PolynomialQ minimal_poly;
  /// s * minimal_poly, primitive with leading coefficient s.
  PolynomialQ primitive;
  FieldElement s;
  ExtRational s_valuation;
  /// smith_invariants(T_{k+1}, T_k) for k = n..n+3.
  std::vector<std::vector<ExtRational>> smith_tables;
  /// Every table equals [0, ..., 0, v(s)].
  bool smith_pattern_holds = false;
  std::string quotient_structure;
};

CyclicAnalysis cyclic_trajectory_analysis(const VectorSpaceModule& module, const VectorQ& x);

/// Dispatch: vector spaces via hyperkernel reduction and the closed form,
/// torsion presentations to 0, Bernoulli shifts to L_v(cell), R[X] to INF,
/// direct sums to the sum of the parts. Horizon defaults per summand.
EntropyReport entropy(const Module& module, std::optional<Index> horizon = std::nullopt);
EntropyReport entropy(const VectorSpaceModule& module, std::optional<Index> horizon = std::nullopt);

struct AdditionCheck {
  EntropyReport full;
  EntropyReport invariant_part;  // phi restricted to the first r coordinates
  EntropyReport quotient_part;   // induced map on the quotient
  bool holds = false;
};

/// Requires phi = [[A, B], [0, C]] with A of size r; NotBlockTriangular otherwise.
AdditionCheck addition_check(const VectorSpaceModule& module, Index r, std::optional<Index> horizon = std::nullopt);

/// Top-left r x r and bottom-right blocks of a block upper triangular matrix.
bool is_block_upper_triangular(const MatrixQ& m, Index r);

}  // namespace valent
