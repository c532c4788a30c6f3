#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "valent/lattice.hpp"

namespace valent {

/// Q^n with the action of a square matrix, plus a distinguished full-rank
/// lattice F (R^n unless supplied).
class VectorSpaceModule {
 public:
  VectorSpaceModule() = default;
  explicit VectorSpaceModule(MatrixQ action, std::optional<Lattice> lattice = std::nullopt);

  Index dim() const noexcept { return action_.rows(); }
  const MatrixQ& action() const noexcept { return action_; }
  const std::optional<Lattice>& lattice() const noexcept { return lattice_; }
  /// F, defaulting to R^n.
  Lattice distinguished() const;

 private:
  MatrixQ action_;
  std::optional<Lattice> lattice_;
};

/// ⊕ R/(a_i) with an endomorphism given by a matrix over R. Construction
/// rejects annihilators outside (0, INF) and actions that do not descend:
/// v(phi_ij) + v(a_j) >= v(a_i) must hold for every entry.
class TorsionModule {
 public:
  TorsionModule() = default;
  TorsionModule(std::vector<FieldElement> annihilators, MatrixQ action);
  /// Zero action.
  explicit TorsionModule(std::vector<FieldElement> annihilators);

  static bool compatible(const std::vector<FieldElement>& annihilators, const MatrixQ& action);

  Index cells() const noexcept { return static_cast<Index>(annihilators_.size()); }
  const std::vector<FieldElement>& annihilators() const noexcept { return annihilators_; }
  const MatrixQ& action() const noexcept { return action_; }

  /// Lattice a_1 R ⊕ ... ⊕ a_k R of relations inside R^k.
  Lattice relations() const;
  /// Largest annihilator valuation: t^top R^k lies in the relation lattice.
  mpq_class top_valuation() const;

 private:
  std::vector<FieldElement> annihilators_;
  MatrixQ action_;
};

/// ⊕_{n>=1} M with the right shift, M = ⊕ R/(c_i) the cell.
struct BernoulliModule {
  std::vector<FieldElement> cell;
};

/// R[X] with multiplication by X: infinite rank, held symbolically.
struct FreePolynomialModule {};

struct Module;

struct DirectSumModule {
  std::vector<Module> summands;
};

struct Module {
  std::variant<VectorSpaceModule, TorsionModule, BernoulliModule, FreePolynomialModule, DirectSumModule> value;
};

/// Σ v(a_i).
ExtRational length(const std::vector<FieldElement>& annihilators);
ExtRational length(const TorsionModule& module);
ExtRational length(const BernoulliModule& module);

/// T_n(phi, K) = K + phi K + ... + phi^{n-1} K, normalized.
Lattice trajectory(const VectorSpaceModule& module, const Lattice& start, Index n);
/// T_1, ..., T_count.
std::vector<Lattice> trajectory_sequence(const MatrixQ& action, const Lattice& start, Index count);

/// Submodule of a torsion presentation: generating residues (reduced modulo
/// the annihilators) and the lift to R^k, which contains the relations.
struct TorsionSubmodule {
  std::vector<VectorQ> generators;
  Lattice lift;
};

/// Residue vector with each coordinate truncated below v(a_i).
VectorQ reduce_residue(const TorsionModule& module, const VectorQ& x);
TorsionSubmodule torsion_submodule(const TorsionModule& module, const std::vector<VectorQ>& generators);
/// Submodule generated by the given residues and their images under
/// phi, ..., phi^{n-1}.
TorsionSubmodule torsion_trajectory(const TorsionModule& module, const std::vector<VectorQ>& generators, Index n);
/// Standard generator e_i of ⊕ R/(a_i).
VectorQ standard_generator(const TorsionModule& module, Index i);

/// rank(K + phi K) == rank(K): then (K + phi K)/K is finitely generated
/// torsion and has finite length.
bool is_inert(const VectorSpaceModule& module, const Lattice& start);

struct HyperkernelReduction {
  Index kernel_dim = 0;
  /// dim ker(phi^j) for j = 1..m, with m the first power where the chain stops growing.
  std::vector<Index> kernel_chain;
  /// Columns: hyperkernel basis followed by the complement basis.
  MatrixQ basis;
  VectorSpaceModule reduced;
};

/// Quotient by ker_inf(phi) = ∪ ker(phi^j); the induced action is injective.
HyperkernelReduction hyperkernel_reduce(const VectorSpaceModule& module);

/// Flattens nested sums; merges vector-space summands into one block
/// diagonal module when every summand is one; a single summand is returned
/// unchanged.
Module direct_sum(std::vector<Module> summands);

/// Block diagonal matrix.
MatrixQ block_diagonal(const MatrixQ& a, const MatrixQ& b);

/// The first `copies` cells of a Bernoulli shift, with the shift dropping the
/// last cell. Trajectories of the first cell agree with the infinite shift
/// for the first copies - 1 steps.
TorsionModule bernoulli_truncation(const BernoulliModule& module, Index copies);

}  // namespace valent
