#include "valent/entropy.hpp"

#include <algorithm>

namespace valent {

std::string to_string(Method method) {
  switch (method) {
    case Method::iayf:
      return "iayf";
    case Method::trajectory_oracle:
      return "trajectory_oracle";
    case Method::limit_free:
      return "limit_free";
    case Method::bernoulli_closed_form:
      return "bernoulli_closed_form";
    case Method::additivity:
      return "additivity";
  }
  return "unknown";
}

std::optional<Index> stabilization_step(const std::vector<ExtRational>& growth, Index window) {
  if (growth.empty()) return std::nullopt;
  std::size_t start = growth.size() - 1;
  while (start > 0 && growth[start - 1] == growth.back()) --start;
  const auto run = static_cast<Index>(growth.size() - start);
  if (run < window) return std::nullopt;
  return static_cast<Index>(start) + 1;
}

namespace {

EntropyReport report_from_growth(std::vector<ExtRational> growth, Index horizon, Index rank) {
  EntropyReport report;
  report.method = Method::trajectory_oracle;
  report.certificate.horizon = horizon;
  report.certificate.rank = rank;
  report.certificate.stabilized_at = stabilization_step(growth, rank + 1);
  report.value = growth.back();
  if (!report.certificate.stabilized_at) {
    report.certificate.notes.push_back("not stabilized within the horizon; value is an upper estimate");
  }
  report.certificate.growth = std::move(growth);
  return report;
}

std::vector<ExtRational> growth_of(const std::vector<Lattice>& t) {
  std::vector<ExtRational> d;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) d.push_back(quotient_length(t[k + 1], t[k]));
  return d;
}

void check_horizon(Index horizon) {
  if (horizon < 1) throw InvalidArgument("trajectory_growth", "horizon must be at least 1");
}

}  // namespace

IayfResult ent_iayf(const VectorSpaceModule& module) {
  IayfResult out;
  out.char_poly = char_poly(module.action());
  const ExtRational content = content_valuation(out.char_poly);
  const ExtRational value = std::max(ExtRational(0), -content);
  out.s = monomial(value.value());
  for (const auto& c : out.char_poly.coeffs) out.primitive.coeffs.push_back(out.s * c);
  out.report.value = value;
  out.report.method = Method::iayf;
  out.report.certificate.rank = module.dim();
  return out;
}

EntropyReport trajectory_growth(const VectorSpaceModule& module, const Lattice& start, Index horizon) {
  check_horizon(horizon);
  if (!is_inert(module, start)) throw NotInert("trajectory_growth", "start lattice is not phi-inert");
  const auto t = trajectory_sequence(module.action(), start, horizon + 1);
  return report_from_growth(growth_of(t), horizon, module.dim());
}

EntropyReport trajectory_growth(const TorsionModule& module, const std::vector<VectorQ>& start, Index horizon) {
  check_horizon(horizon);
  std::vector<ExtRational> d;
  TorsionSubmodule previous = torsion_trajectory(module, start, 1);
  for (Index k = 1; k <= horizon; ++k) {
    TorsionSubmodule next = torsion_trajectory(module, start, k + 1);
    d.push_back(quotient_length(next.lift, previous.lift));
    previous = std::move(next);
  }
  return report_from_growth(std::move(d), horizon, 0);
}

EntropyReport trajectory_growth(const BernoulliModule& module, Index horizon) {
  check_horizon(horizon);
  const TorsionModule truncated = bernoulli_truncation(module, horizon + 1);
  std::vector<VectorQ> start;
  for (Index i = 0; i < static_cast<Index>(module.cell.size()); ++i) start.push_back(standard_generator(truncated, i));
  if (start.empty()) {
    return report_from_growth(std::vector<ExtRational>(static_cast<std::size_t>(horizon), ExtRational(0)), horizon, 0);
  }
  return trajectory_growth(truncated, start, horizon);
}

std::vector<Lattice> anti_trajectory_sequence(const VectorSpaceModule& module, const Lattice& start, Index count) {
  if (start.ambient_dim() != module.dim()) {
    throw DimensionMismatch("anti_trajectory", "lattice and module dimensions differ");
  }
  std::vector<Lattice> out;
  if (count < 1) return out;
  out.push_back(normalize_lattice(start));
  if (count < 2) return out;
  const InverseMap inv = invert_map(module.action());
  for (Index k = 1; k < count; ++k) {
    out.push_back(normalize_lattice(lattice_sum(out.front(), preimage_lattice(inv, out.back()))));
  }
  return out;
}

Lattice anti_trajectory(const VectorSpaceModule& module, const Lattice& start, Index n) {
  if (n < 1) throw InvalidArgument("anti_trajectory", "n must be at least 1");
  return anti_trajectory_sequence(module, start, n).back();
}

AntiTrajectoryCheck antitrajectory_length_check(const VectorSpaceModule& module, const Lattice& start, Index horizon) {
  check_horizon(horizon);
  const auto t = trajectory_sequence(module.action(), start, horizon + 1);
  const auto a = anti_trajectory_sequence(module, start, horizon + 1);
  const InverseMap inv = invert_map(module.action());
  AntiTrajectoryCheck out;
  for (Index n = 1; n <= horizon; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    AntiTrajectoryRow row;
    row.n = n;
    row.trajectory_side = quotient_length(t[i + 1], t[i]);
    row.anti_side = quotient_length(a[i + 1], preimage_lattice(inv, a[i]));
    out.holds = out.holds && row.trajectory_side == row.anti_side;
    out.table.push_back(std::move(row));
  }
  return out;
}

ExtRational limit_free_value(const VectorSpaceModule& module, const Lattice& n) {
  if (n.ambient_dim() != module.dim()) throw DimensionMismatch("limit_free_value", "lattice and module dimensions differ");
  if (!is_inert(module, n)) throw PreconditionFailed("limit_free_value", "N is not phi-inert");
  Lattice pre;
  try {
    pre = preimage_lattice(module.action(), n);
  } catch (const SingularMap&) {
    throw PreconditionFailed("limit_free_value", "action is not injective");
  }
  if (!is_sublattice(pre, n)) throw PreconditionFailed("limit_free_value", "phi^{-1}N is not contained in N");
  return quotient_length(n, pre);
}

EntropyReport bernoulli_entropy(const BernoulliModule& module, Index horizon) {
  EntropyReport report;
  report.value = length(module);
  report.method = Method::bernoulli_closed_form;
  const EntropyReport oracle = trajectory_growth(module, horizon);
  report.certificate = oracle.certificate;
  report.certificate.oracle_agrees = std::all_of(oracle.certificate.growth.begin(), oracle.certificate.growth.end(),
                                                 [&](const ExtRational& d) { return d == report.value; });
  return report;
}

CyclicAnalysis cyclic_trajectory_analysis(const VectorSpaceModule& module, const VectorQ& x) {
  if (x.size() != module.dim()) throw DimensionMismatch("cyclic_trajectory_analysis", "vector has the wrong length");
  if (std::all_of(x.begin(), x.end(), [](const FieldElement& e) { return e.is_zero(); })) {
    throw ZeroVector("cyclic_trajectory_analysis", "x must be nonzero");
  }
  const Index dim = module.dim();
  std::vector<VectorQ> krylov{x};
  auto columns = [&](Index count) {
    MatrixQ m(dim, count);
    for (Index i = 0; i < count; ++i) m.col(i) = krylov[static_cast<std::size_t>(i)];
    return m;
  };
  CyclicAnalysis out;
  Index n = 0;
  for (Index k = 1; k <= dim + 1; ++k) {
    if (valent::rank(columns(k)) < k) {
      n = k - 1;
      break;
    }
    krylov.push_back(multiply<FieldElement>(module.action(), krylov.back()));
  }
  out.rank = n;
  out.free_basis = valent::rank(columns(n)) == n;

  // The one-dimensional kernel of [x, ..., phi^n x] gives the annihilating relation.
  const MatrixQ rel = kernel(columns(n + 1));
  const FieldElement lead = rel(n, 0);
  std::vector<FieldElement> coeffs;
  for (Index i = 0; i <= n; ++i) coeffs.push_back(rel(i, 0) / lead);
  out.minimal_poly = PolynomialQ(coeffs);
  const ExtRational sv = std::max(ExtRational(0), -content_valuation(out.minimal_poly));
  out.s_valuation = sv;
  out.s = monomial(sv.value());
  for (const auto& c : out.minimal_poly.coeffs) out.primitive.coeffs.push_back(out.s * c);

  // In the basis x, ..., phi^(n-1) x the action is the companion matrix of
  // the minimal polynomial and T_(n-1) is R^n.
  MatrixQ companion = MatrixQ::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) companion(i + 1, i) = FieldElement(1);
  for (Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)];
  const auto t = trajectory_sequence(companion, Lattice::standard(n), 6);
  std::vector<ExtRational> expected(static_cast<std::size_t>(n), ExtRational(0));
  expected.back() = sv;
  out.smith_pattern_holds = true;
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    auto table = smith_invariants(t[k + 1], t[k]);
    out.smith_pattern_holds = out.smith_pattern_holds && table == expected;
    out.smith_tables.push_back(std::move(table));
  }
  out.quotient_structure = out.s.is_unit()
                               ? "T(phi,x) = T_n(phi,x) is free of rank " + std::to_string(n)
                               : "T(phi,x)/T_n(phi,x) is uniserial divisible, isomorphic to Q/R";
  return out;
}

EntropyReport entropy(const VectorSpaceModule& module, std::optional<Index> horizon) {
  const Index h = horizon.value_or(default_horizon(module.dim()));
  const HyperkernelReduction reduction = hyperkernel_reduce(module);
  const VectorSpaceModule& injective = reduction.reduced;
  EntropyReport report = ent_iayf(injective).report;
  if (injective.dim() == 0) {
    report.certificate.growth.assign(static_cast<std::size_t>(h), ExtRational(0));
    report.certificate.horizon = h;
    report.certificate.stabilized_at = 1;
  } else {
    const EntropyReport oracle = trajectory_growth(injective, injective.distinguished(), h);
    report.certificate = oracle.certificate;
    // Without stabilization the last d_k is only an upper estimate.
    report.certificate.oracle_agrees = oracle.certificate.stabilized_at ? oracle.value == report.value
                                                                        : report.value <= oracle.value;
  }
  if (reduction.kernel_dim > 0) {
    report.certificate.notes.push_back("hyperkernel of dimension " + std::to_string(reduction.kernel_dim) +
                                       " removed");
  }
  return report;
}

EntropyReport entropy(const Module& module, std::optional<Index> horizon) {
  return std::visit(
      [&](const auto& m) -> EntropyReport {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, VectorSpaceModule>) {
          return entropy(m, horizon);
        } else if constexpr (std::is_same_v<T, TorsionModule>) {
          const Index h = horizon.value_or(default_horizon(0));
          if (m.cells() == 0) {
            EntropyReport r;
            r.certificate.growth.assign(static_cast<std::size_t>(h), ExtRational(0));
            r.certificate.horizon = h;
            r.certificate.stabilized_at = 1;
            return r;
          }
          std::vector<VectorQ> gens;
          for (Index i = 0; i < m.cells(); ++i) gens.push_back(standard_generator(m, i));
          EntropyReport r = trajectory_growth(m, gens, h);
          r.certificate.oracle_agrees = r.value == ExtRational(0);
          r.value = ExtRational(0);
          return r;
        } else if constexpr (std::is_same_v<T, BernoulliModule>) {
          return bernoulli_entropy(m, horizon.value_or(default_horizon(0)));
        } else if constexpr (std::is_same_v<T, FreePolynomialModule>) {
          const Index h = horizon.value_or(default_horizon(0));
          EntropyReport r;
          r.value = ExtRational::infinity();
          r.certificate.growth.assign(static_cast<std::size_t>(h), ExtRational::infinity());
          r.certificate.horizon = h;
          r.certificate.notes.push_back("infinite rank: each trajectory step adds a free summand");
          return r;
        } else {
          EntropyReport r;
          r.method = Method::additivity;
          std::vector<EntropyReport> parts;
          for (const auto& s : m.summands) parts.push_back(entropy(s, horizon));
          std::size_t common = parts.empty() ? 0 : parts.front().certificate.growth.size();
          for (const auto& p : parts) {
            r.value += p.value;
            common = std::min(common, p.certificate.growth.size());
            r.certificate.rank += p.certificate.rank;
            r.certificate.oracle_agrees = r.certificate.oracle_agrees && p.certificate.oracle_agrees;
          }
          r.certificate.growth.assign(common, ExtRational(0));
          for (const auto& p : parts) {
            for (std::size_t k = 0; k < common; ++k) r.certificate.growth[k] += p.certificate.growth[k];
          }
          r.certificate.horizon = static_cast<Index>(common);
          r.certificate.stabilized_at = stabilization_step(r.certificate.growth, 1);
          return r;
        }
      },
      module.value);
}

bool is_block_upper_triangular(const MatrixQ& m, Index r) {
  if (m.rows() != m.cols() || r < 0 || r > m.rows()) return false;
  for (Index i = r; i < m.rows(); ++i) {
    for (Index j = 0; j < r; ++j) {
      if (!m(i, j).is_zero()) return false;
    }
  }
  return true;
}

AdditionCheck addition_check(const VectorSpaceModule& module, Index r, std::optional<Index> horizon) {
  const MatrixQ& phi = module.action();
  if (!is_block_upper_triangular(phi, r)) {
    throw NotBlockTriangular("addition_check", "lower-left block is nonzero or r is out of range");
  }
  const Index n = phi.rows();
  AdditionCheck out;
  out.full = entropy(module, horizon);
  out.invariant_part = entropy(VectorSpaceModule(MatrixQ(phi.topLeftCorner(r, r))), horizon);
  out.quotient_part = entropy(VectorSpaceModule(MatrixQ(phi.bottomRightCorner(n - r, n - r))), horizon);
  out.holds = out.full.value == out.invariant_part.value + out.quotient_part.value;
  return out;
}

}  // namespace valent
