#include "valent/module.hpp"

#include <algorithm>

namespace valent {

VectorSpaceModule::VectorSpaceModule(MatrixQ action, std::optional<Lattice> lattice)
    : action_(std::move(action)), lattice_(std::move(lattice)) {
  if (action_.rows() != action_.cols()) throw NonSquare("VectorSpaceModule", "action must be square");
  if (lattice_) {
    if (lattice_->ambient_dim() != action_.rows()) {
      throw DimensionMismatch("VectorSpaceModule", "lattice dimension differs from the action");
    }
    lattice_ = normalize_lattice(*lattice_);
    if (rank(*lattice_) != action_.rows()) {
      throw InvalidArgument("VectorSpaceModule", "distinguished lattice must have full rank");
    }
  }
}

Lattice VectorSpaceModule::distinguished() const { return lattice_ ? *lattice_ : Lattice::standard(dim()); }

TorsionModule::TorsionModule(std::vector<FieldElement> annihilators, MatrixQ action)
    : annihilators_(std::move(annihilators)), action_(std::move(action)) {
  const Index k = cells();
  for (const auto& a : annihilators_) {
    const ExtRational v = a.valuation();
    if (v.is_infinite() || v <= ExtRational(0)) {
      throw InvalidArgument("TorsionModule", "annihilator " + a.to_string() + " must have finite positive valuation");
    }
  }
  if (action_.rows() != k || action_.cols() != k) {
    throw DimensionMismatch("TorsionModule", "action must be k x k for k cells");
  }
  if (!compatible(annihilators_, action_)) {
    throw IncompatibleAction("TorsionModule", "action does not descend to the quotient");
  }
}

TorsionModule::TorsionModule(std::vector<FieldElement> annihilators)
    : TorsionModule(annihilators, MatrixQ::Zero(static_cast<Index>(annihilators.size()),
                                                  static_cast<Index>(annihilators.size()))) {}

bool TorsionModule::compatible(const std::vector<FieldElement>& annihilators, const MatrixQ& action) {
  const auto k = static_cast<Index>(annihilators.size());
  if (action.rows() != k || action.cols() != k) return false;
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      const FieldElement& phi = action(i, j);
      if (phi.is_zero()) continue;
      if (!phi.in_ring()) return false;
      const auto si = static_cast<std::size_t>(i);
      const auto sj = static_cast<std::size_t>(j);
      if (phi.valuation() + annihilators[sj].valuation() < annihilators[si].valuation()) return false;
    }
  }
  return true;
}

Lattice TorsionModule::relations() const {
  MatrixQ d = MatrixQ::Zero(cells(), cells());
  for (Index i = 0; i < cells(); ++i) d(i, i) = annihilators_[static_cast<std::size_t>(i)];
  return normalize_lattice(Lattice(std::move(d), top_valuation()));
}

mpq_class TorsionModule::top_valuation() const {
  mpq_class top = 0;
  for (const auto& a : annihilators_) top = std::max(top, a.valuation().value());
  return top;
}

ExtRational length(const std::vector<FieldElement>& annihilators) {
  ExtRational total;
  for (const auto& a : annihilators) total += a.valuation();
  return total;
}

ExtRational length(const TorsionModule& module) { return length(module.annihilators()); }

ExtRational length(const BernoulliModule& module) { return length(module.cell); }

std::vector<Lattice> trajectory_sequence(const MatrixQ& action, const Lattice& start, Index count) {
  if (action.cols() != start.ambient_dim()) {
    throw DimensionMismatch("trajectory", "start lattice and action dimensions differ");
  }
  std::vector<Lattice> out;
  if (count < 1) return out;
  out.push_back(normalize_lattice(start));
  const auto phi = std::make_shared<const SeriesMatrix>(action);
  for (Index k = 1; k < count; ++k) {
    out.push_back(normalize_lattice(lattice_sum(out.front(), lattice_image(phi, out.back()))));
  }
  return out;
}

Lattice trajectory(const VectorSpaceModule& module, const Lattice& start, Index n) {
  if (n < 1) throw InvalidArgument("trajectory", "n must be at least 1");
  return trajectory_sequence(module.action(), start, n).back();
}

VectorQ reduce_residue(const TorsionModule& module, const VectorQ& x) {
  if (x.size() != module.cells()) throw DimensionMismatch("torsion_trajectory", "residue vector has the wrong length");
  VectorQ out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const ExtRational bound = module.annihilators()[static_cast<std::size_t>(i)].valuation();
    out(i) = FieldElement(truncate_series(x(i), bound.value()));
  }
  return out;
}

namespace {

bool is_zero_vector(const VectorQ& v) {
  return std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_zero(); });
}

}  // namespace

TorsionSubmodule torsion_submodule(const TorsionModule& module, const std::vector<VectorQ>& generators) {
  TorsionSubmodule sub;
  MatrixQ rel = module.relations().generators();
  MatrixQ g(module.cells(), rel.cols() + static_cast<Index>(generators.size()));
  g.leftCols(rel.cols()) = rel;
  Index col = rel.cols();
  for (const auto& x : generators) {
    VectorQ r = reduce_residue(module, x);
    g.col(col++) = r;
    if (!is_zero_vector(r)) sub.generators.push_back(std::move(r));
  }
  sub.lift = normalize_lattice(Lattice(std::move(g), module.top_valuation()));
  return sub;
}

TorsionSubmodule torsion_trajectory(const TorsionModule& module, const std::vector<VectorQ>& generators, Index n) {
  if (generators.empty()) throw InvalidArgument("torsion_trajectory", "generator list is empty");
  if (n < 1) throw InvalidArgument("torsion_trajectory", "n must be at least 1");
  std::vector<VectorQ> all;
  std::vector<VectorQ> level;
  for (const auto& x : generators) level.push_back(reduce_residue(module, x));
  for (Index step = 0; step < n; ++step) {
    std::vector<VectorQ> next;
    for (const auto& x : level) {
      if (is_zero_vector(x)) continue;
      all.push_back(x);
      if (step + 1 < n) next.push_back(reduce_residue(module, multiply<FieldElement>(module.action(), x)));
    }
    level = std::move(next);
  }
  return torsion_submodule(module, all);
}

VectorQ standard_generator(const TorsionModule& module, Index i) {
  VectorQ e = VectorQ::Zero(module.cells());
  e(i) = FieldElement(1);
  return e;
}

bool is_inert(const VectorSpaceModule& module, const Lattice& start) {
  if (start.ambient_dim() != module.dim()) throw DimensionMismatch("is_inert", "lattice and module dimensions differ");
  const Index r = rank(start);
  if (r == module.dim()) return true;
  return rank(lattice_sum(start, lattice_image(module.action(), start))) == r;
}

HyperkernelReduction hyperkernel_reduce(const VectorSpaceModule& module) {
  const Index n = module.dim();
  const MatrixQ& phi = module.action();
  HyperkernelReduction out;

  MatrixQ power = phi;
  Index previous = 0;
  MatrixQ hyper(n, 0);
  for (Index j = 1; j <= n + 1; ++j) {
    MatrixQ ker = kernel(power);
    const Index dim = ker.cols();
    if (j > 1 && dim == previous) break;
    out.kernel_chain.push_back(dim);
    previous = dim;
    hyper = std::move(ker);
    if (dim == n) break;
    power = multiply(phi, power);
  }
  out.kernel_dim = hyper.cols();

  MatrixQ basis = hyper;
  for (Index i = 0; i < n && basis.cols() < n; ++i) {
    MatrixQ trial(n, basis.cols() + 1);
    trial.leftCols(basis.cols()) = basis;
    trial.col(basis.cols()) = MatrixQ::Identity(n, n).col(i);
    if (valent::rank(trial) == trial.cols()) basis = std::move(trial);
  }
  out.basis = basis;

  const Index h = out.kernel_dim;
  const Index m = n - h;
  if (h == 0) {
    out.reduced = module;
    return out;
  }
  const MatrixQ basis_inv = inverse(basis);
  const MatrixQ conj = multiply(basis_inv, multiply(phi, basis));
  std::optional<Lattice> lattice;
  if (module.lattice() && m > 0) {
    const MatrixQ projected = multiply(basis_inv, module.lattice()->generators());
    lattice = Lattice(MatrixQ(projected.bottomRows(m)));
  }
  out.reduced = VectorSpaceModule(MatrixQ(conj.bottomRightCorner(m, m)), lattice);
  return out;
}

MatrixQ block_diagonal(const MatrixQ& a, const MatrixQ& b) {
  MatrixQ out = MatrixQ::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

namespace {

void flatten_into(std::vector<Module>& out, Module m) {
  if (auto* sum = std::get_if<DirectSumModule>(&m.value)) {
    for (auto& s : sum->summands) flatten_into(out, std::move(s));
  } else {
    out.push_back(std::move(m));
  }
}

}  // namespace

Module direct_sum(std::vector<Module> summands) {
  if (summands.empty()) throw InvalidArgument("direct_sum", "summand list is empty");
  std::vector<Module> flat;
  for (auto& s : summands) flatten_into(flat, std::move(s));
  if (flat.size() == 1) return std::move(flat.front());
  const bool all_vector = std::all_of(flat.begin(), flat.end(), [](const Module& m) {
    return std::holds_alternative<VectorSpaceModule>(m.value);
  });
  if (!all_vector) return Module{DirectSumModule{std::move(flat)}};

  MatrixQ action(0, 0);
  MatrixQ lattice(0, 0);
  bool explicit_lattice = false;
  for (const auto& m : flat) {
    const auto& v = std::get<VectorSpaceModule>(m.value);
    action = block_diagonal(action, v.action());
    lattice = block_diagonal(lattice, v.distinguished().generators());
    explicit_lattice = explicit_lattice || v.lattice().has_value();
  }
  std::optional<Lattice> l;
  if (explicit_lattice) l = Lattice(std::move(lattice));
  return Module{VectorSpaceModule(std::move(action), std::move(l))};
}

TorsionModule bernoulli_truncation(const BernoulliModule& module, Index copies) {
  const auto m = static_cast<Index>(module.cell.size());
  std::vector<FieldElement> annihilators;
  for (Index c = 0; c < copies; ++c) {
    annihilators.insert(annihilators.end(), module.cell.begin(), module.cell.end());
  }
  const Index k = m * copies;
  MatrixQ shift = MatrixQ::Zero(k, k);
  for (Index c = 0; c + 1 < copies; ++c) {
    for (Index i = 0; i < m; ++i) shift((c + 1) * m + i, c * m + i) = FieldElement(1);
  }
  return TorsionModule(std::move(annihilators), std::move(shift));
}

}  // namespace valent
