#include "suites.hpp"

#include <algorithm>
#include <map>

#include "cases.hpp"
#include "valent/element_io.hpp"

namespace valent::cli {

namespace {

class Tally {
 public:
  explicit Tally(SuiteReport& report) : report_(report) {}

  void check(const std::string& property, bool ok, const std::function<json()>& payload) {
    auto it = std::find_if(report_.properties.begin(), report_.properties.end(),
                           [&](const PropertyTally& p) { return p.name == property; });
    if (it == report_.properties.end()) {
      report_.properties.push_back({property, 0, 0});
      it = std::prev(report_.properties.end());
    }
    ++it->cases;
    if (ok) return;
    ++it->failed;
    if (report_.counterexample.is_null()) {
      report_.counterexample = payload();
      report_.counterexample["property"] = property;
    }
  }

 private:
  SuiteReport& report_;
};

const std::vector<mpq_class>& entry_grid() {
  static const std::vector<mpq_class> grid = valuation_grid(-2, 2, 3);
  return grid;
}

json matrix_payload(const MatrixQ& m) { return {{"matrix", to_json(m)}}; }

Lattice random_full_lattice(Rng& rng, Index n, MatrixQ* basis_out = nullptr) {
  static const std::vector<mpq_class> vals = valuation_grid(-1, 1, 2);
  MatrixQ scale = MatrixQ::Zero(n, n);
  for (Index i = 0; i < n; ++i) scale(i, i) = random_monomial(rng, vals, 0, 1);
  const MatrixQ basis = multiply(random_invertible(rng, n), scale);
  if (basis_out) *basis_out = basis;
  // Extra generators inside the span keep the input redundant.
  const MatrixQ extra = multiply(basis, random_monomial_matrix(rng, n, 2, valuation_grid(0, 2, 2), 1, 3));
  MatrixQ g(n, n + 2);
  g.leftCols(n) = basis;
  g.rightCols(2) = extra;
  return Lattice(std::move(g));
}

void valuation_axioms(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const FieldElement x = random_element(rng);
    const FieldElement y = rng.chance(1, 5) ? FieldElement() : random_element(rng);
    auto payload = [&] { return json{{"x", to_json(x)}, {"y", to_json(y)}}; };
    t.check("v(xy) = v(x) + v(y)", (x * y).valuation() == x.valuation() + y.valuation(), payload);
    const ExtRational vs = (x + y).valuation();
    const ExtRational m = std::min(x.valuation(), y.valuation());
    t.check("v(x + y) >= min", vs >= m, payload);
    if (x.valuation() != y.valuation()) t.check("v(x + y) = min when unequal", vs == m, payload);
    if (!y.is_zero()) t.check("(x / y) * y = x", (x / y) * y == x, payload);
    t.check("parse(format(x)) = x", parse_element(format_element(x)) == x, payload);
    if (!x.is_zero()) {
      const bool unit = x.in_ring() && (FieldElement(1) / x).in_ring();
      t.check("unit iff v = 0", unit == (x.valuation() == ExtRational(0)) && unit == x.is_unit(), payload);
    }
    if (!x.is_zero() && !y.is_zero() && x.in_ring() && y.in_ring()) {
      t.check("a | b in R iff v(a) <= v(b)", (y / x).in_ring() == (x.valuation() <= y.valuation()), payload);
    }
    const mpq_class q = rng.pick(entry_grid());
    t.check("v(monomial(q)) = q", monomial(q).valuation() == ExtRational(q), [&] { return json{{"q", q.get_str()}}; });
  }
  t.check("v(1) = 0", FieldElement(1).valuation() == ExtRational(0), [] { return json::object(); });
}

void linalg(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const Index n = rng.between(1, 3);
    MatrixQ basis;
    const Lattice l = random_full_lattice(rng, n, &basis);
    const Lattice norm = normalize_lattice(l);
    auto lpay = [&] { return json{{"lattice", to_json(l)}}; };
    bool span_ok = true;
    for (Index c = 0; c < l.generators().cols(); ++c) span_ok = span_ok && lattice_membership(VectorQ(l.generators().col(c)), norm);
    // Membership oracle: coordinates in the known basis lie in R.
    const MatrixQ inv = inverse(basis);
    for (Index c = 0; c < norm.generators().cols(); ++c) {
      const MatrixQ coords = multiply(inv, MatrixQ(norm.generators().col(c)));
      for (Index r = 0; r < n; ++r) span_ok = span_ok && coords(r, 0).in_ring();
    }
    t.check("normalize preserves the span", span_ok, lpay);
    t.check("normalize is idempotent", lattice_equal(normalize_lattice(norm), norm) &&
                                           normalize_lattice(norm).generators() == norm.generators(), lpay);

    // A ⊆ B ⊆ C by integral changes of basis.
    const MatrixQ x = random_integral_nonsingular(rng, n);
    const MatrixQ y = random_integral_nonsingular(rng, n);
    const Lattice c(basis);
    const Lattice b(multiply(basis, x));
    const Lattice a(multiply(multiply(basis, x), y));
    auto tpay = [&] { return json{{"basis", to_json(basis)}, {"x", to_json(x)}, {"y", to_json(y)}}; };
    t.check("quotient_length additivity",
            quotient_length(c, a) == quotient_length(c, b) + quotient_length(b, a), tpay);
    const auto inv_cb = smith_invariants(c, b);
    t.check("sum of Smith invariants = v(det change of basis)",
            sum_of(inv_cb) == determinant(x).valuation(), tpay);

    const MatrixQ phi = random_monomial_matrix(rng, n, n, entry_grid());
    const MatrixQ u = random_invertible(rng, n);
    auto cpay = [&] { return json{{"matrix", to_json(phi)}, {"conjugator", to_json(u)}}; };
    t.check("char_poly similarity invariance", char_poly(multiply(multiply(u, phi), inverse(u))) == char_poly(phi), cpay);

    const MatrixQ k = kernel(phi);
    t.check("dim kernel + rank = cols", k.cols() + valent::rank(phi) == n, cpay);
    if (valent::rank(phi) == n) {
      const Lattice pre = preimage_lattice(phi, l);
      t.check("preimage maps onto N", lattice_equal(lattice_image(phi, pre), l), cpay);
    }
  }
}

void trajectory(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ phi = random_monomial_matrix(rng, n, n, entry_grid());
    const Lattice k = random_full_lattice(rng, n);
    const VectorSpaceModule m(phi);
    const Index h = default_horizon(n);
    const auto seq = trajectory_sequence(phi, k, h + 1);
    auto pay = [&] { return json{{"matrix", to_json(phi)}, {"start", to_json(k)}}; };
    bool mono = true;
    bool descent = true;
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
      mono = mono && is_sublattice(seq[j], seq[j + 1]);
      if (j + 2 < seq.size()) {
        descent = descent && quotient_length(seq[j + 2], seq[j + 1]) <= quotient_length(seq[j + 1], seq[j]);
      }
    }
    t.check("T_n ⊆ T_{n+1}", mono, pay);
    t.check("L_v(T_{n+1}/T_n) non-increasing", descent, pay);

    // Definition K + phi K + ... + phi^{j-1} K from explicit generators.
    MatrixQ g = k.generators();
    MatrixQ power = k.generators();
    const Index steps = std::min<Index>(3, h);
    for (Index j = 1; j < steps; ++j) {
      power = multiply(phi, power);
      MatrixQ next(n, g.cols() + power.cols());
      next << g, power;
      g = std::move(next);
    }
    t.check("T_{n+1} = K + phi T_n", lattice_equal(Lattice(g), seq[static_cast<std::size_t>(steps - 1)]), pay);

    const EntropyReport from_k = trajectory_growth(m, k, h);
    const Index shift = rng.between(1, 3);
    const EntropyReport from_t = trajectory_growth(m, seq[static_cast<std::size_t>(shift)], h);
    t.check("entropy from K = entropy from T_m(K)",
            from_k.certificate.stabilized_at && from_t.certificate.stabilized_at && from_k.value == from_t.value, pay);
  }
}

void addition(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const Index r = rng.between(1, 2);
    const Index s = rng.between(1, 2);
    const MatrixQ phi = random_block_triangular(rng, r, s, entry_grid());
    const AdditionCheck c = addition_check(VectorSpaceModule(phi), r);
    t.check("entropy(phi) = entropy(A) + entropy(C)", c.holds, [&] { return matrix_payload(phi); });
    t.check("oracle certificates agree",
            c.full.certificate.oracle_agrees && c.invariant_part.certificate.oracle_agrees &&
                c.quotient_part.certificate.oracle_agrees,
            [&] { return matrix_payload(phi); });
    if (i % 4 == 0) {
      const BernoulliModule b{random_cell(rng, rng.between(1, 2))};
      const VectorSpaceModule v(MatrixQ(phi.topLeftCorner(r, r)));
      const Module sum = direct_sum({Module{v}, Module{b}});
      const EntropyReport e = entropy(sum);
      t.check("mixed direct sum is additive", e.value == entropy(v).value + length(b), [&] { return matrix_payload(phi); });
    }
  }
}

void iayf_oracle(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const Index n = 1 + i % 4;
    const MatrixQ phi = random_monomial_matrix(rng, n, n, entry_grid());
    const VectorSpaceModule m(phi);
    const IayfResult closed = ent_iayf(m);
    const EntropyReport oracle = trajectory_growth(m, Lattice::standard(n), default_horizon(n));
    auto pay = [&] { return json{{"matrix", to_json(phi)}, {"iayf", to_json(closed.report.value)}, {"oracle", to_json(oracle)}}; };
    t.check("closed form = stabilized oracle",
            oracle.certificate.stabilized_at && oracle.value == closed.report.value, pay);
    t.check("stabilized by step n", oracle.certificate.stabilized_at && *oracle.certificate.stabilized_at <= n, pay);
  }
}

void bernoulli(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const BernoulliModule b{random_cell(rng, rng.between(1, 3))};
    const EntropyReport e = bernoulli_entropy(b, 12);
    auto pay = [&] {
      json cell = json::array();
      for (const auto& a : b.cell) cell.push_back(to_json(a));
      return json{{"cell", cell}, {"report", to_json(e)}};
    };
    t.check("entropy = L_v(cell)", e.value == length(b), pay);
    t.check("oracle table constant at L_v(cell)", e.certificate.oracle_agrees && e.certificate.growth.size() == 12, pay);

    const TorsionModule tm = random_torsion(rng, rng.between(1, 3));
    const EntropyReport te = entropy(Module{tm});
    t.check("finitely generated torsion has entropy 0",
            te.value == ExtRational(0) && !te.certificate.growth.empty() && te.certificate.growth.front() == ExtRational(0),
            [&] { return json{{"action", to_json(tm.action())}, {"report", to_json(te)}}; });
  }
}

void limit_free(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const Index n = rng.between(1, 3);
    // Phi^{-1} over R makes R^n stable under phi^{-1}.
    const MatrixQ w = random_integral_nonsingular(rng, n);
    const MatrixQ phi = inverse(w);
    const VectorSpaceModule m(phi);
    auto pay = [&] { return matrix_payload(phi); };
    const ExtRational closed = ent_iayf(m).report.value;
    t.check("limit_free(R^n) = iayf", limit_free_value(m, Lattice::standard(n)) == closed, pay);

    const MatrixQ psi = random_monomial_matrix(rng, n, n, entry_grid(), 0, 1);
    if (valent::rank(psi) < n) continue;
    const VectorSpaceModule mp(psi);
    auto ppay = [&] { return matrix_payload(psi); };
    t.check("anti-trajectory lemma", antitrajectory_length_check(mp, Lattice::standard(n), 6).holds, ppay);
    const auto anti = anti_trajectory_sequence(mp, Lattice::standard(n), 6);
    const ExtRational e = entropy(mp).value;
    for (std::size_t j = 0; j + 1 < anti.size(); ++j) {
      if (!lattice_equal(anti[j], anti[j + 1])) continue;
      const ExtRational lf = limit_free_value(mp, anti[j]);
      t.check("limit_free(A(phi, R^n)) = entropy", lf == e, ppay);
      break;
    }
  }
}

void conjugation(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const Index n = rng.between(1, 3);
    const MatrixQ phi = random_monomial_matrix(rng, n, n, entry_grid());
    const MatrixQ u = random_invertible(rng, n);
    const MatrixQ psi = multiply(multiply(u, phi), inverse(u));
    const EntropyReport a = entropy(VectorSpaceModule(phi));
    const EntropyReport b = entropy(VectorSpaceModule(psi));
    auto pay = [&] { return json{{"matrix", to_json(phi)}, {"conjugator", to_json(u)}}; };
    t.check("entropy(U phi U^-1) = entropy(phi)", a.value == b.value, pay);
    t.check("oracle agrees on both conjugates", a.certificate.oracle_agrees && b.certificate.oracle_agrees, pay);
  }
}

void monotonicity(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const Index r = rng.between(1, 2);
    const Index s = rng.between(1, 2);
    const MatrixQ phi = random_block_triangular(rng, r, s, entry_grid());
    const ExtRational full = entropy(VectorSpaceModule(phi)).value;
    const ExtRational sub = entropy(VectorSpaceModule(MatrixQ(phi.topLeftCorner(r, r)))).value;
    const ExtRational quo = entropy(VectorSpaceModule(MatrixQ(phi.bottomRightCorner(s, s)))).value;
    t.check("entropy(phi) >= entropy(phi restricted to N)", full >= sub, [&] { return matrix_payload(phi); });
    t.check("entropy(phi) >= entropy(induced on quotient)", full >= quo, [&] { return matrix_payload(phi); });
  }
}

void uniqueness_conditions(Tally& t, Rng& rng, Index size) {
  for (Index i = 0; i < size; ++i) {
    const BernoulliModule b{random_cell(rng, rng.between(1, 3))};
    const EntropyReport e = bernoulli_entropy(b, 8);
    t.check("L(M ⊗ R[X]) = L_v(M)", e.value == length(b) && e.certificate.oracle_agrees, [&] { return to_json(e); });

    const Index n = rng.between(1, 3);
    const MatrixQ phi = random_monomial_matrix(rng, n, n, entry_grid());
    const VectorSpaceModule m(phi);
    const IayfResult r = ent_iayf(m);
    auto pay = [&] { return matrix_payload(phi); };
    t.check("L(M_phi) = v(s)", r.report.value == r.s.valuation() && content_valuation(r.primitive) == ExtRational(0), pay);
    const EntropyReport oracle = trajectory_growth(m, Lattice::standard(n), default_horizon(n));
    t.check("v(s) matches the growth oracle", oracle.certificate.stabilized_at && oracle.value == r.s.valuation(), pay);
  }
}

using SuiteFn = void (*)(Tally&, Rng&, Index);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"valuation_axioms", valuation_axioms},
      {"linalg", linalg},
      {"trajectory", trajectory},
      {"addition", addition},
      {"iayf_oracle", iayf_oracle},
      {"bernoulli", bernoulli},
      {"limit_free", limit_free},
      {"conjugation", conjugation},
      {"monotonicity", monotonicity},
      {"uniqueness_conditions", uniqueness_conditions},
  };
  return suites;
}

}  // namespace

bool SuiteReport::passed() const { return failures() == 0; }

Index SuiteReport::cases() const {
  Index total = 0;
  for (const auto& p : properties) total += p.cases;
  return total;
}

Index SuiteReport::failures() const {
  Index total = 0;
  for (const auto& p : properties) total += p.failed;
  return total;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"valuation_axioms", "linalg",      "trajectory", "addition",
                                                 "iayf_oracle",      "bernoulli",   "limit_free", "conjugation",
                                                 "monotonicity",     "uniqueness_conditions"};
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, Index size) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownSuite("unknown suite \"" + name + "\"");
  SuiteReport report;
  report.suite = name;
  report.seed = seed;
  report.size = size;
  Tally tally(report);
  Rng rng(seed);
  it->second(tally, rng, size);
  return report;
}

json to_json(const SuiteReport& report) {
  json props = json::array();
  for (const auto& p : report.properties) props.push_back({{"name", p.name}, {"cases", p.cases}, {"failed", p.failed}});
  return {{"suite", report.suite},
          {"seed", report.seed},
          {"size", report.size},
          {"cases", report.cases()},
          {"failed", report.failures()},
          {"passed", report.passed()},
          {"properties", std::move(props)},
          {"counterexample", report.counterexample}};
}

}  // namespace valent::cli
