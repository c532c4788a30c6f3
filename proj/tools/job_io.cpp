#include "job_io.hpp"

#include <cstdio>

#include "valent/element_io.hpp"

namespace valent::cli {

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Index require_count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw SchemaError(where + ": expected a nonnegative integer");
  return j.get<Index>();
}

std::vector<FieldElement> elements_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of elements");
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

FieldElement element_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return FieldElement(mpq_class(j.get<long>()));
  if (!j.is_string()) throw SchemaError(where + ": expected an element string");
  try {
    return parse_element(j.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

MatrixQ matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  MatrixQ m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols || cols == 0) throw SchemaError(row_where + ": rows must have equal nonzero length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = element_from_json(j[r][c], row_where + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

VectorQ vector_from_json(const json& j, const std::string& where) {
  const auto xs = elements_from_json(j, where);
  VectorQ v(static_cast<Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Index>(i)) = xs[i];
  return v;
}

Lattice lattice_from_json(const json& j, const std::string& where) {
  const Index n = require_count(require(j, "ambient_dim", where), where + ".ambient_dim");
  const json& gens = require(j, "generators", where);
  if (!gens.is_array()) throw SchemaError(where + ".generators: expected an array of columns");
  MatrixQ g(n, static_cast<Index>(gens.size()));
  for (std::size_t c = 0; c < gens.size(); ++c) {
    const VectorQ col = vector_from_json(gens[c], where + ".generators[" + std::to_string(c) + "]");
    if (col.size() != n) throw SchemaError(where + ".generators[" + std::to_string(c) + "]: length differs from ambient_dim");
    g.col(static_cast<Index>(c)) = col;
  }
  return Lattice(std::move(g));
}

Module module_from_json(const json& j, const std::string& where) {
  const json& kind_j = require(j, "kind", where);
  if (!kind_j.is_string()) throw SchemaError(where + ".kind: expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "vector_space") {
    const Index dim = require_count(require(j, "dim", where), where + ".dim");
    MatrixQ m = matrix_from_json(require(j, "matrix", where), where + ".matrix");
    if (m.rows() != dim || m.cols() != dim) throw SchemaError(where + ".matrix: expected a dim x dim matrix");
    std::optional<Lattice> lattice;
    if (j.contains("lattice") && !j.at("lattice").is_null()) {
      lattice = lattice_from_json(j.at("lattice"), where + ".lattice");
    }
    return Module{VectorSpaceModule(std::move(m), std::move(lattice))};
  }
  if (kind == "torsion") {
    auto ann = elements_from_json(require(j, "annihilators", where), where + ".annihilators");
    if (!j.contains("matrix")) return Module{TorsionModule(std::move(ann))};
    return Module{TorsionModule(std::move(ann), matrix_from_json(j.at("matrix"), where + ".matrix"))};
  }
  if (kind == "bernoulli") {
    return Module{BernoulliModule{elements_from_json(require(j, "cell_annihilators", where), where + ".cell_annihilators")}};
  }
  if (kind == "free_polynomial") return Module{FreePolynomialModule{}};
  if (kind == "direct_sum") {
    const json& parts = require(j, "summands", where);
    if (!parts.is_array() || parts.empty()) throw SchemaError(where + ".summands: expected a nonempty array");
    std::vector<Module> summands;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      summands.push_back(module_from_json(parts[i], where + ".summands[" + std::to_string(i) + "]"));
    }
    return direct_sum(std::move(summands));
  }
  throw SchemaError(where + ".kind: unknown module kind \"" + kind + "\"");
}

json to_json(const ExtRational& x) { return x.to_string(); }

json to_json(const FieldElement& x) { return format_element(x); }

json to_json(const MatrixQ& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Lattice& l) {
  json cols = json::array();
  const MatrixQ& g = l.generators();
  for (Index c = 0; c < g.cols(); ++c) {
    json col = json::array();
    for (Index r = 0; r < g.rows(); ++r) col.push_back(to_json(g(r, c)));
    cols.push_back(std::move(col));
  }
  return {{"ambient_dim", l.ambient_dim()}, {"generators", std::move(cols)}};
}

json to_json(const std::vector<ExtRational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

json to_json(const EntropyReport& report) {
  const Certificate& c = report.certificate;
  json cert = {{"growth", to_json(c.growth)},
               {"stabilized_at", c.stabilized_at ? json(*c.stabilized_at) : json(nullptr)},
               {"horizon", c.horizon},
               {"rank", c.rank},
               {"oracle_agrees", c.oracle_agrees}};
  if (!c.notes.empty()) cert["notes"] = c.notes;
  return {{"value", to_json(report.value)}, {"method", to_string(report.method)}, {"certificate", std::move(cert)}};
}

json to_json(const CyclicAnalysis& a) {
  json tables = json::array();
  for (const auto& t : a.smith_tables) tables.push_back(to_json(t));
  return {{"rank", a.rank},
          {"free_basis", a.free_basis},
          {"minimal_polynomial", format_polynomial(a.minimal_poly)},
          {"primitive_polynomial", format_polynomial(a.primitive)},
          {"s", to_json(a.s)},
          {"s_valuation", to_json(a.s_valuation)},
          {"smith_tables", std::move(tables)},
          {"smith_pattern_holds", a.smith_pattern_holds},
          {"quotient_structure", a.quotient_structure}};
}

std::string descriptor_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace valent::cli
