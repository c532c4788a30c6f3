#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "valent/entropy.hpp"

namespace valent::cli {

using json = nlohmann::json;

/// Malformed job document; exit status 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FieldElement element_from_json(const json& j, const std::string& where);
MatrixQ matrix_from_json(const json& j, const std::string& where);
VectorQ vector_from_json(const json& j, const std::string& where);
/// {"ambient_dim": n, "generators": [[column], ...]}
Lattice lattice_from_json(const json& j, const std::string& where);
Module module_from_json(const json& j, const std::string& where = "module");

json to_json(const ExtRational& x);
json to_json(const FieldElement& x);
json to_json(const MatrixQ& m);
json to_json(const Lattice& l);
json to_json(const std::vector<ExtRational>& xs);
json to_json(const EntropyReport& report);
json to_json(const CyclicAnalysis& analysis);

/// FNV-1a over the compact dump, rendered as 16 hex digits.
std::string descriptor_hash(const json& j);

}  // namespace valent::cli
