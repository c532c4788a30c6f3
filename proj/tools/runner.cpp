#include "runner.hpp"

#include <algorithm>

#include "suites.hpp"

namespace valent::cli {

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

template <class T>
T option_integer(const json& options, const char* key, T fallback) {
  if (!options.contains(key)) return fallback;
  const json& v = options.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
    throw SchemaError(std::string("options.") + key + ": expected a non-negative integer");
  }
  return v.get<T>();
}

Index horizon_for(const json& options, const RunOptions& run, Index fallback) {
  Index h = run.horizon ? *run.horizon : option_integer<Index>(options, "horizon", fallback);
  if (h < 1) throw SchemaError("options.horizon: must be at least 1");
  return h;
}

json growth_record(const Certificate& c) {
  json table = json::array();
  for (const auto& d : c.growth) table.push_back(to_json(d));
  return {{"growth", std::move(table)},
          {"horizon", c.horizon},
          {"rank", c.rank},
          {"stabilized_at", c.stabilized_at ? json(*c.stabilized_at) : json(nullptr)}};
}

std::pair<json, bool> entropy_job(const json& job, const json& options, const RunOptions& run) {
  const Module m = module_from_json(require(job, "module", "job"));
  std::optional<Index> horizon;
  if (run.horizon || options.contains("horizon")) horizon = horizon_for(options, run, 1);
  const EntropyReport r = entropy(m, horizon);
  return {to_json(r), r.certificate.oracle_agrees};
}

std::pair<json, bool> growth_table_job(const json& job, const json& options, const RunOptions& run) {
  const Module m = module_from_json(require(job, "module", "job"));
  if (const auto* v = std::get_if<VectorSpaceModule>(&m.value)) {
    const Index h = horizon_for(options, run, default_horizon(v->dim()));
    Lattice start = v->distinguished();
    if (options.contains("lattice")) {
      start = lattice_from_json(options.at("lattice"), "options.lattice");
    } else if (options.contains("generators")) {
      start = Lattice(matrix_from_json(options.at("generators"), "options.generators").transpose());
    }
    if (start.ambient_dim() != v->dim()) throw SchemaError("options: starting lattice has the wrong dimension");
    return {growth_record(trajectory_growth(*v, start, h).certificate), true};
  }
  if (const auto* t = std::get_if<TorsionModule>(&m.value)) {
    const Index h = horizon_for(options, run, default_horizon(t->cells()));
    std::vector<VectorQ> start;
    if (options.contains("generators")) {
      const MatrixQ g = matrix_from_json(options.at("generators"), "options.generators");
      if (g.cols() != t->cells()) throw SchemaError("options.generators: wrong vector length");
      for (Index i = 0; i < g.rows(); ++i) start.push_back(g.row(i).transpose());
    } else {
      for (Index i = 0; i < t->cells(); ++i) start.push_back(standard_generator(*t, i));
    }
    return {growth_record(trajectory_growth(*t, start, h).certificate), true};
  }
  if (const auto* b = std::get_if<BernoulliModule>(&m.value)) {
    const Index h = horizon_for(options, run, 12);
    return {growth_record(trajectory_growth(*b, h).certificate), true};
  }
  throw SchemaError("module: growth_table needs a vector_space, torsion or bernoulli module");
}

std::pair<json, bool> analyze_cyclic_job(const json& job, const json& options) {
  const Module m = module_from_json(require(job, "module", "job"));
  const auto* v = std::get_if<VectorSpaceModule>(&m.value);
  if (!v) throw SchemaError("module: analyze_cyclic needs a vector_space module");
  VectorQ x = VectorQ::Zero(v->dim());
  if (options.contains("vector")) {
    x = vector_from_json(options.at("vector"), "options.vector");
    if (x.size() != v->dim()) throw SchemaError("options.vector: wrong length");
  } else if (v->dim() > 0) {
    x(0) = FieldElement(1);
  }
  const CyclicAnalysis a = cyclic_trajectory_analysis(*v, x);
  return {to_json(a), a.smith_pattern_holds};
}

std::pair<json, bool> verify_job(const json& options, const RunOptions& run) {
  std::string suite;
  if (run.suite) {
    suite = *run.suite;
  } else {
    const json& s = require(options, "suite", "options");
    if (!s.is_string()) throw SchemaError("options.suite: expected a string");
    suite = s.get<std::string>();
  }
  const std::uint64_t seed = run.seed ? *run.seed : option_integer<std::uint64_t>(options, "seed", 0);
  const Index size = option_integer<Index>(options, "size", 100);
  const SuiteReport r = run_suite(suite, seed, size);
  return {to_json(r), r.passed()};
}

}  // namespace

JobOutcome run_job(const json& job, const RunOptions& run) {
  JobOutcome out;
  json& rec = out.record;
  rec["command"] = job.is_object() && job.contains("command") ? job.at("command") : json(nullptr);
  rec["descriptor_hash"] = descriptor_hash(job.is_object() && job.contains("module") ? job.at("module") : job);
  try {
    const std::string command = [&] {
      const json& c = require(job, "command", "job");
      if (!c.is_string()) throw SchemaError("job.command: expected a string");
      return c.get<std::string>();
    }();
    const json options = job.contains("options") ? job.at("options") : json::object();
    if (!options.is_object()) throw SchemaError("job.options: expected an object");

    std::pair<json, bool> result;
    if (command == "entropy") {
      result = entropy_job(job, options, run);
    } else if (command == "growth_table") {
      result = growth_table_job(job, options, run);
    } else if (command == "analyze_cyclic") {
      result = analyze_cyclic_job(job, options);
    } else if (command == "verify") {
      result = verify_job(options, run);
    } else {
      throw SchemaError("job.command: unknown command \"" + command + "\"");
    }
    rec["status"] = result.second ? "pass" : "fail";
    rec["result"] = std::move(result.first);
    out.exit_code = result.second ? exit_ok : exit_failed;
  } catch (const SchemaError& e) {
    rec["status"] = "schema_error";
    rec["error"] = {{"message", e.what()}};
    out.exit_code = exit_schema;
  } catch (const Error& e) {
    rec["status"] = "error";
    rec["error"] = {{"operation", e.operation()}, {"message", e.what()}};
    out.exit_code = exit_computation;
  } catch (const json::exception& e) {
    rec["status"] = "schema_error";
    rec["error"] = {{"message", e.what()}};
    out.exit_code = exit_schema;
  }
  return out;
}

RunOutcome run_document(const json& document, const RunOptions& options) {
  json jobs;
  if (document.is_array()) {
    jobs = document;
  } else if (document.is_object() && document.contains("jobs")) {
    jobs = document.at("jobs");
    if (!jobs.is_array()) jobs = json::array({jobs});
  } else {
    jobs = json::array({document});
  }
  RunOutcome out;
  json records = json::array();
  for (const json& job : jobs) {
    JobOutcome o = run_job(job, options);
    out.exit_code = std::max(out.exit_code, o.exit_code);
    records.push_back(std::move(o.record));
  }
  out.report = {{"tool", "valent"}, {"version", VALENT_VERSION}, {"jobs", std::move(records)}};
  return out;
}

}  // namespace valent::cli
