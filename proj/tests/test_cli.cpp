#include <gtest/gtest.h>

#include "cases.hpp"
#include "job_io.hpp"
#include "runner.hpp"
#include "suites.hpp"

using namespace valent;
using namespace valent::cli;

namespace {

json job(const char* text) { return json::parse(text); }

const json& only_job(const RunOutcome& r) { return r.report.at("jobs").at(0); }

}  // namespace

TEST(JobIo, ParsesModuleKinds) {
  const Module v = module_from_json(job(R"J({"kind":"vector_space","dim":2,"matrix":[["t",0],["1/2*t^(1/3)","1"]]})J"));
  ASSERT_TRUE(std::holds_alternative<VectorSpaceModule>(v.value));
  EXPECT_EQ(std::get<VectorSpaceModule>(v.value).action()(1, 0), monomial(mpq_class(1, 3), mpq_class(1, 2)));

  const Module t = module_from_json(job(R"J({"kind":"torsion","annihilators":["t","t^2"],"matrix":[["0","0"],["t","0"]]})J"));
  ASSERT_TRUE(std::holds_alternative<TorsionModule>(t.value));
  EXPECT_EQ(std::get<TorsionModule>(t.value).cells(), 2);

  const Module s = module_from_json(job(R"J({"kind":"direct_sum","summands":[
      {"kind":"bernoulli","cell_annihilators":["t^(1/3)"]},{"kind":"free_polynomial"}]})J"));
  ASSERT_TRUE(std::holds_alternative<DirectSumModule>(s.value));
}

TEST(JobIo, SchemaErrorsNameTheField) {
  const auto message = [](const char* text) {
    try {
      module_from_json(job(text));
    } catch (const SchemaError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"J({"kind":"vector_space","dim":2,"matrix":[["1"]]})J").find("module.matrix"), std::string::npos);
  EXPECT_NE(message(R"J({"kind":"vector_space","matrix":[["1"]]})J").find("dim"), std::string::npos);
  EXPECT_NE(message(R"J({"kind":"nope"})J").find("module.kind"), std::string::npos);
  EXPECT_NE(message(R"J({"kind":"vector_space","dim":1,"matrix":[["t^("]]})J").find("module.matrix[0][0]"), std::string::npos);
  EXPECT_NE(message(R"J({"kind":"direct_sum","summands":[{"kind":"torsion"}]})J").find("summands[0]"), std::string::npos);
}

TEST(JobIo, LatticeAndSerialization) {
  const Lattice l = lattice_from_json(job(R"J({"ambient_dim":2,"generators":[["t^-1","0"],["1","t"]]})J"), "lattice");
  EXPECT_EQ(l.ambient_dim(), 2);
  EXPECT_EQ(l.generator_count(), 2);
  EXPECT_EQ(to_json(ExtRational::infinity()), "inf");
  EXPECT_EQ(to_json(ExtRational(-3, 6)), "-1/2");
  EXPECT_EQ(descriptor_hash(job(R"J({"a":1})J")), descriptor_hash(job(R"J({ "a" : 1 })J")));
  EXPECT_NE(descriptor_hash(job(R"J({"a":1})J")), descriptor_hash(job(R"J({"a":2})J")));
  EXPECT_EQ(descriptor_hash(job("{}")).size(), 16u);
}

TEST(RunJob, EntropyExample) {
  const RunOutcome r = run_document(job(R"J({"command":"entropy","module":{"kind":"vector_space","dim":1,"matrix":[["t^(-1/2)"]]}})J"));
  EXPECT_EQ(r.exit_code, exit_ok);
  EXPECT_EQ(only_job(r).at("status"), "pass");
  EXPECT_EQ(only_job(r).at("result").at("value"), "1/2");
  EXPECT_EQ(r.report.at("version"), VALENT_VERSION);
}

TEST(RunJob, GrowthTableExample) {
  const RunOutcome r = run_document(job(R"J({"command":"growth_table",
      "module":{"kind":"vector_space","dim":2,"matrix":[["1","0"],["0","1"]]},"options":{"horizon":5}})J"));
  EXPECT_EQ(r.exit_code, exit_ok);
  EXPECT_EQ(only_job(r).at("result").at("growth"), json({"0", "0", "0", "0", "0"}));
}

TEST(RunJob, GrowthTableFromGenerators) {
  const RunOutcome r = run_document(job(R"J({"command":"growth_table",
      "module":{"kind":"vector_space","dim":1,"matrix":[["t^(-1/2)"]]},"options":{"horizon":3,"generators":[["t^2"]]}})J"));
  EXPECT_EQ(only_job(r).at("result").at("growth"), json({"1/2", "1/2", "1/2"}));
  const RunOutcome b = run_document(job(R"J({"command":"growth_table",
      "module":{"kind":"bernoulli","cell_annihilators":["t^(1/3)"]},"options":{"horizon":4}})J"));
  EXPECT_EQ(only_job(b).at("result").at("growth"), json({"1/3", "1/3", "1/3", "1/3"}));
}

TEST(RunJob, VerifyExampleAndOverrides) {
  const RunOutcome r = run_document(job(R"J({"command":"verify","options":{"suite":"addition","seed":7,"size":20}})J"));
  EXPECT_EQ(r.exit_code, exit_ok);
  EXPECT_EQ(only_job(r).at("result").at("passed"), true);
  EXPECT_TRUE(only_job(r).at("result").at("counterexample").is_null());

  RunOptions o;
  o.suite = "valuation_axioms";
  o.seed = 99;
  const RunOutcome s = run_document(job(R"J({"command":"verify","options":{"size":5}})J"), o);
  EXPECT_EQ(only_job(s).at("result").at("suite"), "valuation_axioms");
  EXPECT_EQ(only_job(s).at("result").at("seed"), 99);
}

TEST(RunJob, AnalyzeCyclic) {
  const RunOutcome r = run_document(job(R"J({"command":"analyze_cyclic",
      "module":{"kind":"vector_space","dim":2,"matrix":[["0","t^-1"],["1","0"]]}})J"));
  EXPECT_EQ(r.exit_code, exit_ok);
  EXPECT_EQ(only_job(r).at("result").at("s_valuation"), "1");
  EXPECT_EQ(only_job(r).at("result").at("smith_pattern_holds"), true);
}

TEST(RunJob, ExitCodes) {
  EXPECT_EQ(run_document(job(R"J({"command":"launch"})J")).exit_code, exit_schema);
  EXPECT_EQ(run_document(job(R"J({"module":{}})J")).exit_code, exit_schema);
  EXPECT_EQ(run_document(job(R"J({"command":"verify","options":{"suite":"nope"}})J")).exit_code, exit_schema);
  EXPECT_EQ(run_document(job(R"J({"command":"verify","options":{"suite":"linalg","seed":-1}})J")).exit_code, exit_schema);

  const RunOutcome zero = run_document(job(R"J({"command":"analyze_cyclic",
      "module":{"kind":"vector_space","dim":1,"matrix":[["t"]]},"options":{"vector":["0"]}})J"));
  EXPECT_EQ(zero.exit_code, exit_computation);
  EXPECT_EQ(only_job(zero).at("error").at("operation"), "cyclic_trajectory_analysis");

  const RunOutcome bad_action = run_document(job(R"J({"command":"entropy",
      "module":{"kind":"torsion","annihilators":["t","t^2"],"matrix":[["0","0"],["1","0"]]}})J"));
  EXPECT_EQ(bad_action.exit_code, exit_computation);
}

TEST(RunJob, MultipleJobsRunInOrderAndWorstExitWins) {
  const RunOutcome r = run_document(job(R"J({"jobs":[
      {"command":"entropy","module":{"kind":"free_polynomial"}},
      {"command":"nope"},
      {"command":"entropy","module":{"kind":"torsion","annihilators":["t"]}}]})J"));
  ASSERT_EQ(r.report.at("jobs").size(), 3u);
  EXPECT_EQ(r.report.at("jobs").at(0).at("result").at("value"), "inf");
  EXPECT_EQ(r.report.at("jobs").at(1).at("status"), "schema_error");
  EXPECT_EQ(r.report.at("jobs").at(2).at("result").at("value"), "0");
  EXPECT_EQ(r.exit_code, exit_schema);
  EXPECT_EQ(run_document(job(R"J([{"command":"entropy","module":{"kind":"free_polynomial"}}])J")).report.at("jobs").size(), 1u);
}

TEST(Suites, DeterministicPerSeed) {
  for (const auto& name : suite_names()) {
    const json a = to_json(run_suite(name, 5, 4));
    const json b = to_json(run_suite(name, 5, 4));
    EXPECT_EQ(a.dump(), b.dump()) << name;
    EXPECT_EQ(a.at("failed"), 0) << name << " " << a.dump();
    EXPECT_GT(a.at("cases").get<long>(), 0) << name;
  }
  EXPECT_NE(to_json(run_suite("linalg", 1, 3)).dump(), to_json(run_suite("linalg", 2, 3)).dump());
  EXPECT_THROW(run_suite("nope", 1, 1), UnknownSuite);
  EXPECT_EQ(suite_names().size(), 10u);
}

TEST(Suites, IayfOracleCoversDimensionsOneToFour) {
  const SuiteReport r = run_suite("iayf_oracle", 12, 8);
  EXPECT_TRUE(r.passed());
  ASSERT_FALSE(r.properties.empty());
  EXPECT_EQ(r.properties.front().cases, 8);
}

TEST(Rng, SameSeedSameSequence) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(1000), b.below(1000));
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const long x = c.between(-2, 2);
    EXPECT_GE(x, -2);
    EXPECT_LE(x, 2);
  }
  EXPECT_EQ(valuation_grid(0, 1, 2), (std::vector<mpq_class>{0, mpq_class(1, 2), 1}));
}
