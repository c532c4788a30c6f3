#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "runner.hpp"
#include "suites.hpp"

using namespace valent::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact valuation entropy of module endomorphisms"};
  app.set_version_flag("--version", VALENT_VERSION);

  std::string out_path;
  RunOptions options;
  bool list_suites = false;
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--seed", options.seed, "Seed for verify jobs");
  app.add_option("--horizon", options.horizon, "Growth table horizon")->check(CLI::PositiveNumber);
  app.add_option("--suite", options.suite, "Run this suite; alone it runs without a job file");
  app.add_flag("--list-suites", list_suites, "Print the suite names");

  auto* run = app.add_subcommand("run", "Run a job file");
  std::string job_path;
  run->add_option("jobfile", job_path, "JSON job file")->required();
  run->fallthrough();
  app.require_subcommand(0, 1);

  CLI11_PARSE(app, argc, argv);

  if (list_suites) {
    for (const auto& name : suite_names()) std::cout << name << '\n';
    return 0;
  }

  json document;
  if (run->parsed()) {
    std::ifstream in(job_path);
    if (!in) {
      std::cerr << "cannot open " << job_path << '\n';
      return exit_schema;
    }
    try {
      document = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << job_path << ": " << e.what() << '\n';
      return exit_schema;
    }
  } else if (options.suite) {
    document = {{"command", "verify"}, {"options", json::object()}};
  } else {
    std::cerr << app.help();
    return exit_schema;
  }

  const RunOutcome outcome = run_document(document, options);
  const std::string text = outcome.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!(out << text)) {
      std::cerr << "cannot write " << out_path << '\n';
      return exit_schema;
    }
  }
  return outcome.exit_code;
}
