// Copyright 2026 The Stubscrub Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stubscrub/pipeline.h"

int main(int argc, char** argv) {
  using stubscrub::RunConfig;

  CLI::App app{"Finds and removes unnecessary stubbings in a test suite"};
  RunConfig config;
  std::string out;
  app.add_option("--suite", config.suite, "Root directory of the test suite");
  auto* out_opt =
      app.add_option("--out", out, "Write the updated suite to this directory");
  auto* in_place_opt =
      app.add_flag("--in-place", config.in_place, "Rewrite the suite in place");
  out_opt->excludes(in_place_opt);
  app.add_flag("--keep-setup-stubbings", config.keep_setup_stubbings,
               "Leave stubbings reached through setup methods untouched");
  app.add_flag("--detect-only", config.detect_only,
               "Classify and report without editing sources");
  app.add_flag("--validate", config.validate,
               "Re-run the updated suite and roll back if any test fails");
  app.add_option("--runs", config.runs,
                 "Run the pristine suite this many times to catch flaky tests")
      ->check(CLI::PositiveNumber);
  app.add_option("--trace", config.trace, "Execution trace file")
      ->capture_default_str();
  app.add_option("--report", config.report, "Report file (JSON)")
      ->capture_default_str();

  auto* run_suite = app.add_subcommand(
      "run-suite", "Run a suite under the stubbing shim (used internally)");
  std::string suite_dir;
  std::string results;
  run_suite->add_option("--suite", suite_dir)->required();
  run_suite->add_option("--results", results)->required();
  app.require_subcommand(0, 1);

  CLI11_PARSE(app, argc, argv);

  if (run_suite->parsed()) {
    return stubscrub::RunSuiteCommand(suite_dir, results);
  }
  if (!out.empty()) config.out = out;

  stubscrub::ChildProcessExecutor executor("/proc/self/exe");
  stubscrub::PipelineResult result = stubscrub::RunPipeline(config, executor);
  if (result.exit_code == stubscrub::kExitFatal) {
    std::cerr << "stubscrub: " << result.error << "\n";
    return result.exit_code;
  }
  std::cout << stubscrub::ReportToText(result.report);
  std::cout << "Report written to " << config.report.string() << "\n";
  return result.exit_code;
}
