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

#ifndef STUBSCRUB_PIPELINE_H_
#define STUBSCRUB_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stubscrub/classifier.h"
#include "stubscrub/metrics.h"
#include "stubscrub/refactorer.h"
#include "stubscrub/runner.h"

namespace stubscrub {

namespace fs = std::filesystem;

enum ExitCode : int {
  kExitOk = 0,
  kExitResolutionErrors = 1,
  kExitValidationFailed = 2,
  kExitFatal = 3,  // unparseable suite, red pristine suite, bad trace
};

struct RunConfig {
  fs::path suite;
  std::optional<fs::path> out;  // mutually exclusive with in_place
  bool in_place = false;
  bool keep_setup_stubbings = false;
  bool detect_only = false;
  bool validate = false;
  int runs = 1;
  fs::path trace = "stubscrub-trace.txt";
  fs::path report = "stubscrub-report.json";
};

// Throws std::invalid_argument when the configuration is inconsistent.
void CheckConfig(const RunConfig& config);

// Runs a whole suite under the stubbing shim, appending execution records
// to `trace` (which the executor truncates first).
class SuiteExecutor {
 public:
  virtual ~SuiteExecutor() = default;
  virtual SuiteRunResult Run(const fs::path& suite_root,
                             const fs::path& trace) = 0;
};

// Loads and runs the suite inside the calling process.
class InProcessExecutor : public SuiteExecutor {
 public:
  SuiteRunResult Run(const fs::path& suite_root, const fs::path& trace) override;
};

// Runs `<program> run-suite --suite DIR --results FILE` as a child process
// with STUBSCRUB_TRACE_PATH pointing at the trace.
class ChildProcessExecutor : public SuiteExecutor {
 public:
  explicit ChildProcessExecutor(fs::path program) : program_(std::move(program)) {}
  SuiteRunResult Run(const fs::path& suite_root, const fs::path& trace) override;

 private:
  fs::path program_;
};

// Body of the `run-suite` subcommand: runs the suite with the shim taken
// from the environment and writes the outcomes as JSON.
int RunSuiteCommand(const fs::path& suite_root, const fs::path& results);

struct MetricsBlock {
  ComplexitySnapshot before;
  ComplexitySnapshot after;
};

struct Report {
  bool detect_only = false;
  bool keep_setup_stubbings = false;
  std::vector<ResolutionEntry> entries;
  std::vector<std::string> modified_files;
  std::vector<std::string> added_files;
  std::vector<std::string> new_classes;
  std::vector<MovedTest> moved_tests;
  std::vector<std::string> test_less_classes;
  std::vector<TestKey> missing_tests;
  std::optional<MetricsBlock> metrics;
  std::string validation = "not-run";  // not-run, passed, failed
};

// Report for a resolution of `before` into `after`.
Report CreateReport(const SuiteModel& before, const SuiteModel& after,
                    const ResolveResult& result);
// Report for a detect-only run: every definition listed, nothing edited.
Report CreateDetectionReport(const SuiteModel& suite,
                             const Classification& classification);

nlohmann::json ReportToJson(const Report& report);
std::string ReportToText(const Report& report);

struct PipelineResult {
  int exit_code = kExitOk;
  std::string error;  // set when exit_code is kExitFatal
  SuiteRunResult pristine;
  Classification classification;
  std::optional<ResolveResult> resolution;
  std::optional<SuiteRunResult> validation;
  Report report;
};

// Runs the tool end to end on `config.suite`. Fatal problems are
// returned as kExitFatal with `error` set rather than thrown.
PipelineResult RunPipeline(const RunConfig& config, SuiteExecutor& executor);

}  // namespace stubscrub

#endif  // STUBSCRUB_PIPELINE_H_
