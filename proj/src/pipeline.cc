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

#include "stubscrub/pipeline.h"

#include <spawn.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "stubscrub/java/lexer.h"

extern char** environ;

namespace stubscrub {

namespace {

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void WriteFile(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void ResetTrace(const fs::path& trace) {
  if (trace.has_parent_path()) fs::create_directories(trace.parent_path());
  fs::remove(trace);
}

fs::path Sibling(const fs::path& path, const std::string& suffix) {
  return fs::path(path.string() + suffix);
}

fs::path TextReportPath(const fs::path& report) {
  fs::path text = report;
  if (text.extension() == ".json") return text.replace_extension(".txt");
  return Sibling(report, ".txt");
}

nlohmann::json TestList(const std::vector<TestKey>& tests) {
  nlohmann::json out = nlohmann::json::array();
  for (const TestKey& test : tests) out.push_back(test.ToString());
  return out;
}

nlohmann::json Percent(std::optional<double> value) {
  if (!value) return nullptr;
  return *value;
}

std::string FormatPercent(std::optional<double> value) {
  if (!value) return "undefined (zero base)";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%+.2f%%", *value);
  return buffer;
}

std::string DumpWithExclusions(const Classification& classification) {
  std::string out = FormatClassificationDump(classification.classified);
  std::string excluded = FormatClassificationDump(classification.excluded);
  std::istringstream lines(excluded);
  for (std::string line; std::getline(lines, line);) out += line + "\texcluded\n";
  return out;
}

// Restores the files a failed validation must not leave behind.
class Rollback {
 public:
  void Remember(const fs::path& path) {
    if (saved_.contains(path)) return;
    saved_[path] = fs::exists(path) ? std::optional(ReadFile(path)) : std::nullopt;
  }
  void Restore() const {
    for (const auto& [path, text] : saved_) {
      if (text) {
        WriteFile(path, *text);
      } else {
        fs::remove(path);
      }
    }
  }

 private:
  std::map<fs::path, std::optional<std::string>> saved_;
};

}  // namespace

void CheckConfig(const RunConfig& config) {
  if (config.suite.empty()) throw std::invalid_argument("--suite is required");
  if (config.out && config.in_place) {
    throw std::invalid_argument("--out and --in-place are mutually exclusive");
  }
  if (!config.detect_only && !config.out && !config.in_place) {
    throw std::invalid_argument(
        "one of --out, --in-place or --detect-only is required");
  }
  if (config.runs < 1) throw std::invalid_argument("--runs must be at least 1");
}

SuiteRunResult InProcessExecutor::Run(const fs::path& suite_root,
                                      const fs::path& trace) {
  ResetTrace(trace);
  SuiteModel model = SuiteModel::Load(suite_root);
  StubShim shim(trace);
  return RunSuite(model, shim);
}

SuiteRunResult ChildProcessExecutor::Run(const fs::path& suite_root,
                                         const fs::path& trace) {
  ResetTrace(trace);
  fs::path results = Sibling(trace, ".results.json");
  fs::remove(results);

  std::vector<std::string> args = {program_.string(), "run-suite", "--suite",
                                   suite_root.string(), "--results",
                                   results.string()};
  std::vector<char*> argv;
  for (std::string& arg : args) argv.push_back(arg.data());
  argv.push_back(nullptr);

  std::string trace_var = std::string(kTracePathEnv) + "=" + trace.string();
  std::vector<char*> envp;
  size_t prefix = std::strlen(kTracePathEnv) + 1;
  for (char** env = environ; *env; ++env) {
    if (std::strncmp(*env, trace_var.c_str(), prefix) != 0) envp.push_back(*env);
  }
  envp.push_back(trace_var.data());
  envp.push_back(nullptr);

  pid_t pid = 0;
  int rc = posix_spawn(&pid, program_.c_str(), nullptr, nullptr, argv.data(),
                       envp.data());
  if (rc != 0) {
    throw std::runtime_error("cannot start " + program_.string() + ": " +
                             std::strerror(rc));
  }
  int status = 0;
  if (waitpid(pid, &status, 0) < 0) {
    throw std::runtime_error("lost the suite runner process");
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw std::runtime_error("suite runner failed on " + suite_root.string());
  }
  SuiteRunResult result = RunResultFromJson(ReadFile(results));
  fs::remove(results);
  return result;
}

int RunSuiteCommand(const fs::path& suite_root, const fs::path& results) {
  try {
    SuiteModel model = SuiteModel::Load(suite_root);
    StubShim shim = StubShim::FromEnvironment();
    WriteFile(results, RunResultToJson(RunSuite(model, shim)));
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "run-suite: " << e.what() << "\n";
    return kExitFatal;
  }
}

Report CreateReport(const SuiteModel& before, const SuiteModel& after,
                    const ResolveResult& result) {
  Report report;
  report.entries = result.entries;
  report.modified_files.assign(result.modified_files.begin(),
                               result.modified_files.end());
  report.added_files.assign(result.added_files.begin(), result.added_files.end());
  report.new_classes = result.new_classes;
  report.moved_tests = result.moved_tests;
  report.test_less_classes = result.test_less_classes;
  report.metrics = MetricsBlock{MeasureTestFiles(before), MeasureTestFiles(after)};
  return report;
}

Report CreateDetectionReport(const SuiteModel& suite,
                             const Classification& classification) {
  Report report;
  report.detect_only = true;
  for (const auto* list : {&classification.classified, &classification.excluded}) {
    for (const ClassifiedStubbing& cus : *list) {
      ResolutionEntry entry;
      entry.location = cus.group.location;
      entry.kind = cus.kind;
      entry.strategy = "none";
      entry.status = list == &classification.excluded
                         ? ResolutionStatus::kSkipped
                         : ResolutionStatus::kDetected;
      if (list == &classification.excluded) {
        entry.reason = "defined in a loop or reached from a parameterized test";
      }
      entry.affected_tests = cus.group.unnecessary_tests;
      report.entries.push_back(std::move(entry));
    }
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const ResolutionEntry& a, const ResolutionEntry& b) {
              return a.location < b.location;
            });
  ComplexitySnapshot snapshot = MeasureTestFiles(suite);
  report.metrics = MetricsBlock{snapshot, snapshot};
  return report;
}

nlohmann::json ReportToJson(const Report& report) {
  nlohmann::json summary = {{"tu", 0}, {"uuh", 0}, {"uus", 0},
                            {"skipped", 0}, {"errors", 0}};
  nlohmann::json entries = nlohmann::json::array();
  for (const ResolutionEntry& entry : report.entries) {
    switch (entry.status) {
      case ResolutionStatus::kSkipped:
        summary["skipped"] = summary["skipped"].get<int>() + 1;
        break;
      case ResolutionStatus::kError:
        summary["errors"] = summary["errors"].get<int>() + 1;
        break;
      default: {
        std::string kind(ToString(entry.kind));
        for (char& c : kind) c = static_cast<char>(std::tolower(c));
        summary[kind] = summary[kind].get<int>() + 1;
      }
    }
    nlohmann::json edits = nlohmann::json::array();
    for (const SourceEdit& edit : entry.edits) {
      edits.push_back({{"kind", edit.kind},
                       {"file", edit.file},
                       {"line", edit.line},
                       {"scope", edit.scope},
                       {"from", edit.from},
                       {"to", edit.to}});
    }
    entries.push_back({{"location", entry.location.ToString()},
                       {"kind", std::string(ToString(entry.kind))},
                       {"strategy", entry.strategy},
                       {"status", std::string(ToString(entry.status))},
                       {"reason", entry.reason},
                       {"edits", edits},
                       {"affected_tests", TestList(entry.affected_tests)}});
  }
  nlohmann::json moved = nlohmann::json::array();
  for (const MovedTest& m : report.moved_tests) {
    moved.push_back({{"from", m.from.ToString()}, {"to", m.to_class}});
  }
  nlohmann::json out = {
      {"mode", report.detect_only ? "detect-only" : "resolve"},
      {"keep_setup_stubbings", report.keep_setup_stubbings},
      {"summary", summary},
      {"entries", entries},
      {"files",
       {{"modified", report.modified_files}, {"added", report.added_files}}},
      {"new_classes", report.new_classes},
      {"moved_tests", moved},
      {"flags",
       {{"test_less_classes", report.test_less_classes},
        {"tests_missing_from_trace", TestList(report.missing_tests)}}},
      {"validation", report.validation},
  };
  if (report.metrics) {
    const MetricsBlock& m = *report.metrics;
    out["metrics"] = {
        {"loc_before", m.before.loc},
        {"loc_after", m.after.loc},
        {"loc_pct", Percent(PercentDelta(m.before.loc, m.after.loc))},
        {"cog_before", m.before.cognitive},
        {"cog_after", m.after.cognitive},
        {"cog_pct", Percent(PercentDelta(m.before.cognitive, m.after.cognitive))},
    };
  } else {
    out["metrics"] = nullptr;
  }
  return out;
}

std::string ReportToText(const Report& report) {
  std::ostringstream out;
  out << "stubscrub report (" << (report.detect_only ? "detect-only" : "resolve")
      << (report.keep_setup_stubbings ? ", setup stubbings kept" : "") << ")\n";
  if (report.entries.empty()) out << "No unnecessary stubbing definitions.\n";
  for (const ResolutionEntry& entry : report.entries) {
    out << "\n" << ToString(entry.kind) << "  " << entry.location.ToString()
        << "  " << ToString(entry.status);
    if (entry.strategy != "none") out << " by " << entry.strategy;
    out << "\n";
    if (!entry.reason.empty()) out << "  reason: " << entry.reason << "\n";
    out << "  unnecessary in " << entry.affected_tests.size() << " test(s)\n";
    for (const SourceEdit& edit : entry.edits) {
      out << "  - " << edit.kind << " " << edit.file;
      if (edit.line > 0) out << ":" << edit.line;
      if (!edit.scope.empty()) out << " in " << edit.scope;
      if (!edit.from.empty() || !edit.to.empty()) {
        out << " (" << edit.from << (edit.to.empty() ? "" : " -> " + edit.to)
            << ")";
      }
      out << "\n";
    }
  }
  if (!report.modified_files.empty() || !report.added_files.empty()) {
    out << "\nFiles:\n";
    for (const auto& f : report.modified_files) out << "  modified " << f << "\n";
    for (const auto& f : report.added_files) out << "  added    " << f << "\n";
  }
  for (const auto& cls : report.test_less_classes) {
    out << "\nWarning: " << cls << " no longer declares any test.\n";
  }
  if (!report.missing_tests.empty()) {
    out << "\nTests without an execution record:\n";
    for (const TestKey& test : report.missing_tests) {
      out << "  " << test.ToString() << "\n";
    }
  }
  if (report.metrics) {
    const MetricsBlock& m = *report.metrics;
    out << "\nLOC " << m.before.loc << " -> " << m.after.loc << " ("
        << FormatPercent(PercentDelta(m.before.loc, m.after.loc)) << ")\n"
        << "Cognitive complexity " << m.before.cognitive << " -> "
        << m.after.cognitive << " ("
        << FormatPercent(PercentDelta(m.before.cognitive, m.after.cognitive))
        << ")\n";
  }
  out << "Validation: " << report.validation << "\n";
  return out.str();
}

PipelineResult RunPipeline(const RunConfig& config, SuiteExecutor& executor) {
  PipelineResult result;
  auto fatal = [&](const std::string& message) {
    result.exit_code = kExitFatal;
    result.error = message;
    return result;
  };
  try {
    CheckConfig(config);
  } catch (const std::invalid_argument& e) {
    return fatal(e.what());
  }
  if (!fs::is_directory(config.suite)) {
    return fatal("suite root " + config.suite.string() + " is not a directory");
  }

  std::optional<SuiteModel> model;
  try {
    model.emplace(SuiteModel::Load(config.suite));
  } catch (const std::exception& e) {
    return fatal(std::string("cannot parse the suite: ") + e.what());
  }

  try {
    result.pristine = executor.Run(config.suite, config.trace);
    for (int i = 2; i <= config.runs; ++i) {
      fs::path extra = Sibling(config.trace, ".run" + std::to_string(i));
      SuiteRunResult again = executor.Run(config.suite, extra);
      fs::remove(extra);
      if (again != result.pristine) {
        return fatal("test outcomes differ between runs 1 and " +
                     std::to_string(i) + "; the suite looks flaky");
      }
    }
  } catch (const std::exception& e) {
    return fatal(std::string("cannot run the suite: ") + e.what());
  }
  if (!result.pristine.AllPassed()) {
    std::string failing;
    for (const TestOutcome& o : result.pristine.outcomes) {
      if (o.status == TestStatus::kFailed) {
        failing += "\n  " + o.test_class + "." + o.test_name + ": " + o.message;
      }
    }
    return fatal("the unmodified suite has failing tests:" + failing);
  }

  ExecutionTrace trace;
  try {
    trace = ParseTrace(ReadFile(config.trace));
    result.classification = ClassifyAll(trace, *model);
  } catch (const std::exception& e) {
    return fatal(std::string("trace does not match the suite: ") + e.what());
  }

  try {
    WriteFile(Sibling(config.report, ".classification.tsv"),
              DumpWithExclusions(result.classification));
    std::vector<TestKey> missing = TestsMissingFromTrace(trace, *model);

    if (config.detect_only) {
      result.report = CreateDetectionReport(*model, result.classification);
      result.report.missing_tests = missing;
      WriteFile(config.report, ReportToJson(result.report).dump(2) + "\n");
      WriteFile(TextReportPath(config.report), ReportToText(result.report));
      return result;
    }

    ResolveOptions options;
    options.keep_setup_stubbings = config.keep_setup_stubbings;
    result.resolution = Resolve(*model, result.classification.classified,
                                result.classification.excluded, options);
    const ResolveResult& resolution = *result.resolution;
    SuiteModel after = SuiteModel::FromSources(resolution.files);

    fs::path target = config.in_place ? config.suite : *config.out;
    Rollback rollback;
    if (!config.in_place) {
      if (fs::exists(target) && !fs::is_empty(target)) {
        return fatal("output directory " + target.string() + " is not empty");
      }
      fs::create_directories(target);
      fs::copy(config.suite, target, fs::copy_options::recursive);
    }
    for (const auto* paths : {&resolution.modified_files, &resolution.added_files}) {
      for (const std::string& path : *paths) {
        rollback.Remember(target / path);
        WriteFile(target / path, resolution.files.at(path));
      }
    }

    result.report = CreateReport(*model, after, resolution);
    result.report.keep_setup_stubbings = config.keep_setup_stubbings;
    result.report.missing_tests = missing;

    bool errors = std::any_of(
        resolution.entries.begin(), resolution.entries.end(),
        [](const ResolutionEntry& e) { return e.status == ResolutionStatus::kError; });
    result.exit_code = errors ? kExitResolutionErrors : kExitOk;

    if (config.validate) {
      fs::path validation_trace = Sibling(config.trace, ".validation");
      result.validation = executor.Run(target, validation_trace);
      bool passed = result.validation->AllPassed() &&
                    result.validation->outcomes.size() ==
                        result.pristine.outcomes.size();
      result.report.validation = passed ? "passed" : "failed";
      if (!passed) {
        rollback.Restore();
        result.exit_code = kExitValidationFailed;
      }
    }

    WriteFile(config.report, ReportToJson(result.report).dump(2) + "\n");
    WriteFile(TextReportPath(config.report), ReportToText(result.report));
  } catch (const std::exception& e) {
    return fatal(e.what());
  }
  return result;
}

}  // namespace stubscrub
