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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "cognitive_snippets.h"
#include "generators.h"
#include "stubscrub/classifier.h"
#include "stubscrub/refactorer.h"
#include "stubscrub/trace_model.h"

namespace stubscrub {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Pinned limits.
constexpr double kMotivatingSeconds = 10.0;
constexpr int kMinFullDefinitions = 25;
constexpr int kMinLoopDefinitions = 2;
constexpr int kMinParameterizedDefinitions = 1;
constexpr int kOracleCases = 100;
constexpr int kOracleMaxTests = 10;
constexpr int kOracleMaxDefinitions = 20;
constexpr unsigned kOracleSeed = 20260101;
constexpr int kRoundTripTraces = 100;
constexpr unsigned kRoundTripSeed = 777;
constexpr size_t kMinSnippets = 10;

const char* const kCorpora[] = {"motivating", "full", "tu_only", "uus", "clean"};

// Collects the reasons a criterion failed.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string Summary() const {
    std::string out;
    for (size_t i = 0; i < failures_.size() && i < 3; ++i) {
      out += (i ? "; " : "") + failures_[i];
    }
    if (failures_.size() > 3) out += "; ...";
    return out;
  }

 private:
  std::vector<std::string> failures_;
};

struct ToolRun {
  int exit_code = -1;
  json report;
  fs::path out;
};

// Runs the stubscrub CLI on `suite`, writing into a fresh directory.
ToolRun RunTool(const fs::path& suite, const std::string& flags, bool resolve = true) {
  fs::path work = testing::ScratchDir("acceptance");
  ToolRun run;
  run.out = work / "out";
  std::string command = std::string(STUBSCRUB_BINARY) + " --suite " +
                        suite.string() + " --trace " + (work / "trace.txt").string() +
                        " --report " + (work / "report.json").string() + " " + flags;
  if (resolve) command += " --out " + run.out.string();
  command += " > " + (work / "stdout.txt").string() + " 2>&1";
  int status = std::system(command.c_str());
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (fs::exists(work / "report.json")) {
    std::ifstream in(work / "report.json");
    run.report = json::parse(in);
  }
  return run;
}

std::string ReadLine(const fs::path& file, int line) {
  std::ifstream in(file);
  std::string text;
  for (int i = 0; i < line && std::getline(in, text); ++i) {
  }
  return text;
}

// Splits "path:line:occ".
std::pair<std::string, int> SplitLocation(const std::string& location) {
  size_t last = location.rfind(':');
  size_t mid = location.rfind(':', last - 1);
  return {location.substr(0, mid),
          std::stoi(location.substr(mid + 1, last - mid - 1))};
}

json ChangeSections(const json& report) {
  return {{"entries", report["entries"]},
          {"files", report["files"]},
          {"new_classes", report["new_classes"]},
          {"moved_tests", report["moved_tests"]},
          {"summary", report["summary"]}};
}

size_t TotalEdits(const json& report) {
  size_t edits = 0;
  for (const auto& entry : report["entries"]) edits += entry["edits"].size();
  return edits;
}

bool Criterion1(Check& check) {
  fs::path suite = testing::CorpusPath("motivating");
  auto start = std::chrono::steady_clock::now();
  ToolRun run = RunTool(suite, "--validate");
  ToolRun again = RunTool(run.out, "--detect-only", false);
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  check.Expect(run.exit_code == 0, "exit code " + std::to_string(run.exit_code));
  check.Expect(run.report.value("validation", "") == "passed", "validation");
  std::map<std::string, std::string> kinds;
  for (const auto& entry : run.report["entries"]) {
    auto [file, line] = SplitLocation(entry["location"]);
    std::string text = ReadLine(suite / file, line);
    for (const char* method : {"getNextBuild", "getChangeSet", "getResult"}) {
      if (text.find(method) != std::string::npos) kinds[method] = entry["kind"];
    }
    check.Expect(entry["status"] == "resolved", "unresolved " + entry["location"].get<std::string>());
  }
  check.Expect(run.report["entries"].size() == 3, "expected 3 definitions");
  check.Expect(kinds == std::map<std::string, std::string>{{"getNextBuild", "TU"},
                                                           {"getChangeSet", "TU"},
                                                           {"getResult", "UUH"}},
               "wrong kinds");
  check.Expect(again.exit_code == 0 && again.report["entries"].empty(),
               "re-detection found definitions");
  check.Expect(seconds < kMotivatingSeconds, "took " + std::to_string(seconds) + " s");
  return check.ok();
}

bool Criterion2(Check& check) {
  fs::path suite = testing::CorpusPath("full");
  SuiteModel model = SuiteModel::Load(suite);
  Classification classification = ClassifyAll(testing::RunAndTrace(model), model);
  size_t total = classification.classified.size() + classification.excluded.size();
  check.Expect(total >= kMinFullDefinitions, std::to_string(total) + " definitions");
  std::set<StubbingKind> kinds;
  for (const auto& entry : classification.classified) kinds.insert(entry.kind);
  check.Expect(kinds.size() == 3, "not all three kinds present");
  int loops = 0;
  int parameterized = 0;
  for (const auto& entry : classification.excluded) {
    if (DefinedInLoop(entry.group.location, model)) ++loops;
    bool param = false;
    for (const auto* tests : {&entry.group.unnecessary_tests, &entry.group.used_tests}) {
      for (const TestKey& test : *tests) {
        param = param || test.test_name.find('[') != std::string::npos;
      }
    }
    if (param) ++parameterized;
  }
  check.Expect(loops >= kMinLoopDefinitions, std::to_string(loops) + " loop definitions");
  check.Expect(parameterized >= kMinParameterizedDefinitions,
               std::to_string(parameterized) + " parameterized definitions");

  ToolRun run = RunTool(suite, "--validate");
  check.Expect(run.exit_code == 0, "exit code " + std::to_string(run.exit_code));
  size_t skipped = 0;
  for (const auto& entry : run.report["entries"]) {
    if (entry["status"] == "skipped") {
      ++skipped;
    } else {
      check.Expect(entry["status"] == "resolved",
                   "not resolved " + entry["location"].get<std::string>());
    }
  }
  check.Expect(run.report["entries"].size() == total, "report misses definitions");
  check.Expect(skipped == classification.excluded.size(), "excluded not reported as skipped");
  return check.ok();
}

bool Criterion3(Check& check) {
  std::mt19937 rng(kOracleSeed);
  for (int i = 0; i < kOracleCases; ++i) {
    auto input = testing::RandomClassifierCase(rng, kOracleMaxTests, kOracleMaxDefinitions);
    SuiteModel model = SuiteModel::FromSources(input.sources);
    Classification actual = ClassifyAll(input.trace, model);
    std::map<CodeLocation, testing::ReferenceLabel> got;
    for (const auto* list : {&actual.classified, &actual.excluded}) {
      for (const auto& entry : *list) {
        testing::ReferenceLabel label;
        label.kind = std::string(ToString(entry.kind));
        label.excluded = list == &actual.excluded;
        for (const auto& t : entry.group.unnecessary_tests) {
          label.unnecessary_tests.insert(t.ToString());
        }
        for (const auto& t : entry.group.used_tests) label.used_tests.insert(t.ToString());
        got[entry.group.location] = label;
      }
    }
    check.Expect(got == testing::ReferenceClassify(input),
                 "case " + std::to_string(i) + " differs from the oracle");
  }
  return check.ok();
}

using Projection = std::multiset<std::tuple<std::string, std::string, std::string>>;

// Used-stubbing invocations per test. Call sites are compared only when
// they lie in files the resolution left untouched.
std::map<TestKey, Projection> Project(const ExecutionTrace& trace,
                                      const std::set<std::string>& changed,
                                      const ResolveResult* moves) {
  std::map<TestKey, Projection> out;
  for (const auto& record : trace.records) {
    TestKey test{record.test_class, record.test_name};
    if (moves) test = MapMovedTest(test, *moves);
    Projection& events = out[test];
    for (const auto& invocation : record.invocations) {
      std::string site = changed.contains(invocation.call_site.file_path)
                             ? ""
                             : invocation.call_site.ToString();
      events.emplace(invocation.invoked_class, invocation.invoked_method, site);
    }
  }
  return out;
}

bool Criterion4(Check& check) {
  for (const char* corpus : kCorpora) {
    for (bool keep : {false, true}) {
      std::string tag = std::string(corpus) + (keep ? " keep-setup" : "");
      SuiteModel model = SuiteModel::Load(testing::CorpusPath(corpus));
      SuiteRunResult before_run;
      ExecutionTrace before = testing::RunAndTrace(model, &before_run);
      Classification classification = ClassifyAll(before, model);
      ResolveResult result = Resolve(model, classification.classified,
                                     classification.excluded, {keep});
      SuiteRunResult after_run;
      ExecutionTrace after =
          testing::RunAndTrace(SuiteModel::FromSources(result.files), &after_run);
      std::set<std::string> changed = result.modified_files;
      changed.insert(result.added_files.begin(), result.added_files.end());
      check.Expect(before_run.AllPassed() && after_run.AllPassed(), tag + ": failing tests");
      check.Expect(before_run.outcomes.size() == after_run.outcomes.size(),
                   tag + ": test count changed");
      check.Expect(Project(before, changed, &result) == Project(after, changed, nullptr),
                   tag + ": invocation multisets differ");
    }
  }
  return check.ok();
}

bool Criterion5(Check& check) {
  for (const char* corpus : kCorpora) {
    for (const char* flags : {"", "--keep-setup-stubbings"}) {
      std::string tag = std::string(corpus) + " " + flags;
      ToolRun first = RunTool(testing::CorpusPath(corpus), flags);
      ToolRun second = RunTool(first.out, flags);
      ToolRun third = RunTool(second.out, flags);
      check.Expect(first.exit_code == 0 && second.exit_code == 0 && third.exit_code == 0,
                   tag + ": non-zero exit");
      check.Expect(TotalEdits(second.report) == 0, tag + ": second run edited");
      check.Expect(second.report["files"]["modified"].empty() &&
                       second.report["files"]["added"].empty(),
                   tag + ": second run wrote files");
      check.Expect(testing::ReadTree(second.out) == testing::ReadTree(first.out),
                   tag + ": second run changed sources");
      check.Expect(ChangeSections(second.report).dump() ==
                       ChangeSections(third.report).dump(),
                   tag + ": change sections differ");
    }
  }
  return check.ok();
}

bool Criterion6(Check& check) {
  for (const char* corpus : kCorpora) {
    fs::path suite = testing::CorpusPath(corpus);
    ToolRun plain = RunTool(suite, "--validate");
    ToolRun keep = RunTool(suite, "--validate --keep-setup-stubbings");
    check.Expect(plain.exit_code == 0 && keep.exit_code == 0,
                 std::string(corpus) + ": non-zero exit");
    std::map<std::string, json> plain_entries;
    for (const auto& entry : plain.report["entries"]) {
      plain_entries[entry["location"]] = entry;
    }
    for (const auto& entry : keep.report["entries"]) {
      std::string location = entry["location"];
      if (entry["kind"] == "UUS") {
        check.Expect(entry["edits"].empty() && entry["status"] != "resolved",
                     "UUS edited at " + location);
      } else {
        check.Expect(plain_entries[location] == entry, "differs at " + location);
      }
    }
    check.Expect(keep.report["entries"].size() == plain.report["entries"].size(),
                 std::string(corpus) + ": entry count differs");
  }
  fs::path uus = testing::CorpusPath("uus");
  json plain = RunTool(uus, "").report["metrics"];
  json keep = RunTool(uus, "--keep-setup-stubbings").report["metrics"];
  for (const char* metric : {"cog", "loc"}) {
    std::string before = std::string(metric) + "_before";
    std::string after = std::string(metric) + "_after";
    check.Expect(keep[before] == plain[before], std::string(metric) + " base differs");
    check.Expect(keep[after].get<int64_t>() - keep[before].get<int64_t>() <=
                     plain[after].get<int64_t>() - plain[before].get<int64_t>(),
                 std::string(metric) + " delta larger with keep-setup");
  }
  return check.ok();
}

bool Criterion7(Check& check) {
  json tu = RunTool(testing::CorpusPath("tu_only"), "").report["metrics"];
  json uus = RunTool(testing::CorpusPath("uus"), "").report["metrics"];
  check.Expect(tu["loc_pct"].is_number() && tu["loc_pct"].get<double>() <= 0.0,
               "tu_only loc_pct " + tu["loc_pct"].dump());
  check.Expect(uus["loc_pct"].is_number() && uus["loc_pct"].get<double>() > 0.0,
               "uus loc_pct " + uus["loc_pct"].dump());
  const auto& snippets = testing::CognitiveSnippets();
  check.Expect(snippets.size() >= kMinSnippets, "too few snippets");
  for (const auto& snippet : snippets) {
    int score = testing::ScoreMethod(snippet.code);
    check.Expect(score == snippet.expected,
                 std::string(snippet.name) + " scored " + std::to_string(score));
  }
  return check.ok();
}

bool Criterion8(Check& check) {
  ExecutionTrace sample = ParseTrace(testing::ReadTestData("execution_info_sample.txt"));
  check.Expect(sample.records.size() == 1, "sample record count");
  if (sample.records.size() == 1) {
    const auto& record = sample.records[0];
    check.Expect(record.definitions.size() == 1 && record.invocations.empty() &&
                     record.unnecessary.size() == 1,
                 "sample sections");
  }
  check.Expect(ParseTrace(SerializeTrace(sample)) == sample, "sample round trip");
  std::mt19937 rng(kRoundTripSeed);
  for (int i = 0; i < kRoundTripTraces; ++i) {
    ExecutionTrace trace = testing::RandomTrace(rng);
    std::string text = SerializeTrace(trace);
    ExecutionTrace parsed = ParseTrace(text);
    check.Expect(parsed == trace && SerializeTrace(parsed) == text,
                 "trace " + std::to_string(i) + " does not round trip");
  }
  return check.ok();
}

}  // namespace
}  // namespace stubscrub

int main() {
  using stubscrub::Check;
  const std::vector<std::function<bool(Check&)>> criteria = {
      stubscrub::Criterion1, stubscrub::Criterion2, stubscrub::Criterion3,
      stubscrub::Criterion4, stubscrub::Criterion5, stubscrub::Criterion6,
      stubscrub::Criterion7, stubscrub::Criterion8,
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    bool ok = false;
    try {
      ok = criteria[i](check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL");
    if (!ok) {
      ++failed;
      std::cout << " (" << check.Summary() << ")";
    }
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
