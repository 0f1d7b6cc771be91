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

#include "stubscrub/classifier.h"

#include <algorithm>
#include <map>
#include <set>

namespace stubscrub {

namespace {

void AddUnique(std::vector<TestKey>& tests, const TestKey& key) {
  if (std::find(tests.begin(), tests.end(), key) == tests.end()) {
    tests.push_back(key);
  }
}

std::string FrameText(const StackFrame& frame) {
  return frame.declaring_class + "." + frame.method_name + "(" +
         frame.file_path + ":" + std::to_string(frame.line) + ")";
}

const MethodInfo& ResolveOrThrow(const StackFrame& frame,
                                 const SuiteModel& suite) {
  const MethodInfo* method = suite.ResolveFrame(frame);
  if (!method) {
    throw AnalysisError("stack frame " + FrameText(frame) +
                        " does not resolve to a method of the suite");
  }
  return *method;
}

bool CallInLoop(const StackFrame& caller, const StackFrame& callee,
                const SuiteModel& suite) {
  const MethodInfo& method = ResolveOrThrow(caller, suite);
  for (const CallSite* site : suite.CallSitesAt(*method.decl, caller.line)) {
    bool matches = site->call ? site->call->name == callee.method_name
                              : callee.method_name == "<init>";
    if (matches && site->in_loop) return true;
  }
  return false;
}

}  // namespace

std::string_view ToString(StubbingKind kind) {
  switch (kind) {
    case StubbingKind::kTotallyUnnecessary:
      return "TU";
    case StubbingKind::kUsedUnnecessarySetup:
      return "UUS";
    case StubbingKind::kUsedUnnecessaryHelper:
      return "UUH";
  }
  return "TU";
}

std::vector<GroupedStubbing> GroupStubbings(const ExecutionTrace& trace) {
  std::map<CodeLocation, GroupedStubbing> groups;
  for (const auto& record : trace.records) {
    TestKey test{record.test_class, record.test_name};
    std::set<StubbingId> unnecessary;
    for (const auto& def : record.unnecessary) {
      unnecessary.insert(def.stubbing_id);
    }
    for (const auto& def : record.definitions) {
      GroupedStubbing& group = groups[def.location];
      group.location = def.location;
      if (unnecessary.contains(def.stubbing_id)) {
        group.unnecessary.push_back(Occurrence{test, def});
        AddUnique(group.unnecessary_tests, test);
      } else {
        group.used.push_back(Occurrence{test, def});
        AddUnique(group.used_tests, test);
      }
    }
  }
  std::vector<GroupedStubbing> out;
  out.reserve(groups.size());
  for (auto& [location, group] : groups) out.push_back(std::move(group));
  return out;
}

bool ThroughSetup(const GroupedStubbing& group, const SuiteModel& suite) {
  bool found = false;
  auto scan = [&](const std::vector<Occurrence>& occurrences) {
    for (const Occurrence& occurrence : occurrences) {
      for (const StackFrame& frame : occurrence.event.stack) {
        if (ResolveOrThrow(frame, suite).role == MethodRole::kSetup) {
          found = true;
        }
      }
    }
  };
  scan(group.unnecessary);
  scan(group.used);
  return found;
}

bool DefinedInLoop(const CodeLocation& location, const SuiteModel& suite) {
  const StubbingSite* site = suite.FindStubbingSite(location);
  if (!site) {
    throw AnalysisError("no stubbing definition at " + location.ToString());
  }
  return site->in_loop;
}

bool IsExcluded(const GroupedStubbing& group, const SuiteModel& suite) {
  if (DefinedInLoop(group.location, suite)) return true;
  for (const auto* occurrences : {&group.unnecessary, &group.used}) {
    for (const Occurrence& occurrence : *occurrences) {
      const auto& stack = occurrence.event.stack;
      for (size_t i = 1; i < stack.size(); ++i) {
        if (CallInLoop(stack[i], stack[i - 1], suite)) return true;
      }
      const ClassInfo* test_class = suite.FindClass(occurrence.test.test_class);
      if (test_class && suite.IsParameterizedClass(*test_class)) return true;
      if (!stack.empty()) {
        const MethodInfo& entry = ResolveOrThrow(stack.back(), suite);
        if (suite.IsParameterizedClass(*entry.owner)) return true;
      }
    }
  }
  return false;
}

Classification ClassifyAll(const ExecutionTrace& trace,
                           const SuiteModel& suite) {
  Classification result;
  for (GroupedStubbing& group : GroupStubbings(trace)) {
    if (group.unnecessary.empty()) continue;
    ClassifiedStubbing entry;
    if (group.used_tests.empty()) {
      entry.kind = StubbingKind::kTotallyUnnecessary;
    } else if (ThroughSetup(group, suite)) {
      entry.kind = StubbingKind::kUsedUnnecessarySetup;
    } else {
      entry.kind = StubbingKind::kUsedUnnecessaryHelper;
    }
    bool excluded = IsExcluded(group, suite);
    entry.group = std::move(group);
    (excluded ? result.excluded : result.classified).push_back(std::move(entry));
  }
  return result;
}

std::vector<ClassifiedStubbing> Classify(const ExecutionTrace& trace,
                                         const SuiteModel& suite) {
  return ClassifyAll(trace, suite).classified;
}

std::string FormatClassificationDump(
    const std::vector<ClassifiedStubbing>& entries) {
  std::string out;
  for (const auto& entry : entries) {
    out += std::string(ToString(entry.kind)) + "\t" +
           entry.group.location.ToString() + "\t" +
           std::to_string(entry.group.unnecessary_tests.size()) + "\t" +
           std::to_string(entry.group.used_tests.size()) + "\n";
  }
  return out;
}

std::vector<TestKey> TestsMissingFromTrace(const ExecutionTrace& trace,
                                           const SuiteModel& suite) {
  std::set<TestKey> present;
  std::set<std::pair<std::string, std::string>> parameterized_present;
  for (const auto& record : trace.records) {
    present.insert(TestKey{record.test_class, record.test_name});
    size_t bracket = record.test_name.find('[');
    if (bracket != std::string::npos) {
      parameterized_present.emplace(record.test_class,
                                    record.test_name.substr(0, bracket));
    }
  }
  std::vector<TestKey> missing;
  for (const ClassInfo* cls : suite.TestClasses()) {
    for (const MethodInfo* test : suite.MethodsWithRole(*cls, MethodRole::kTest)) {
      TestKey key{cls->qualified_name, test->decl->name};
      if (!present.contains(key)) missing.push_back(key);
    }
    for (const MethodInfo* test :
         suite.MethodsWithRole(*cls, MethodRole::kParameterizedTest)) {
      if (!parameterized_present.contains(
              {cls->qualified_name, test->decl->name})) {
        missing.push_back(TestKey{cls->qualified_name, test->decl->name});
      }
    }
  }
  return missing;
}

}  // namespace stubscrub
