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

#ifndef STUBSCRUB_CLASSIFIER_H_
#define STUBSCRUB_CLASSIFIER_H_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "stubscrub/suite_model.h"
#include "stubscrub/trace_model.h"

namespace stubscrub {

struct TestKey {
  std::string test_class;
  std::string test_name;

  auto operator<=>(const TestKey&) const = default;
  bool operator==(const TestKey&) const = default;
  std::string ToString() const { return test_class + "." + test_name; }
};

// One dynamic execution of a stubbing definition.
struct Occurrence {
  TestKey test;
  StubbingDefinitionEvent event;

  bool operator==(const Occurrence&) const = default;
};

// All occurrences of the definition at one code location, split by whether
// the stubbing they created was invoked.
struct GroupedStubbing {
  CodeLocation location;
  std::vector<Occurrence> unnecessary;
  std::vector<TestKey> unnecessary_tests;  // first-appearance order
  std::vector<Occurrence> used;
  std::vector<TestKey> used_tests;

  bool operator==(const GroupedStubbing&) const = default;
};

enum class StubbingKind {
  kTotallyUnnecessary,    // TU
  kUsedUnnecessarySetup,  // UUS
  kUsedUnnecessaryHelper  // UUH
};

std::string_view ToString(StubbingKind kind);

struct ClassifiedStubbing {
  StubbingKind kind = StubbingKind::kTotallyUnnecessary;
  GroupedStubbing group;

  bool operator==(const ClassifiedStubbing&) const = default;
};

struct Classification {
  // Resolvable definitions sorted by location.
  std::vector<ClassifiedStubbing> classified;
  // Definitions inside loops or parameterized test classes, also labelled.
  std::vector<ClassifiedStubbing> excluded;
};

// Groups sorted by location.
std::vector<GroupedStubbing> GroupStubbings(const ExecutionTrace& trace);

// True if some occurrence ran through a setup method of its test class.
// Throws AnalysisError for a frame that does not resolve to a method.
bool ThroughSetup(const GroupedStubbing& group, const SuiteModel& suite);

// True if the definition statement sits in a loop. Throws AnalysisError
// when the location is not a stubbing definition in the suite.
bool DefinedInLoop(const CodeLocation& location, const SuiteModel& suite);

// DefinedInLoop, or some occurrence reached the definition through a call
// made inside a loop, or was entered from a parameterized test class.
bool IsExcluded(const GroupedStubbing& group, const SuiteModel& suite);

// Resolvable classified stubbings only.
std::vector<ClassifiedStubbing> Classify(const ExecutionTrace& trace,
                                         const SuiteModel& suite);
Classification ClassifyAll(const ExecutionTrace& trace,
                           const SuiteModel& suite);

// One `kind<TAB>file:line:occ<TAB>|tusd|<TAB>|tisd|` line per entry.
std::string FormatClassificationDump(
    const std::vector<ClassifiedStubbing>& entries);

// Tests declared in the suite that have no record in the trace.
std::vector<TestKey> TestsMissingFromTrace(const ExecutionTrace& trace,
                                           const SuiteModel& suite);

}  // namespace stubscrub

#endif  // STUBSCRUB_CLASSIFIER_H_
