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

// Test runner for suites written in the supported Java subset. Every test
// executes in its own shim session with a fresh test-class instance:
// field initializers, setup methods base class first, the test, then
// teardown methods.

#ifndef STUBSCRUB_RUNNER_H_
#define STUBSCRUB_RUNNER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stubscrub/stub_shim.h"
#include "stubscrub/suite_model.h"

namespace stubscrub {

enum class TestStatus { kPassed, kFailed, kSkipped };

struct TestOutcome {
  std::string test_class;
  std::string test_name;
  TestStatus status = TestStatus::kPassed;
  std::string message;

  bool operator==(const TestOutcome&) const = default;
};

struct SuiteRunResult {
  std::vector<TestOutcome> outcomes;

  bool AllPassed() const;
  int Count(TestStatus status) const;
  bool operator==(const SuiteRunResult&) const = default;
};

struct RunOptions {
  // Statements executed per test before it is failed as non-terminating.
  std::int64_t step_limit = 5'000'000;
  int max_call_depth = 400;
};

// Runs every test of every test class, classes ordered by qualified name
// and tests in declaration order. Parameterized tests run once per
// @ValueSource entry and are named `method[i]`, i starting at 1.
SuiteRunResult RunSuite(const SuiteModel& model, StubShim& shim,
                        const RunOptions& options = {});

std::string_view ToString(TestStatus status);
std::string RunResultToJson(const SuiteRunResult& result);
// Throws std::runtime_error on malformed input.
SuiteRunResult RunResultFromJson(std::string_view text);

}  // namespace stubscrub

#endif  // STUBSCRUB_RUNNER_H_
