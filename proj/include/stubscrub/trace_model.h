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

#ifndef STUBSCRUB_TRACE_MODEL_H_
#define STUBSCRUB_TRACE_MODEL_H_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stubscrub {

// Source position of a stubbing definition or call site. `occurrence_index`
// separates several stubbing definitions that start on the same line, in
// textual order.
struct CodeLocation {
  std::string file_path;
  int line = 1;
  int occurrence_index = 0;

  auto operator<=>(const CodeLocation&) const = default;
  bool operator==(const CodeLocation&) const = default;

  // "file:line:occ", always with the occurrence suffix.
  std::string ToString() const;
};

struct StackFrame {
  std::string file_path;
  std::string declaring_class;
  std::string method_name;
  int line = 1;

  auto operator<=>(const StackFrame&) const = default;
  bool operator==(const StackFrame&) const = default;
};

// Rendered as `double_class#method_name#serial`.
struct StubbingId {
  std::string double_class;
  std::string method_name;
  std::int64_t serial = 0;

  auto operator<=>(const StubbingId&) const = default;
  bool operator==(const StubbingId&) const = default;

  std::string ToString() const;
  static StubbingId Parse(std::string_view text);
};

struct StubbingDefinitionEvent {
  StubbingId stubbing_id;
  std::string stubbed_class;
  std::string stubbed_method;
  CodeLocation location;
  // Innermost first; the last frame is the test, setup or teardown method
  // that the runner entered.
  std::vector<StackFrame> stack;

  bool operator==(const StubbingDefinitionEvent&) const = default;
};

struct StubbingInvocationEvent {
  StubbingId stubbing_id;
  std::string invoked_class;
  std::string invoked_method;
  CodeLocation call_site;
  CodeLocation definition_location;

  bool operator==(const StubbingInvocationEvent&) const = default;
};

struct TestExecutionRecord {
  std::string test_class;
  std::string test_name;
  std::vector<StubbingDefinitionEvent> definitions;
  std::vector<StubbingInvocationEvent> invocations;
  std::vector<StubbingDefinitionEvent> unnecessary;

  bool operator==(const TestExecutionRecord&) const = default;
};

struct ExecutionTrace {
  std::vector<TestExecutionRecord> records;

  bool operator==(const ExecutionTrace&) const = default;
};

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class TraceConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Definitions whose stubbing id appears in no invocation, in definition
// order. Throws TraceConsistencyError for an invocation of an unknown id.
std::vector<StubbingDefinitionEvent> ComputeUnnecessary(
    const std::vector<StubbingDefinitionEvent>& definitions,
    const std::vector<StubbingInvocationEvent>& invocations);

// Parses the line-oriented execution-info format. Leading/trailing blanks
// on each line, blank lines and CRLF endings are tolerated; everything else
// must match exactly. Throws TraceParseError naming the offending line.
ExecutionTrace ParseTrace(std::string_view text);

// Emits the canonical execution-info text. Serializing records one at a
// time and concatenating the pieces yields the same bytes as serializing
// the whole trace.
std::string SerializeTrace(const ExecutionTrace& trace);
std::string SerializeRecord(const TestExecutionRecord& record);

// `Class.method(file:line[:occ])`, the occurrence suffix omitted when 0.
std::string FormatStubbingLocation(std::string_view declaring_class,
                                   std::string_view method_name,
                                   const CodeLocation& location);

}  // namespace stubscrub

#endif  // STUBSCRUB_TRACE_MODEL_H_
