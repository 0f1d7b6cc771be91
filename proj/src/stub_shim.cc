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

#include "stubscrub/stub_shim.h"

#include <cstdlib>
#include <fstream>

namespace stubscrub {

std::optional<StubbingId> TestDouble::StubbingFor(
    const std::string& method_name) const {
  auto it = table_.find(method_name);
  if (it == table_.end()) return std::nullopt;
  return it->second.id;
}

StubShim::StubShim(std::filesystem::path trace_path)
    : trace_path_(std::move(trace_path)) {}

StubShim StubShim::FromEnvironment() {
  const char* path = std::getenv(kTracePathEnv);
  return StubShim(path ? std::filesystem::path(path) : std::filesystem::path());
}

void StubShim::BeginTest(std::string test_class, std::string test_name) {
  if (open_) {
    throw LifecycleError("begin_test while " + record_.test_class + "." +
                         record_.test_name + " is still open");
  }
  open_ = true;
  ++session_;
  record_ = TestExecutionRecord{};
  record_.test_class = std::move(test_class);
  record_.test_name = std::move(test_name);
}

TestExecutionRecord StubShim::EndTest() {
  if (!open_) throw LifecycleError("end_test without begin_test");
  record_.unnecessary =
      ComputeUnnecessary(record_.definitions, record_.invocations);
  if (!trace_path_.empty()) {
    std::ofstream out(trace_path_, std::ios::app | std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot append to " + trace_path_.string());
    }
    out << SerializeRecord(record_);
  }
  open_ = false;
  return std::move(record_);
}

void StubShim::RequireOpen(const char* operation) const {
  if (!open_) {
    throw LifecycleError(std::string(operation) + " outside of a test");
  }
}

void StubShim::RequireOwned(const TestDouble& double_object) const {
  if (double_object.session_ != session_) {
    throw LifecycleError("test double of " + double_object.double_class_ +
                         " belongs to an earlier test");
  }
}

DoubleHandle StubShim::CreateDouble(std::string type_name) {
  RequireOpen("create_double");
  return DoubleHandle(new TestDouble(std::move(type_name), session_));
}

StubbingId StubShim::DefineStubbing(TestDouble& double_object,
                                    const std::string& method_name,
                                    std::any return_value,
                                    const CodeLocation& caller,
                                    std::vector<StackFrame> stack) {
  RequireOpen("define_stubbing");
  RequireOwned(double_object);
  if (stack.empty() || stack.front().file_path != caller.file_path ||
      stack.front().line != caller.line) {
    throw std::invalid_argument("stack does not start at the stubbing site " +
                                caller.ToString());
  }
  StubbingId id{double_object.double_class_, method_name, ++serial_};
  record_.definitions.push_back(StubbingDefinitionEvent{
      id, double_object.double_class_, method_name, caller, std::move(stack)});
  double_object.table_[method_name] =
      TestDouble::Entry{id, caller, std::move(return_value)};
  return id;
}

std::any StubShim::Dispatch(TestDouble& double_object,
                            const std::string& method_name,
                            const CodeLocation& call_site) {
  RequireOpen("dispatch");
  RequireOwned(double_object);
  auto it = double_object.table_.find(method_name);
  if (it == double_object.table_.end()) return {};
  const TestDouble::Entry& entry = it->second;
  record_.invocations.push_back(StubbingInvocationEvent{
      entry.id, double_object.double_class_, method_name, call_site,
      entry.location});
  return entry.value;
}

}  // namespace stubscrub
