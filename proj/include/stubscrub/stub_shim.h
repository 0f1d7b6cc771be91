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

// Recording stubbing harness. Test doubles created here answer stubbed
// calls with the last value defined for the method and log every
// definition and stubbed invocation into the current test's record.

#ifndef STUBSCRUB_STUB_SHIM_H_
#define STUBSCRUB_STUB_SHIM_H_

#include <any>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stubscrub/trace_model.h"

namespace stubscrub {

inline constexpr char kTracePathEnv[] = "STUBSCRUB_TRACE_PATH";

class LifecycleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class TestDouble {
 public:
  const std::string& double_class() const { return double_class_; }
  // Current stubbing for `method_name`, if any.
  std::optional<StubbingId> StubbingFor(const std::string& method_name) const;

 private:
  friend class StubShim;
  struct Entry {
    StubbingId id;
    CodeLocation location;
    std::any value;
  };

  TestDouble(std::string double_class, std::uint64_t session)
      : double_class_(std::move(double_class)), session_(session) {}

  std::string double_class_;
  std::uint64_t session_;
  std::map<std::string, Entry> table_;
};

using DoubleHandle = std::shared_ptr<TestDouble>;

class StubShim {
 public:
  // With an empty path, records are only returned from EndTest.
  explicit StubShim(std::filesystem::path trace_path = {});
  // Reads the trace path from STUBSCRUB_TRACE_PATH; unset means no file.
  static StubShim FromEnvironment();

  void BeginTest(std::string test_class, std::string test_name);
  // Computes the unnecessary stubbings, appends the record to the trace
  // file and closes the session.
  TestExecutionRecord EndTest();
  bool in_test() const { return open_; }

  DoubleHandle CreateDouble(std::string type_name);

  // `stack` is innermost first; its first frame must sit on `caller`.
  StubbingId DefineStubbing(TestDouble& double_object,
                            const std::string& method_name,
                            std::any return_value, const CodeLocation& caller,
                            std::vector<StackFrame> stack);

  // Returns the stubbed value, or an empty std::any for unstubbed methods.
  std::any Dispatch(TestDouble& double_object, const std::string& method_name,
                    const CodeLocation& call_site);

  std::int64_t last_serial() const { return serial_; }

 private:
  void RequireOpen(const char* operation) const;
  void RequireOwned(const TestDouble& double_object) const;

  std::filesystem::path trace_path_;
  bool open_ = false;
  std::uint64_t session_ = 0;
  std::int64_t serial_ = 0;
  TestExecutionRecord record_;
};

}  // namespace stubscrub

#endif  // STUBSCRUB_STUB_SHIM_H_
