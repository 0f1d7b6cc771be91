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

#ifndef STUBSCRUB_SUITE_MODEL_H_
#define STUBSCRUB_SUITE_MODEL_H_

#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stubscrub/java/ast.h"
#include "stubscrub/trace_model.h"

namespace stubscrub {

// How lifecycle methods are recognized. Annotation names are
// matched without their package; the *_method_names sets add JUnit3-style
// naming matchers on top.
struct LifecycleConventions {
  std::set<std::string> test_annotations = {"Test"};
  std::set<std::string> parameterized_test_annotations = {"ParameterizedTest"};
  std::set<std::string> setup_annotations = {"Before", "BeforeEach"};
  std::set<std::string> teardown_annotations = {"After", "AfterEach"};
  std::set<std::string> setup_method_names;
  std::set<std::string> teardown_method_names;
  // Field annotations that make the runner install a fresh test double.
  std::set<std::string> double_field_annotations = {"Mock"};
};

enum class MethodRole { kOther, kTest, kParameterizedTest, kSetup, kTeardown };

struct ClassInfo {
  const java::CompilationUnit* unit = nullptr;
  const java::TypeDecl* decl = nullptr;
  std::string qualified_name;
};

struct MethodInfo {
  const ClassInfo* owner = nullptr;
  const java::MethodDecl* decl = nullptr;
  MethodRole role = MethodRole::kOther;

  // Trace-facing method name; constructors use "<init>".
  std::string FrameName() const;
};

// One `when(...).thenReturn(...)` expression in the source.
struct StubbingSite {
  CodeLocation location;
  const MethodInfo* method = nullptr;
  const java::MethodCallExpr* then_return = nullptr;
  const java::MethodCallExpr* when_call = nullptr;
  // Innermost statement containing the expression, and its parent.
  const java::Stmt* statement = nullptr;
  const java::Stmt* parent = nullptr;
  // The statement is `when(...).thenReturn(...);` and nothing else.
  bool standalone = false;
  bool in_loop = false;
};

// A method call or constructor call inside a method body.
struct CallSite {
  const java::MethodCallExpr* call = nullptr;  // exactly one of call/creation
  const java::NewExpr* creation = nullptr;
  int line = 0;
  bool in_loop = false;
};

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parsed view of a whole suite: every .java file under the root, indexed by
// class, method role, stubbing site and call site.
class SuiteModel {
 public:
  static SuiteModel Load(const std::filesystem::path& root,
                         LifecycleConventions conventions = {});
  // `files` maps suite-relative paths to source text.
  static SuiteModel FromSources(
      const std::map<std::string, std::string>& files,
      LifecycleConventions conventions = {});

  SuiteModel(SuiteModel&&) noexcept;
  SuiteModel& operator=(SuiteModel&&) noexcept;
  ~SuiteModel();

  const std::vector<std::unique_ptr<java::CompilationUnit>>& units() const {
    return units_;
  }
  const LifecycleConventions& conventions() const { return conventions_; }

  const java::CompilationUnit* FindUnit(std::string_view path) const;
  // Accepts qualified or simple names; simple names must be unambiguous.
  const ClassInfo* FindClass(std::string_view name) const;
  const ClassInfo* ClassOf(const java::TypeDecl& decl) const;
  const MethodInfo* InfoFor(const java::MethodDecl& decl) const;
  const std::vector<std::unique_ptr<ClassInfo>>& classes() const {
    return classes_;
  }

  // Non-abstract classes with at least one test method, sorted by
  // qualified name.
  std::vector<const ClassInfo*> TestClasses() const;
  // Files under a src/test tree or declaring a test class.
  bool IsTestFile(const java::CompilationUnit& unit) const;
  // True when the class declares at least one parameterized test.
  bool IsParameterizedClass(const ClassInfo& cls) const;

  std::vector<const MethodInfo*> MethodsWithRole(const ClassInfo& cls,
                                                 MethodRole role) const;

  // Method whose declaration spans the frame's line in the frame's file and
  // class; null if nothing matches.
  const MethodInfo* ResolveFrame(const StackFrame& frame) const;

  const StubbingSite* FindStubbingSite(const CodeLocation& location) const;
  const StubbingSite* SiteForThenReturn(const java::MethodCallExpr& call) const;
  const std::vector<std::unique_ptr<StubbingSite>>& stubbing_sites() const {
    return sites_;
  }

  std::vector<const CallSite*> CallSitesAt(const java::MethodDecl& method,
                                           int line) const;
  const std::vector<CallSite>& CallSitesIn(
      const java::MethodDecl& method) const;

 private:
  SuiteModel() = default;
  void Index();

  LifecycleConventions conventions_;
  std::vector<std::unique_ptr<java::CompilationUnit>> units_;
  std::vector<std::unique_ptr<ClassInfo>> classes_;
  std::vector<std::unique_ptr<MethodInfo>> methods_;
  std::vector<std::unique_ptr<StubbingSite>> sites_;
  std::map<std::string, const ClassInfo*, std::less<>> by_qualified_name_;
  std::map<std::string, std::vector<const ClassInfo*>, std::less<>>
      by_simple_name_;
  std::map<const java::TypeDecl*, const ClassInfo*> by_decl_;
  std::map<const java::MethodDecl*, const MethodInfo*> method_info_;
  std::map<CodeLocation, const StubbingSite*> site_by_location_;
  std::map<const java::MethodCallExpr*, const StubbingSite*> site_by_call_;
  std::map<const java::MethodDecl*, std::vector<CallSite>> call_sites_;
};

// True for `when(x.m(...))`, optionally qualified as `Mockito.when`.
bool IsWhenCall(const java::MethodCallExpr& call);
// True for `<when-call>.thenReturn(v)`.
bool IsStubbingDefinition(const java::MethodCallExpr& call);
bool IsLoop(const java::Stmt& stmt);

}  // namespace stubscrub

#endif  // STUBSCRUB_SUITE_MODEL_H_
