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

#ifndef STUBSCRUB_REFACTORER_H_
#define STUBSCRUB_REFACTORER_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stubscrub/classifier.h"
#include "stubscrub/suite_model.h"

namespace stubscrub {

struct ResolveOptions {
  // Leave UUS definitions alone (they are reported as skipped).
  bool keep_setup_stubbings = false;
};

// One planned source change, for the report. `kind` is one of
// remove-statement, remove-method, add-method, rewrite-callsite, add-class,
// move-test, copy-member.
struct SourceEdit {
  std::string kind;
  std::string file;
  int line = 0;       // line in the original file, 0 when not applicable
  std::string scope;  // enclosing method or class
  std::string from;
  std::string to;

  auto operator<=>(const SourceEdit&) const = default;
  bool operator==(const SourceEdit&) const = default;
};

// kDetected marks entries of a detect-only run, where nothing is edited.
enum class ResolutionStatus { kResolved, kSkipped, kError, kDetected };
std::string_view ToString(ResolutionStatus status);

struct ResolutionEntry {
  CodeLocation location;
  StubbingKind kind = StubbingKind::kTotallyUnnecessary;
  std::string strategy;  // code-removal, method-duplication, class-duplication
  ResolutionStatus status = ResolutionStatus::kResolved;
  std::string reason;  // why it was skipped or failed
  std::vector<SourceEdit> edits;
  std::vector<TestKey> affected_tests;
};

struct MovedTest {
  TestKey from;
  std::string to_class;  // qualified name of the new class
};

struct ResolveResult {
  // Full text of every file after resolution, keyed by suite-relative path.
  std::map<std::string, std::string> files;
  std::set<std::string> modified_files;
  std::set<std::string> added_files;
  // One entry per classified or excluded definition, sorted by location.
  std::vector<ResolutionEntry> entries;
  std::vector<std::string> new_classes;
  std::vector<MovedTest> moved_tests;
  // Test classes that no longer declare any test.
  std::vector<std::string> test_less_classes;

  size_t EditCount() const;
};

// Removes every resolvable unnecessary stubbing. TU definitions are deleted;
// UUH and UUS definitions are removed from duplicated methods that the
// affected call paths are redirected to, and tests whose setup must differ
// move to new classes. Definitions in `excluded` are reported as skipped.
ResolveResult Resolve(const SuiteModel& suite,
                      const std::vector<ClassifiedStubbing>& classified,
                      const std::vector<ClassifiedStubbing>& excluded,
                      const ResolveOptions& options = {});

// Statement deletion used by code removal: drops the statement at the site
// plus locals that only the removed statements referenced, provided their
// initializers have no side effects.
std::string RemoveStatements(const SuiteModel& suite,
                             const java::CompilationUnit& unit,
                             const java::MethodDecl& method,
                             const std::vector<const java::Stmt*>& statements);

// True for initializers whose evaluation has no observable effect besides
// allocation: literals, names, class literals, mock(...) and `new` of
// library types with such arguments.
bool IsSideEffectFree(const java::Expr& expr, const SuiteModel& suite);

// Maps a test through the moves made by a resolution.
TestKey MapMovedTest(const TestKey& test, const ResolveResult& result);

}  // namespace stubscrub

#endif  // STUBSCRUB_REFACTORER_H_
