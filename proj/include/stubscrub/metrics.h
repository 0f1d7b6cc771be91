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

#ifndef STUBSCRUB_METRICS_H_
#define STUBSCRUB_METRICS_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "stubscrub/java/ast.h"
#include "stubscrub/suite_model.h"

namespace stubscrub {

// Cognitive complexity with the SonarSource increments: +1 plus nesting for
// if, ternary, switch, loops and catch; +1 for else and else-if; +1 for each
// run of like boolean operators; +1 for labeled jumps and for a method that
// calls itself.
int CognitiveComplexity(const java::MethodDecl& method);
int CognitiveComplexity(const java::CompilationUnit& unit);

// Number of lines holding at least one token. Blank and comment-only lines
// do not count.
int LinesOfCode(const java::CompilationUnit& unit);
int LinesOfCode(std::string_view source);

struct ComplexitySnapshot {
  int64_t loc = 0;
  int64_t cognitive = 0;
  int files = 0;

  bool operator==(const ComplexitySnapshot&) const = default;
};

// Totals over the suite's test files.
ComplexitySnapshot MeasureTestFiles(const SuiteModel& suite);

// (after - before) / before * 100; empty when `before` is zero.
std::optional<double> PercentDelta(int64_t before, int64_t after);

}  // namespace stubscrub

#endif  // STUBSCRUB_METRICS_H_
