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

#include "stubscrub/metrics.h"

#include <gtest/gtest.h>

#include "cognitive_snippets.h"
#include "generators.h"
#include "stubscrub/java/parser.h"

namespace stubscrub {
namespace {

using testing::CognitiveSnippet;
using testing::CognitiveSnippets;
using testing::ScoreMethod;

TEST(CognitiveComplexityTest, HandComputedSnippets) {
  ASSERT_GE(CognitiveSnippets().size(), 10u);
  for (const CognitiveSnippet& snippet : CognitiveSnippets()) {
    EXPECT_EQ(ScoreMethod(snippet.code), snippet.expected) << snippet.name;
  }
}

TEST(CognitiveComplexityTest, UnitSumsItsMethods) {
  auto unit = java::ParseCompilationUnit(
      "class A {\n"
      "    void f(boolean a) { if (a) { g(); } }\n"
      "    void h(int n) { for (int i = 0; i < n; i++) { if (a) { g(); } } }\n"
      "    int x = 3;\n"
      "}\n",
      "A.java");
  EXPECT_EQ(CognitiveComplexity(*unit), 1 + 3);
}

TEST(LinesOfCodeTest, CountsOnlyLinesWithTokens) {
  EXPECT_EQ(LinesOfCode(""), 0);
  EXPECT_EQ(LinesOfCode("class A {\n\n  // note\n  /* block\n   comment */\n  int x;\n}\n"), 3);
  EXPECT_EQ(LinesOfCode("class A { int x; /* trailing */ }"), 1);
  EXPECT_EQ(LinesOfCode("class A {\n  String s = \"a\";  // c\n  /* x */ int y;\n}"), 4);
  auto unit = java::ParseCompilationUnit("class A {\n\n  int x;\n}\n", "A.java");
  EXPECT_EQ(LinesOfCode(*unit), 3);
}

TEST(PercentDeltaTest, SignedPercentages) {
  EXPECT_EQ(PercentDelta(0, 5), std::nullopt);
  EXPECT_EQ(PercentDelta(0, 0), std::nullopt);
  EXPECT_DOUBLE_EQ(*PercentDelta(200, 150), -25.0);
  EXPECT_DOUBLE_EQ(*PercentDelta(40, 50), 25.0);
  EXPECT_DOUBLE_EQ(*PercentDelta(7, 7), 0.0);
}

TEST(MeasureTest, CountsTestFilesOnly) {
  SuiteModel model = SuiteModel::FromSources({
      {"src/main/java/p/A.java", "package p;\nclass A {\n  void f(boolean a) { if (a) { } }\n}\n"},
      {"src/test/java/p/ATest.java",
       "package p;\n\nclass ATest {\n  @Test\n  public void t() {\n    if (true) { }\n  }\n}\n"},
  });
  ComplexitySnapshot snapshot = MeasureTestFiles(model);
  EXPECT_EQ(snapshot.files, 1);
  EXPECT_EQ(snapshot.loc, 7);
  EXPECT_EQ(snapshot.cognitive, 1);
}

}  // namespace
}  // namespace stubscrub
