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

#include <gtest/gtest.h>

#include "stubscrub/java/lexer.h"
#include "stubscrub/java/parser.h"

namespace stubscrub::java {
namespace {

TEST(LexerTest, TokensCommentsAndLines) {
  LexedSource lexed =
      Lex("int a = 1; // one\n/* two\n lines */ s = \"x\\\"y\";\n");
  std::vector<std::string> texts;
  for (const Token& token : lexed.tokens) texts.push_back(token.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"int", "a", "=", "1", ";", "s", "=",
                                             "\"x\\\"y\"", ";", ""}));
  EXPECT_EQ(lexed.tokens[3].kind, TokenKind::kInt);
  EXPECT_EQ(lexed.tokens[5].line, 3);
  EXPECT_EQ(lexed.tokens.back().kind, TokenKind::kEnd);
  ASSERT_EQ(lexed.comments.size(), 2u);
  EXPECT_EQ(lexed.comments[1].line, 2);
  EXPECT_EQ(lexed.comments[1].end_line, 3);
}

// Closing angle brackets stay single tokens so nested generics need no
// splitting in the parser.
TEST(LexerTest, MultiCharOperatorsAndNumbers) {
  LexedSource lexed = Lex("a >= b && c != 2.5f || d++ <= 1L");
  std::vector<std::string> texts;
  for (const Token& token : lexed.tokens) texts.push_back(token.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"a", ">=", "b", "&&", "c", "!=",
                                             "2.5f", "||", "d", "++", "<=",
                                             "1L", ""}));
  EXPECT_EQ(lexed.tokens[6].kind, TokenKind::kFloat);
  EXPECT_EQ(Lex("List<List<T>>").tokens.size(), 8u);
}

TEST(LexerTest, RejectsUnterminatedInput) {
  EXPECT_THROW(Lex("s = \"open"), SyntaxError);
  EXPECT_THROW(Lex("/* open"), SyntaxError);
}

TEST(LexerTest, UnquotesLiterals) {
  EXPECT_EQ(UnquoteLiteral("\"a\\tb\\n\\\\\""), "a\tb\n\\");
  EXPECT_EQ(UnquoteLiteral("'\\''"), "'");
}

constexpr char kSample[] = R"(package com.example;

import static org.mockito.Mockito.when;
import org.junit.Test;

@SuppressWarnings("unused")
public class SampleTest extends Base implements Runnable {
    private static final int LIMIT = 3;
    @Mock private Service service;

    public SampleTest() {
        service = null;
    }

    @Test(expected = IllegalStateException.class)
    public void runs() throws Exception {
        int total = 0;
        for (int i = 0; i < LIMIT; i++) {
            total += i;
        }
        when(service.size()).thenReturn(total);
        String s = total > 2 ? "big" : "small";
    }

    abstract int size();
}
)";

TEST(ParserTest, ParsesClassStructure) {
  auto unit = ParseCompilationUnit(kSample, "src/test/java/com/example/SampleTest.java");
  EXPECT_EQ(unit->package, "com.example");
  ASSERT_EQ(unit->imports.size(), 2u);
  EXPECT_TRUE(unit->imports[0].is_static);
  EXPECT_EQ(unit->imports[0].name, "org.mockito.Mockito.when");
  ASSERT_EQ(unit->types.size(), 1u);
  const TypeDecl& type = *unit->types[0];
  EXPECT_EQ(type.name, "SampleTest");
  EXPECT_EQ(type.extends, "Base");
  EXPECT_EQ(type.implements, (std::vector<std::string>{"Runnable"}));
  EXPECT_TRUE(type.HasAnnotation("SuppressWarnings"));
  ASSERT_EQ(type.members.size(), 5u);
  EXPECT_EQ(type.members[0]->kind, MemberKind::kField);
  EXPECT_TRUE(type.members[1]->HasAnnotation("Mock"));
  EXPECT_EQ(type.members[2]->kind, MemberKind::kConstructor);

  const auto& method = static_cast<const MethodDecl&>(*type.members[3]);
  EXPECT_EQ(method.name, "runs");
  EXPECT_TRUE(method.HasModifier("public"));
  const Annotation* test = method.FindAnnotation("Test");
  ASSERT_NE(test, nullptr);
  EXPECT_NE(test->Arg("expected"), nullptr);
  ASSERT_NE(method.body, nullptr);
  EXPECT_EQ(method.body->range.line, 16);
  EXPECT_EQ(type.FindMethod("runs", 0), &method);
  EXPECT_EQ(type.FindMethod("runs", 1), nullptr);

  const auto& abstract_method = static_cast<const MethodDecl&>(*type.members[4]);
  EXPECT_EQ(abstract_method.body, nullptr);
}

TEST(ParserTest, MemberRangesCoverAnnotationsAndBody) {
  auto unit = ParseCompilationUnit(kSample, "SampleTest.java");
  const auto& method = *unit->types[0]->members[3];
  std::string text = unit->source.substr(method.range.begin,
                                         method.range.end - method.range.begin);
  EXPECT_EQ(text.rfind("@Test(expected", 0), 0u);
  EXPECT_EQ(text.back(), '}');
}

TEST(ParserTest, WalksNestedStatements) {
  auto unit = ParseCompilationUnit(kSample, "SampleTest.java");
  const auto& method = static_cast<const MethodDecl&>(*unit->types[0]->members[3]);
  std::vector<NodeKind> kinds;
  int deepest = 0;
  WalkStatements(*method.body, [&](const Stmt& stmt,
                                   const std::vector<const Stmt*>& parents) {
    kinds.push_back(stmt.kind);
    deepest = std::max(deepest, static_cast<int>(parents.size()));
  });
  EXPECT_EQ(kinds.front(), NodeKind::kBlock);
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), NodeKind::kFor), kinds.end());
  EXPECT_EQ(deepest, 3);  // block > for > block > statement

  int calls = 0;
  WalkExpressions(*method.body, [&](const Expr& expr) {
    if (expr.kind == NodeKind::kMethodCall) ++calls;
  });
  EXPECT_EQ(calls, 3);  // when, service.size, thenReturn
  EXPECT_EQ(ChildStatements(*method.body).size(), 4u);
}

TEST(ParserTest, RejectsUnsupportedSyntax) {
  EXPECT_THROW(ParseCompilationUnit("class A { void f() { x -> x; } }", "A.java"),
               SyntaxError);
  EXPECT_THROW(ParseCompilationUnit("class A { void f() { int x = ; } }", "A.java"),
               SyntaxError);
  try {
    ParseCompilationUnit("class A {\n void f() {\n  return\n }\n}", "A.java");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.file(), "A.java");
    EXPECT_EQ(e.line(), 4);
  }
}

}  // namespace
}  // namespace stubscrub::java
