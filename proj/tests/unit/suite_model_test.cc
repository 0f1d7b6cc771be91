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

#include "stubscrub/suite_model.h"

#include <gtest/gtest.h>

#include "stubscrub/java/parser.h"

namespace stubscrub {
namespace {

constexpr char kTestPath[] = "src/test/java/p/ShopTest.java";

const std::map<std::string, std::string> kSources = {
    {"src/main/java/p/Shop.java", R"(package p;

public class Shop {
    public int price() {
        return 1;
    }
}
)"},
    {kTestPath, R"(package p;

import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class ShopTest {
    private Shop shop;

    @Before
    public void init() {
        shop = mock(Shop.class);
        when(shop.price()).thenReturn(1); when(shop.price()).thenReturn(2);
    }

    @Test
    public void pricesItems() {
        stub();
        for (int i = 0; i < 2; i++) {
            stub();
            when(shop.price()).thenReturn(i);
        }
        Shop other = new Shop();
    }

    private void stub() {
        when(shop.price()).thenReturn(3);
    }

    public void testLegacyStyle() {
    }
}
)"},
    {"src/test/java/p/TableTest.java", R"(package p;

public class TableTest {
    @ParameterizedTest
    @ValueSource(ints = {1, 2})
    public void rows(int n) {
    }
}
)"},
};

const MethodInfo* Method(const SuiteModel& model, std::string_view cls,
                         std::string_view name) {
  const ClassInfo* info = model.FindClass(cls);
  if (!info) return nullptr;
  for (const auto& member : info->decl->members) {
    if (member->kind == java::MemberKind::kField) continue;
    const auto& decl = static_cast<const java::MethodDecl&>(*member);
    if (decl.name == name) return model.InfoFor(decl);
  }
  return nullptr;
}

TEST(SuiteModelTest, IndexesClassesAndRoles) {
  SuiteModel model = SuiteModel::FromSources(kSources);
  ASSERT_NE(model.FindClass("p.ShopTest"), nullptr);
  EXPECT_EQ(model.FindClass("ShopTest"), model.FindClass("p.ShopTest"));
  EXPECT_EQ(model.FindClass("Nope"), nullptr);
  EXPECT_EQ(Method(model, "ShopTest", "init")->role, MethodRole::kSetup);
  EXPECT_EQ(Method(model, "ShopTest", "pricesItems")->role, MethodRole::kTest);
  EXPECT_EQ(Method(model, "ShopTest", "stub")->role, MethodRole::kOther);
  EXPECT_EQ(Method(model, "ShopTest", "testLegacyStyle")->role, MethodRole::kOther);
  EXPECT_EQ(Method(model, "TableTest", "rows")->role,
            MethodRole::kParameterizedTest);

  std::vector<std::string> test_classes;
  for (const ClassInfo* cls : model.TestClasses()) {
    test_classes.push_back(cls->qualified_name);
  }
  EXPECT_EQ(test_classes, (std::vector<std::string>{"p.ShopTest", "p.TableTest"}));
  EXPECT_TRUE(model.IsParameterizedClass(*model.FindClass("TableTest")));
  EXPECT_FALSE(model.IsParameterizedClass(*model.FindClass("ShopTest")));
  EXPECT_TRUE(model.IsTestFile(*model.FindUnit(kTestPath)));
  EXPECT_FALSE(model.IsTestFile(*model.FindUnit("src/main/java/p/Shop.java")));
}

TEST(SuiteModelTest, NamingConventionsAddJUnit3Style) {
  LifecycleConventions conventions;
  conventions.setup_annotations.clear();
  SuiteModel without = SuiteModel::FromSources(kSources, conventions);
  EXPECT_EQ(Method(without, "ShopTest", "init")->role, MethodRole::kOther);
  conventions.setup_method_names = {"init"};
  SuiteModel with = SuiteModel::FromSources(kSources, conventions);
  EXPECT_EQ(Method(with, "ShopTest", "init")->role, MethodRole::kSetup);
}

TEST(SuiteModelTest, StubbingSitesCarryOccurrenceIndexAndLoops) {
  SuiteModel model = SuiteModel::FromSources(kSources);
  const StubbingSite* first = model.FindStubbingSite({kTestPath, 15, 0});
  const StubbingSite* second = model.FindStubbingSite({kTestPath, 15, 1});
  ASSERT_NE(first, nullptr);
  ASSERT_NE(second, nullptr);
  EXPECT_NE(first, second);
  EXPECT_TRUE(first->standalone);
  EXPECT_EQ(first->method, Method(model, "ShopTest", "init"));
  EXPECT_EQ(model.FindStubbingSite({kTestPath, 15, 2}), nullptr);
  EXPECT_EQ(model.FindStubbingSite({kTestPath, 14, 0}), nullptr);

  const StubbingSite* in_loop = model.FindStubbingSite({kTestPath, 23, 0});
  ASSERT_NE(in_loop, nullptr);
  EXPECT_TRUE(in_loop->in_loop);
  EXPECT_FALSE(model.FindStubbingSite({kTestPath, 29, 0})->in_loop);
  EXPECT_EQ(model.stubbing_sites().size(), 4u);
}

TEST(SuiteModelTest, CallSitesAndFrames) {
  SuiteModel model = SuiteModel::FromSources(kSources);
  const MethodInfo* test = Method(model, "ShopTest", "pricesItems");
  auto outside = model.CallSitesAt(*test->decl, 20);
  ASSERT_EQ(outside.size(), 1u);
  EXPECT_EQ(outside[0]->call->name, "stub");
  EXPECT_FALSE(outside[0]->in_loop);
  auto inside = model.CallSitesAt(*test->decl, 22);
  ASSERT_EQ(inside.size(), 1u);
  EXPECT_TRUE(inside[0]->in_loop);
  auto creation = model.CallSitesAt(*test->decl, 25);
  ASSERT_EQ(creation.size(), 1u);
  EXPECT_NE(creation[0]->creation, nullptr);

  StackFrame frame{kTestPath, "p.ShopTest", "stub", 29};
  EXPECT_EQ(model.ResolveFrame(frame), Method(model, "ShopTest", "stub"));
  frame.line = 200;
  EXPECT_EQ(model.ResolveFrame(frame), nullptr);
  frame = StackFrame{kTestPath, "p.ShopTest", "pricesItems", 29};
  EXPECT_EQ(model.ResolveFrame(frame), nullptr);
}

TEST(SuiteModelTest, ReportsUnparseableFiles) {
  auto broken = kSources;
  broken["src/test/java/p/Bad.java"] = "class Bad { void f( }";
  EXPECT_THROW(SuiteModel::FromSources(broken), std::exception);
}

TEST(SuiteModelTest, RecognizesStubbingShapes) {
  auto unit = java::ParseCompilationUnit(
      "class A { void f() { Mockito.when(x.m()).thenReturn(1); "
      "when(x.m()).thenThrow(e); } }",
      "A.java");
  const auto& method =
      static_cast<const java::MethodDecl&>(*unit->types[0]->members[0]);
  std::vector<bool> definitions;
  java::WalkExpressions(*method.body, [&](const java::Expr& expr) {
    if (expr.kind != java::NodeKind::kMethodCall) return;
    const auto& call = static_cast<const java::MethodCallExpr&>(expr);
    if (call.name == "thenReturn" || call.name == "thenThrow") {
      definitions.push_back(IsStubbingDefinition(call));
    }
  });
  EXPECT_EQ(definitions, (std::vector<bool>{true, false}));
}

}  // namespace
}  // namespace stubscrub
