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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stubscrub/java/parser.h"

namespace stubscrub {

namespace fs = std::filesystem;
using java::NodeKind;

bool IsWhenCall(const java::MethodCallExpr& call) {
  if (call.name != "when" || call.args.size() != 1) return false;
  if (call.receiver) {
    if (call.receiver->kind != NodeKind::kName) return false;
    if (static_cast<const java::NameExpr&>(*call.receiver).name != "Mockito") {
      return false;
    }
  }
  return call.args[0]->kind == NodeKind::kMethodCall;
}

bool IsStubbingDefinition(const java::MethodCallExpr& call) {
  return call.name == "thenReturn" && call.args.size() == 1 && call.receiver &&
         call.receiver->kind == NodeKind::kMethodCall &&
         IsWhenCall(static_cast<const java::MethodCallExpr&>(*call.receiver));
}

bool IsLoop(const java::Stmt& stmt) {
  return stmt.kind == NodeKind::kFor || stmt.kind == NodeKind::kForEach ||
         stmt.kind == NodeKind::kWhile || stmt.kind == NodeKind::kDoWhile;
}

std::string MethodInfo::FrameName() const {
  return decl->kind == java::MemberKind::kConstructor ? "<init>" : decl->name;
}

SuiteModel::SuiteModel(SuiteModel&&) noexcept = default;
SuiteModel& SuiteModel::operator=(SuiteModel&&) noexcept = default;
SuiteModel::~SuiteModel() = default;

SuiteModel SuiteModel::Load(const fs::path& root,
                            LifecycleConventions conventions) {
  if (!fs::is_directory(root)) {
    throw AnalysisError("suite root is not a directory: " + root.string());
  }
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".java") {
      continue;
    }
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    files[fs::relative(entry.path(), root).generic_string()] = buffer.str();
  }
  return FromSources(files, std::move(conventions));
}

SuiteModel SuiteModel::FromSources(
    const std::map<std::string, std::string>& files,
    LifecycleConventions conventions) {
  SuiteModel model;
  model.conventions_ = std::move(conventions);
  for (const auto& [path, source] : files) {
    model.units_.push_back(java::ParseCompilationUnit(source, path));
  }
  model.Index();
  return model;
}

void SuiteModel::Index() {
  for (const auto& unit : units_) {
    for (const auto& type : unit->types) {
      auto info = std::make_unique<ClassInfo>();
      info->unit = unit.get();
      info->decl = type.get();
      info->qualified_name =
          unit->package.empty() ? type->name : unit->package + "." + type->name;
      if (by_qualified_name_.contains(info->qualified_name)) {
        throw AnalysisError("duplicate class " + info->qualified_name);
      }
      by_qualified_name_[info->qualified_name] = info.get();
      by_simple_name_[type->name].push_back(info.get());
      by_decl_[type.get()] = info.get();
      classes_.push_back(std::move(info));
    }
  }

  for (const auto& cls : classes_) {
    for (const auto& member : cls->decl->members) {
      if (member->kind == java::MemberKind::kField) continue;
      const auto& method = static_cast<const java::MethodDecl&>(*member);
      auto info = std::make_unique<MethodInfo>();
      info->owner = cls.get();
      info->decl = &method;
      auto has_any = [&](const std::set<std::string>& names) {
        return std::any_of(names.begin(), names.end(), [&](const auto& n) {
          return method.HasAnnotation(n);
        });
      };
      if (method.kind == java::MemberKind::kMethod) {
        if (has_any(conventions_.parameterized_test_annotations)) {
          info->role = MethodRole::kParameterizedTest;
        } else if (has_any(conventions_.test_annotations)) {
          info->role = MethodRole::kTest;
        } else if (has_any(conventions_.setup_annotations) ||
                   conventions_.setup_method_names.contains(method.name)) {
          info->role = MethodRole::kSetup;
        } else if (has_any(conventions_.teardown_annotations) ||
                   conventions_.teardown_method_names.contains(method.name)) {
          info->role = MethodRole::kTeardown;
        }
      }
      method_info_[&method] = info.get();
      methods_.push_back(std::move(info));
    }
  }

  // Stubbing sites and call sites, per method body.
  std::map<std::pair<const java::CompilationUnit*, int>,
           std::vector<StubbingSite*>>
      sites_per_line;
  for (const auto& method_info : methods_) {
    const java::MethodDecl& method = *method_info->decl;
    auto& calls = call_sites_[&method];
    if (!method.body) continue;
    java::WalkStatements(
        *method.body, [&](const java::Stmt& stmt,
                          const std::vector<const java::Stmt*>& ancestors) {
          bool enclosed_by_loop =
              std::any_of(ancestors.begin(), ancestors.end(),
                          [](const java::Stmt* s) { return IsLoop(*s); });
          // Loop headers (except a for-each iterable) run repeatedly.
          bool header_repeats = stmt.kind == NodeKind::kFor ||
                                stmt.kind == NodeKind::kWhile ||
                                stmt.kind == NodeKind::kDoWhile;
          for (const java::Expr* expr : java::OwnExpressions(stmt)) {
            java::WalkExpression(*expr, [&](const java::Expr& e) {
              if (e.kind == NodeKind::kNew) {
                const auto& creation = static_cast<const java::NewExpr&>(e);
                calls.push_back(CallSite{nullptr, &creation, e.range.line,
                                         enclosed_by_loop || header_repeats});
                return;
              }
              if (e.kind != NodeKind::kMethodCall) return;
              const auto& call = static_cast<const java::MethodCallExpr&>(e);
              calls.push_back(CallSite{&call, nullptr, call.name_range.line,
                                       enclosed_by_loop || header_repeats});
              if (!IsStubbingDefinition(call)) return;
              auto site = std::make_unique<StubbingSite>();
              site->method = method_info.get();
              site->then_return = &call;
              site->when_call =
                  static_cast<const java::MethodCallExpr*>(call.receiver.get());
              site->statement = &stmt;
              site->parent = ancestors.empty() ? nullptr : ancestors.back();
              site->standalone =
                  stmt.kind == NodeKind::kExprStmt &&
                  static_cast<const java::ExprStmt&>(stmt).expr.get() == &call;
              site->in_loop = enclosed_by_loop || header_repeats;
              site->location.file_path = method_info->owner->unit->path;
              site->location.line = site->when_call->name_range.line;
              sites_per_line[{method_info->owner->unit,
                              site->location.line}]
                  .push_back(site.get());
              sites_.push_back(std::move(site));
            });
          }
        });
  }
  for (auto& [key, sites] : sites_per_line) {
    std::sort(sites.begin(), sites.end(), [](const auto* a, const auto* b) {
      return a->when_call->name_range.begin < b->when_call->name_range.begin;
    });
    for (size_t i = 0; i < sites.size(); ++i) {
      sites[i]->location.occurrence_index = static_cast<int>(i);
      site_by_location_[sites[i]->location] = sites[i];
      site_by_call_[sites[i]->then_return] = sites[i];
    }
  }
}

const java::CompilationUnit* SuiteModel::FindUnit(std::string_view path) const {
  for (const auto& unit : units_) {
    if (unit->path == path) return unit.get();
  }
  return nullptr;
}

const ClassInfo* SuiteModel::FindClass(std::string_view name) const {
  if (auto it = by_qualified_name_.find(name); it != by_qualified_name_.end()) {
    return it->second;
  }
  if (auto it = by_simple_name_.find(name);
      it != by_simple_name_.end() && it->second.size() == 1) {
    return it->second.front();
  }
  return nullptr;
}

const ClassInfo* SuiteModel::ClassOf(const java::TypeDecl& decl) const {
  auto it = by_decl_.find(&decl);
  return it == by_decl_.end() ? nullptr : it->second;
}

const MethodInfo* SuiteModel::InfoFor(const java::MethodDecl& decl) const {
  auto it = method_info_.find(&decl);
  return it == method_info_.end() ? nullptr : it->second;
}

std::vector<const ClassInfo*> SuiteModel::TestClasses() const {
  std::vector<const ClassInfo*> out;
  for (const auto& cls : classes_) {
    if (cls->decl->kind != java::TypeKind::kClass ||
        std::count(cls->decl->modifiers.begin(), cls->decl->modifiers.end(),
                   "abstract") > 0) {
      continue;
    }
    if (!MethodsWithRole(*cls, MethodRole::kTest).empty() ||
        !MethodsWithRole(*cls, MethodRole::kParameterizedTest).empty()) {
      out.push_back(cls.get());
    }
  }
  std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) {
    return a->qualified_name < b->qualified_name;
  });
  return out;
}

bool SuiteModel::IsTestFile(const java::CompilationUnit& unit) const {
  std::string_view path = unit.path;
  if (path.starts_with("src/test/") ||
      path.find("/src/test/") != std::string_view::npos) {
    return true;
  }
  for (const auto* cls : TestClasses()) {
    if (cls->unit == &unit) return true;
  }
  return false;
}

bool SuiteModel::IsParameterizedClass(const ClassInfo& cls) const {
  return !MethodsWithRole(cls, MethodRole::kParameterizedTest).empty();
}

std::vector<const MethodInfo*> SuiteModel::MethodsWithRole(
    const ClassInfo& cls, MethodRole role) const {
  std::vector<const MethodInfo*> out;
  for (const auto& member : cls.decl->members) {
    if (member->kind == java::MemberKind::kField) continue;
    const MethodInfo* info =
        InfoFor(static_cast<const java::MethodDecl&>(*member));
    if (info && info->role == role) out.push_back(info);
  }
  return out;
}

const MethodInfo* SuiteModel::ResolveFrame(const StackFrame& frame) const {
  const ClassInfo* cls = FindClass(frame.declaring_class);
  if (!cls || cls->unit->path != frame.file_path) return nullptr;
  for (const auto& member : cls->decl->members) {
    if (member->kind == java::MemberKind::kField) continue;
    const MethodInfo* info =
        InfoFor(static_cast<const java::MethodDecl&>(*member));
    if (info->FrameName() == frame.method_name &&
        member->range.line <= frame.line && frame.line <= member->range.end_line) {
      return info;
    }
  }
  return nullptr;
}

const StubbingSite* SuiteModel::FindStubbingSite(
    const CodeLocation& location) const {
  auto it = site_by_location_.find(location);
  return it == site_by_location_.end() ? nullptr : it->second;
}

const StubbingSite* SuiteModel::SiteForThenReturn(
    const java::MethodCallExpr& call) const {
  auto it = site_by_call_.find(&call);
  return it == site_by_call_.end() ? nullptr : it->second;
}

std::vector<const CallSite*> SuiteModel::CallSitesAt(
    const java::MethodDecl& method, int line) const {
  std::vector<const CallSite*> out;
  for (const CallSite& site : CallSitesIn(method)) {
    if (site.line == line) out.push_back(&site);
  }
  return out;
}

const std::vector<CallSite>& SuiteModel::CallSitesIn(
    const java::MethodDecl& method) const {
  static const std::vector<CallSite> kEmpty;
  auto it = call_sites_.find(&method);
  return it == call_sites_.end() ? kEmpty : it->second;
}

}  // namespace stubscrub
