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

#include "stubscrub/refactorer.h"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <tuple>

#include "stubscrub/java/lexer.h"
#include "stubscrub/java/parser.h"
#include "stubscrub/text_edit.h"

namespace stubscrub {

namespace {

using java::NodeKind;

constexpr int kMaxNameSuffix = 10000;

// Rewritten copy of a method in which some definitions are gone and some
// calls go to other rewritten copies. Interned by `key`, so call paths that
// need identical rewrites share one copy.
struct Variant {
  const MethodInfo* method = nullptr;
  std::set<const StubbingSite*> drops;
  // (line in this method, callee name) to the copy the call must target.
  std::map<std::pair<int, std::string>, const Variant*> calls;
  std::string key;
  // Sites removed here or in any copy reachable through `calls`.
  std::set<const StubbingSite*> reach;
  std::string name;  // set once the copy is materialized as a duplicate
};

// Call paths observed from one entry method, merged by call site.
struct TrieNode {
  const MethodInfo* method = nullptr;
  std::map<std::pair<int, const MethodInfo*>, std::unique_ptr<TrieNode>>
      children;
  std::set<const StubbingSite*> drops;
  std::set<const StubbingSite*> keeps;
};

// One class as it appears in the output. Index 0 is the class itself;
// higher indices are copies that receive moved tests.
struct Instance {
  const ClassInfo* cls = nullptr;
  int index = 0;
  std::string simple_name;
  std::string qualified_name;
  std::string path;
  std::vector<const MethodInfo*> tests;  // copies only
  std::map<const MethodInfo*, const Variant*> lifecycle;
  std::set<const MethodInfo*> originals;  // helpers pulled into a copy
  std::set<const Variant*> variants;
};

bool IsLifecycle(MethodRole role) {
  return role == MethodRole::kSetup || role == MethodRole::kTeardown;
}

bool IsTestRole(MethodRole role) {
  return role == MethodRole::kTest || role == MethodRole::kParameterizedTest;
}

std::string MethodId(const MethodInfo& method) {
  return method.owner->qualified_name + "#" + method.decl->name + "@" +
         std::to_string(method.decl->range.begin);
}

std::string SimpleName(std::string_view qualified) {
  size_t dot = qualified.rfind('.');
  return std::string(dot == std::string_view::npos ? qualified
                                                   : qualified.substr(dot + 1));
}

std::string Slice(const std::string& source, const java::SourceRange& range) {
  return source.substr(range.begin, range.end - range.begin);
}

void CollectNames(const java::Expr& expr, std::multiset<std::string>& names) {
  java::WalkExpression(expr, [&](const java::Expr& e) {
    if (e.kind == NodeKind::kName) {
      names.insert(static_cast<const java::NameExpr&>(e).name);
    }
  });
}

// Parent of every statement in the body, with the body block as the root.
std::map<const java::Stmt*, const java::Stmt*> ParentMap(
    const java::BlockStmt& body) {
  std::map<const java::Stmt*, const java::Stmt*> parents;
  java::WalkStatements(body, [&](const java::Stmt& stmt,
                                 const std::vector<const java::Stmt*>& up) {
    parents[&stmt] = up.empty() ? nullptr : up.back();
  });
  return parents;
}

// Statements to delete from `method`: the requested ones plus the locals
// that become unreferenced, to a fixpoint.
std::set<const java::Stmt*> PlanRemoval(
    const SuiteModel& suite, const java::MethodDecl& method,
    const std::vector<const java::Stmt*>& statements) {
  std::set<const java::Stmt*> gone(statements.begin(), statements.end());
  if (!method.body || gone.empty()) return gone;
  bool changed = true;
  while (changed) {
    changed = false;
    std::multiset<std::string> removed_refs;
    std::multiset<std::string> live_refs;
    std::vector<const java::LocalVarStmt*> candidates;
    java::WalkStatements(
        *method.body, [&](const java::Stmt& stmt,
                          const std::vector<const java::Stmt*>& up) {
          bool inside_gone = gone.contains(&stmt) ||
                             std::any_of(up.begin(), up.end(),
                                         [&](const java::Stmt* s) {
                                           return gone.contains(s);
                                         });
          for (const java::Expr* expr : java::OwnExpressions(stmt)) {
            CollectNames(*expr, inside_gone ? removed_refs : live_refs);
          }
          if (inside_gone || stmt.kind != NodeKind::kLocalVar) return;
          const auto& local = static_cast<const java::LocalVarStmt&>(stmt);
          if (local.vars.size() != 1) return;
          if (local.vars[0].init &&
              !IsSideEffectFree(*local.vars[0].init, suite)) {
            return;
          }
          candidates.push_back(&local);
        });
    for (const java::LocalVarStmt* local : candidates) {
      const std::string& name = local->vars[0].name;
      if (removed_refs.contains(name) && !live_refs.contains(name)) {
        gone.insert(local);
        changed = true;
      }
    }
  }
  return gone;
}

std::vector<TextEdit> RemovalEdits(const java::CompilationUnit& unit,
                                   const java::MethodDecl& method,
                                   const std::set<const java::Stmt*>& gone) {
  std::vector<TextEdit> edits;
  if (!method.body) return edits;
  auto parents = ParentMap(*method.body);
  for (const java::Stmt* stmt : gone) {
    bool nested = false;
    for (const java::Stmt* p = parents[stmt]; p; p = parents[p]) {
      if (gone.contains(p)) nested = true;
    }
    if (nested) continue;
    const java::Stmt* parent = parents[stmt];
    bool in_sequence = parent && (parent->kind == NodeKind::kBlock ||
                                  parent->kind == NodeKind::kSwitch);
    if (in_sequence) {
      edits.push_back(
          DeletionFor(unit.source, stmt->range.begin, stmt->range.end));
    } else {
      edits.push_back(TextEdit{stmt->range.begin, stmt->range.end, "{ }"});
    }
  }
  return edits;
}

// Deletes a member together with the comments attached above it and one
// blank line before it.
TextEdit MemberDeletion(const java::CompilationUnit& unit,
                        const java::MemberDecl& member) {
  const std::string& src = unit.source;
  size_t begin = member.range.begin;
  bool extended = true;
  while (extended) {
    extended = false;
    for (const auto& comment : unit.comments) {
      if (comment.end > begin) continue;
      std::string_view gap(src.data() + comment.end, begin - comment.end);
      if (gap.find_first_not_of(" \t\r\n") == std::string_view::npos &&
          std::count(gap.begin(), gap.end(), '\n') <= 1) {
        begin = comment.begin;
        extended = true;
      }
    }
  }
  TextEdit edit = DeletionFor(src, begin, member.range.end);
  if (edit.begin >= 2 && src[edit.begin - 1] == '\n') {
    size_t prev_start = src.rfind('\n', edit.begin - 2);
    prev_start = prev_start == std::string::npos ? 0 : prev_start + 1;
    std::string_view prev(src.data() + prev_start, edit.begin - 1 - prev_start);
    if (prev.find_first_not_of(" \t\r") == std::string_view::npos) {
      edit.begin = prev_start;
    }
  }
  return edit;
}

class Resolver {
 public:
  Resolver(const SuiteModel& suite, const ResolveOptions& options)
      : suite_(suite), options_(options) {}

  ResolveResult Run(const std::vector<ClassifiedStubbing>& classified,
                    const std::vector<ClassifiedStubbing>& excluded);

 private:
  struct Pending {
    const ClassifiedStubbing* cus = nullptr;
    const StubbingSite* site = nullptr;
    ResolutionEntry entry;
  };

  const MethodInfo* Frame(const StackFrame& frame) const {
    return suite_.ResolveFrame(frame);
  }
  std::string CheckOccurrence(const Occurrence& occurrence,
                              const StubbingSite& site,
                              bool unnecessary) const;
  std::string CheckCallPaths(const ClassifiedStubbing& cus) const;
  void BuildTrie(const std::vector<Pending*>& contributors);
  std::set<const StubbingSite*> Conflicts() const;
  const Variant* Compute(const TrieNode& node);
  void PlanClasses();
  Instance& OriginalInstance(const ClassInfo* cls);
  void Close();
  void AssignNames();
  std::string RenderMethod(const MethodInfo& method, const Variant* variant,
                           const std::string* rename,
                           bool strip_annotations) const;
  // Renders a file of the suite. Private helpers whose every call moved to
  // a duplicate are dropped, iterating until no more become unreferenced.
  std::string RenderOriginalFile(const java::CompilationUnit& unit);
  std::string RenderOriginalFile(const java::CompilationUnit& unit,
                                 const std::set<const MethodInfo*>& dead) const;
  std::string RenderCopy(const Instance& copy) const;
  const Variant* RootVariant(const Instance& inst,
                             const MethodInfo& method) const;
  void DescribeEdits(Pending& pending) const;
  std::vector<const Variant*> SortedVariants(const Instance& inst,
                                             const MethodInfo& method) const;

  const SuiteModel& suite_;
  ResolveOptions options_;

  std::set<const StubbingSite*> tu_sites_;
  std::map<const MethodInfo*, std::unique_ptr<TrieNode>> test_roots_;
  std::map<TestKey, std::map<const MethodInfo*, std::unique_ptr<TrieNode>>>
      lifecycle_roots_;
  std::map<std::string, std::unique_ptr<Variant>> interned_;
  std::map<const MethodInfo*, const Variant*> test_variants_;
  std::map<TestKey, std::map<const MethodInfo*, const Variant*>>
      lifecycle_variants_;

  std::vector<std::unique_ptr<Instance>> instances_;
  std::map<const ClassInfo*, Instance*> original_of_;
  std::map<const MethodInfo*, Instance*> moved_to_;
  std::set<std::string> taken_class_names_;
  std::set<const MethodInfo*> removed_helpers_;
};

std::string Resolver::CheckOccurrence(const Occurrence& occurrence,
                                      const StubbingSite& site,
                                      bool unnecessary) const {
  const auto& stack = occurrence.event.stack;
  if (stack.empty()) return "occurrence without a call stack";
  std::vector<const MethodInfo*> methods;
  for (const StackFrame& frame : stack) {
    const MethodInfo* method = Frame(frame);
    if (!method) {
      return "frame " + frame.declaring_class + "." + frame.method_name + ":" +
             std::to_string(frame.line) + " does not resolve";
    }
    methods.push_back(method);
  }
  if (methods.front() != site.method) {
    return "innermost frame is not the method holding the definition";
  }
  const MethodInfo* entry = methods.back();
  if (!IsTestRole(entry->role) && !IsLifecycle(entry->role)) {
    return "definition not reached from a test or lifecycle method";
  }
  if (IsLifecycle(entry->role) &&
      entry->owner->qualified_name != occurrence.test.test_class) {
    return "lifecycle method " + entry->decl->name +
           " is declared in a base class of " + occurrence.test.test_class;
  }
  if (!unnecessary) return "";
  for (size_t i = 0; i + 1 < methods.size(); ++i) {
    if (methods[i]->decl->kind == java::MemberKind::kConstructor) {
      return "call path runs through constructor of " +
             methods[i]->owner->qualified_name;
    }
    int matches = 0;
    for (const CallSite* call :
         suite_.CallSitesAt(*methods[i + 1]->decl, stack[i + 1].line)) {
      if (call->call && call->call->name == methods[i]->decl->name) ++matches;
    }
    if (matches != 1) {
      return std::to_string(matches) + " calls to " + methods[i]->decl->name +
             " on line " + std::to_string(stack[i + 1].line) + " of " +
             methods[i + 1]->decl->name;
    }
  }
  return "";
}

std::string Resolver::CheckCallPaths(const ClassifiedStubbing& cus) const {
  const StubbingSite* site = suite_.FindStubbingSite(cus.group.location);
  std::map<std::pair<TestKey, std::vector<std::pair<std::string, int>>>,
           std::pair<bool, bool>>
      paths;
  auto visit = [&](const std::vector<Occurrence>& occurrences,
                   bool unnecessary) -> std::string {
    for (const Occurrence& occurrence : occurrences) {
      std::string problem = CheckOccurrence(occurrence, *site, unnecessary);
      if (!problem.empty()) return problem;
      std::vector<std::pair<std::string, int>> path;
      for (const StackFrame& frame : occurrence.event.stack) {
        path.emplace_back(frame.declaring_class + "." + frame.method_name,
                          frame.line);
      }
      auto& flags = paths[{occurrence.test, path}];
      (unnecessary ? flags.first : flags.second) = true;
      if (flags.first && flags.second) {
        return "one call path in " + occurrence.test.ToString() +
               " both uses and ignores this stubbing";
      }
    }
    return "";
  };
  std::string problem = visit(cus.group.unnecessary, true);
  if (problem.empty()) problem = visit(cus.group.used, false);
  return problem;
}

void Resolver::BuildTrie(const std::vector<Pending*>& contributors) {
  test_roots_.clear();
  lifecycle_roots_.clear();
  for (const Pending* pending : contributors) {
    auto add = [&](const Occurrence& occurrence, bool unnecessary) {
      const auto& stack = occurrence.event.stack;
      const MethodInfo* entry = Frame(stack.back());
      std::unique_ptr<TrieNode>& root =
          IsTestRole(entry->role)
              ? test_roots_[entry]
              : lifecycle_roots_[occurrence.test][entry];
      if (!root) {
        root = std::make_unique<TrieNode>();
        root->method = entry;
      }
      TrieNode* node = root.get();
      for (size_t i = stack.size() - 1; i > 0; --i) {
        const MethodInfo* callee = Frame(stack[i - 1]);
        auto& child = node->children[{stack[i].line, callee}];
        if (!child) {
          child = std::make_unique<TrieNode>();
          child->method = callee;
        }
        node = child.get();
      }
      (unnecessary ? node->drops : node->keeps).insert(pending->site);
    };
    for (const Occurrence& o : pending->cus->group.unnecessary) add(o, true);
    for (const Occurrence& o : pending->cus->group.used) add(o, false);
  }
}

std::set<const StubbingSite*> Resolver::Conflicts() const {
  std::set<const StubbingSite*> out;
  std::function<void(const TrieNode&)> visit = [&](const TrieNode& node) {
    for (const StubbingSite* site : node.drops) {
      if (node.keeps.contains(site)) out.insert(site);
    }
    for (const auto& [key, child] : node.children) visit(*child);
  };
  for (const auto& [method, root] : test_roots_) visit(*root);
  for (const auto& [test, roots] : lifecycle_roots_) {
    for (const auto& [method, root] : roots) visit(*root);
  }
  return out;
}

const Variant* Resolver::Compute(const TrieNode& node) {
  std::map<std::pair<int, std::string>, const Variant*> calls;
  for (const auto& [key, child] : node.children) {
    if (const Variant* v = Compute(*child)) {
      calls[{key.first, child->method->decl->name}] = v;
    }
  }
  if (node.drops.empty() && calls.empty()) return nullptr;
  std::vector<CodeLocation> drops;
  for (const StubbingSite* site : node.drops) drops.push_back(site->location);
  std::sort(drops.begin(), drops.end());
  std::string key = MethodId(*node.method) + "{";
  for (const CodeLocation& loc : drops) key += loc.ToString() + ";";
  key += "|";
  for (const auto& [call, v] : calls) {
    key += std::to_string(call.first) + ":" + call.second + "=>" + v->key + ";";
  }
  key += "}";
  auto& slot = interned_[key];
  if (!slot) {
    slot = std::make_unique<Variant>();
    slot->method = node.method;
    slot->drops = node.drops;
    slot->calls = std::move(calls);
    slot->key = key;
    slot->reach = slot->drops;
    for (const auto& [call, v] : slot->calls) {
      slot->reach.insert(v->reach.begin(), v->reach.end());
    }
  }
  return slot.get();
}

Instance& Resolver::OriginalInstance(const ClassInfo* cls) {
  Instance*& slot = original_of_[cls];
  if (!slot) {
    auto inst = std::make_unique<Instance>();
    inst->cls = cls;
    inst->simple_name = cls->decl->name;
    inst->qualified_name = cls->qualified_name;
    inst->path = cls->unit->path;
    slot = inst.get();
    instances_.push_back(std::move(inst));
  }
  return *slot;
}

void Resolver::PlanClasses() {
  for (const auto& cls : suite_.classes()) {
    taken_class_names_.insert(cls->decl->name);
  }
  for (const ClassInfo* cls : suite_.TestClasses()) {
    std::vector<const MethodInfo*> lifecycle;
    std::vector<const MethodInfo*> tests;
    for (const auto& member : cls->decl->members) {
      if (member->kind == java::MemberKind::kField) continue;
      const MethodInfo* info =
          suite_.InfoFor(static_cast<const java::MethodDecl&>(*member));
      if (IsLifecycle(info->role)) lifecycle.push_back(info);
      if (IsTestRole(info->role)) tests.push_back(info);
    }
    using Signature = std::vector<const Variant*>;
    std::vector<std::pair<Signature, std::vector<const MethodInfo*>>> groups;
    for (const MethodInfo* test : tests) {
      Signature signature;
      auto found = lifecycle_variants_.find(
          TestKey{cls->qualified_name, test->decl->name});
      for (const MethodInfo* method : lifecycle) {
        const Variant* v = nullptr;
        if (found != lifecycle_variants_.end()) {
          auto it = found->second.find(method);
          if (it != found->second.end()) v = it->second;
        }
        signature.push_back(v);
      }
      auto group = std::find_if(groups.begin(), groups.end(),
                                [&](const auto& g) { return g.first == signature; });
      if (group == groups.end()) {
        groups.emplace_back(signature, std::vector<const MethodInfo*>{test});
      } else {
        group->second.push_back(test);
      }
    }
    if (groups.empty()) continue;
    auto all_null = [](const Signature& s) {
      return std::all_of(s.begin(), s.end(),
                         [](const Variant* v) { return v == nullptr; });
    };
    size_t stay = 0;
    auto pristine = std::find_if(groups.begin(), groups.end(),
                                 [&](const auto& g) { return all_null(g.first); });
    if (pristine != groups.end()) {
      stay = pristine - groups.begin();
    } else {
      for (size_t i = 1; i < groups.size(); ++i) {
        if (groups[i].second.size() > groups[stay].second.size()) stay = i;
      }
    }
    if (all_null(groups[stay].first) && groups.size() == 1) continue;
    Instance& original = OriginalInstance(cls);
    for (size_t i = 0; i < lifecycle.size(); ++i) {
      if (groups[stay].first[i]) {
        original.lifecycle[lifecycle[i]] = groups[stay].first[i];
      }
    }
    int index = 0;
    for (size_t g = 0; g < groups.size(); ++g) {
      if (g == stay) continue;
      auto copy = std::make_unique<Instance>();
      copy->cls = cls;
      copy->index = ++index;
      std::filesystem::path dir =
          std::filesystem::path(cls->unit->path).parent_path();
      for (int k = 1;; ++k) {
        if (k > kMaxNameSuffix) {
          throw AnalysisError("no free class name for a copy of " +
                              cls->qualified_name);
        }
        std::string name = cls->decl->name + "_Stubscrub" + std::to_string(k);
        std::string path = (dir / (name + ".java")).generic_string();
        if (taken_class_names_.contains(name) || suite_.FindUnit(path)) {
          continue;
        }
        taken_class_names_.insert(name);
        copy->simple_name = name;
        copy->path = path;
        copy->qualified_name =
            cls->unit->package.empty() ? name : cls->unit->package + "." + name;
        break;
      }
      copy->tests = groups[g].second;
      for (size_t i = 0; i < lifecycle.size(); ++i) {
        if (groups[g].first[i]) copy->lifecycle[lifecycle[i]] = groups[g].first[i];
      }
      for (const MethodInfo* test : copy->tests) moved_to_[test] = copy.get();
      instances_.push_back(std::move(copy));
    }
  }
}

const Variant* Resolver::RootVariant(const Instance& inst,
                                     const MethodInfo& method) const {
  if (IsTestRole(method.role)) {
    auto it = test_variants_.find(&method);
    return it == test_variants_.end() ? nullptr : it->second;
  }
  if (IsLifecycle(method.role)) {
    auto it = inst.lifecycle.find(&method);
    return it == inst.lifecycle.end() ? nullptr : it->second;
  }
  return nullptr;
}

void Resolver::Close() {
  struct Work {
    Instance* inst;
    const MethodInfo* method;
    const Variant* variant;
  };
  std::deque<Work> work;
  auto pull_helper = [&](Instance* inst, const java::MethodCallExpr& call) {
    if (inst->index == 0) return;
    if (call.receiver && call.receiver->kind != NodeKind::kThis) return;
    const java::MethodDecl* decl =
        inst->cls->decl->FindMethod(call.name, call.args.size());
    if (!decl) return;
    const MethodInfo* info = suite_.InfoFor(*decl);
    if (info->role != MethodRole::kOther) return;
    if (inst->originals.insert(info).second) work.push_back({inst, info, nullptr});
  };

  for (const auto& [method, variant] : test_variants_) {
    auto moved = moved_to_.find(method);
    Instance* inst = moved != moved_to_.end() ? moved->second
                                              : &OriginalInstance(method->owner);
    work.push_back({inst, method, variant});
  }
  std::vector<Instance*> snapshot;
  for (const auto& inst : instances_) snapshot.push_back(inst.get());
  for (Instance* inst : snapshot) {
    for (const auto& [method, variant] : inst->lifecycle) {
      work.push_back({inst, method, variant});
    }
    if (inst->index == 0) continue;
    for (const auto& member : inst->cls->decl->members) {
      if (member->kind == java::MemberKind::kField) {
        for (const auto& var :
             static_cast<const java::FieldDecl&>(*member).vars) {
          if (!var.init) continue;
          java::WalkExpression(*var.init, [&](const java::Expr& e) {
            if (e.kind == NodeKind::kMethodCall) {
              pull_helper(inst, static_cast<const java::MethodCallExpr&>(e));
            }
          });
        }
        continue;
      }
      const MethodInfo* info =
          suite_.InfoFor(static_cast<const java::MethodDecl&>(*member));
      bool present = member->kind == java::MemberKind::kConstructor ||
                     IsLifecycle(info->role) ||
                     std::find(inst->tests.begin(), inst->tests.end(), info) !=
                         inst->tests.end();
      if (present && !inst->lifecycle.contains(info) &&
          !test_variants_.contains(info)) {
        work.push_back({inst, info, nullptr});
      }
    }
  }

  while (!work.empty()) {
    Work item = work.front();
    work.pop_front();
    for (const CallSite& site : suite_.CallSitesIn(*item.method->decl)) {
      if (!site.call) continue;
      if (item.variant) {
        auto it = item.variant->calls.find({site.line, site.call->name});
        if (it != item.variant->calls.end()) {
          const Variant* target = it->second;
          Instance* host = target->method->owner == item.inst->cls
                               ? item.inst
                               : &OriginalInstance(target->method->owner);
          if (host->variants.insert(target).second) {
            work.push_back({host, target->method, target});
          }
          continue;
        }
      }
      pull_helper(item.inst, *site.call);
    }
  }
}

void Resolver::AssignNames() {
  std::map<const ClassInfo*, std::vector<Variant*>> by_class;
  std::set<const Variant*> seen;
  for (const auto& inst : instances_) {
    for (const Variant* v : inst->variants) {
      if (seen.insert(v).second) {
        by_class[v->method->owner].push_back(const_cast<Variant*>(v));
      }
    }
  }
  for (auto& [cls, variants] : by_class) {
    std::sort(variants.begin(), variants.end(),
              [](const Variant* a, const Variant* b) {
                return std::tie(a->method->decl->name, a->key) <
                       std::tie(b->method->decl->name, b->key);
              });
    std::set<std::string> taken;
    for (const auto& member : cls->decl->members) {
      if (member->kind == java::MemberKind::kField) {
        for (const auto& var :
             static_cast<const java::FieldDecl&>(*member).vars) {
          taken.insert(var.name);
        }
      } else {
        taken.insert(static_cast<const java::MethodDecl&>(*member).name);
      }
    }
    for (Variant* v : variants) {
      for (int k = 1;; ++k) {
        if (k > kMaxNameSuffix) {
          throw AnalysisError("no free method name for a copy of " +
                              v->method->decl->name);
        }
        std::string name = v->method->decl->name + "_nostub" + std::to_string(k);
        if (taken.insert(name).second) {
          v->name = name;
          break;
        }
      }
    }
  }
}

std::string Resolver::RenderMethod(const MethodInfo& method,
                                   const Variant* variant,
                                   const std::string* rename,
                                   bool strip_annotations) const {
  const java::CompilationUnit& unit = *method.owner->unit;
  const java::MethodDecl& decl = *method.decl;
  size_t begin = decl.range.begin;
  if (strip_annotations && !decl.annotations.empty()) {
    for (const auto& annotation : decl.annotations) {
      begin = std::max(begin, annotation.range.end);
    }
    while (begin < decl.range.end &&
           std::isspace(static_cast<unsigned char>(unit.source[begin]))) {
      ++begin;
    }
  }
  std::vector<const java::Stmt*> removed;
  for (const StubbingSite* site : tu_sites_) {
    if (site->method == &method) removed.push_back(site->statement);
  }
  if (variant) {
    for (const StubbingSite* site : variant->drops) {
      removed.push_back(site->statement);
    }
  }
  std::vector<TextEdit> edits =
      RemovalEdits(unit, decl, PlanRemoval(suite_, decl, removed));
  if (variant) {
    for (const CallSite& site : suite_.CallSitesIn(decl)) {
      if (!site.call) continue;
      auto it = variant->calls.find({site.line, site.call->name});
      if (it == variant->calls.end()) continue;
      edits.push_back(TextEdit{site.call->name_range.begin,
                               site.call->name_range.end, it->second->name});
    }
  }
  if (rename) {
    edits.push_back(TextEdit{decl.name_range.begin, decl.name_range.end, *rename});
  }
  return ApplyEditsInRange(unit.source, begin, decl.range.end, std::move(edits));
}

std::vector<const Variant*> Resolver::SortedVariants(
    const Instance& inst, const MethodInfo& method) const {
  std::vector<const Variant*> out;
  for (const Variant* v : inst.variants) {
    if (v->method == &method) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), [](const Variant* a, const Variant* b) {
    return a->name < b->name;
  });
  return out;
}

std::string Resolver::RenderOriginalFile(
    const java::CompilationUnit& unit,
    const std::set<const MethodInfo*>& dead) const {
  std::vector<TextEdit> edits;
  for (const auto& type : unit.types) {
    const ClassInfo* cls = suite_.ClassOf(*type);
    auto found = original_of_.find(cls);
    const Instance* inst = found == original_of_.end() ? nullptr : found->second;
    Instance empty;
    const Instance& view = inst ? *inst : empty;
    for (const auto& member : type->members) {
      if (member->kind == java::MemberKind::kField) continue;
      const MethodInfo* info =
          suite_.InfoFor(static_cast<const java::MethodDecl&>(*member));
      if (moved_to_.contains(info)) {
        edits.push_back(MemberDeletion(unit, *member));
        continue;
      }
      std::string indent = IndentationAt(unit.source, member->range.begin);
      std::vector<std::string> copies;
      if (inst) {
        for (const Variant* v : SortedVariants(*inst, *info)) {
          copies.push_back(RenderMethod(*info, v, &v->name, true));
        }
      }
      if (dead.contains(info)) {
        if (copies.empty()) {
          edits.push_back(MemberDeletion(unit, *member));
          continue;
        }
        std::string text = copies.front();
        for (size_t i = 1; i < copies.size(); ++i) {
          text += "\n\n" + indent + copies[i];
        }
        edits.push_back(
            TextEdit{member->range.begin, member->range.end, std::move(text)});
        continue;
      }
      std::string text =
          RenderMethod(*info, RootVariant(view, *info), nullptr, false);
      if (text != Slice(unit.source, member->range)) {
        edits.push_back(
            TextEdit{member->range.begin, member->range.end, std::move(text)});
      }
      for (const std::string& copy : copies) {
        edits.push_back(TextEdit{member->range.end, member->range.end,
                                 "\n\n" + indent + copy});
      }
    }
  }
  return ApplyEdits(unit.source, std::move(edits));
}

std::string Resolver::RenderOriginalFile(const java::CompilationUnit& unit) {
  auto identifier_counts = [](const std::vector<java::Token>& tokens) {
    std::map<std::string, int> counts;
    for (const java::Token& token : tokens) {
      if (token.kind == java::TokenKind::kIdentifier) ++counts[token.text];
    }
    return counts;
  };
  std::map<std::string, int> before = identifier_counts(unit.tokens);
  std::set<const MethodInfo*> dead;
  std::string text = RenderOriginalFile(unit, dead);
  for (;;) {
    std::map<std::string, int> after = identifier_counts(java::Lex(text).tokens);
    bool grew = false;
    for (const auto& type : unit.types) {
      std::map<std::string, int> declared;
      for (const auto& member : type->members) {
        if (member->kind != java::MemberKind::kField) {
          ++declared[static_cast<const java::MethodDecl&>(*member).name];
        }
      }
      for (const auto& member : type->members) {
        if (member->kind != java::MemberKind::kMethod ||
            !member->HasModifier("private")) {
          continue;
        }
        const MethodInfo* info =
            suite_.InfoFor(static_cast<const java::MethodDecl&>(*member));
        const std::string& name = info->decl->name;
        if (info->role != MethodRole::kOther || dead.contains(info) ||
            declared[name] != 1) {
          continue;
        }
        if (before[name] > 1 && after[name] <= 1) {
          dead.insert(info);
          grew = true;
        }
      }
    }
    if (!grew) break;
    text = RenderOriginalFile(unit, dead);
  }
  removed_helpers_.insert(dead.begin(), dead.end());

  // Imports that only the removed or moved code used. Edits stay inside
  // type bodies, so import offsets still hold in the rendered text.
  std::map<std::string, int> after = identifier_counts(java::Lex(text).tokens);
  std::vector<TextEdit> import_edits;
  for (const auto& import : unit.imports) {
    std::string name = SimpleName(import.name);
    if (import.name.ends_with(".*") || before[name] <= 1 || after[name] > 1) {
      continue;
    }
    import_edits.push_back(DeletionFor(text, import.range.begin, import.range.end));
  }
  return ApplyEdits(text, std::move(import_edits));
}

std::string Resolver::RenderCopy(const Instance& copy) const {
  const java::CompilationUnit& unit = *copy.cls->unit;
  const java::TypeDecl& type = *copy.cls->decl;
  const std::string& src = unit.source;

  std::string header = ApplyEditsInRange(
      src, type.range.begin, type.body_open + 1,
      {TextEdit{type.name_range.begin, type.name_range.end, copy.simple_name}});
  std::vector<std::string> pieces;
  // Consecutive fields keep the single line break they had in the source.
  std::vector<bool> tight;
  const java::MemberDecl* previous_field = nullptr;
  for (const auto& member : type.members) {
    std::string indent = IndentationAt(src, member->range.begin);
    if (member->kind == java::MemberKind::kField) {
      bool adjacent = false;
      if (previous_field && !pieces.empty()) {
        std::string_view gap(src.data() + previous_field->range.end,
                             member->range.begin - previous_field->range.end);
        adjacent = std::count(gap.begin(), gap.end(), '\n') == 1;
      }
      tight.push_back(adjacent);
      pieces.push_back(indent + Slice(src, member->range));
      previous_field = member.get();
      continue;
    }
    previous_field = nullptr;
    const MethodInfo* info =
        suite_.InfoFor(static_cast<const java::MethodDecl&>(*member));
    bool include = false;
    const std::string* rename = nullptr;
    if (member->kind == java::MemberKind::kConstructor) {
      include = true;
      rename = &copy.simple_name;
    } else if (IsTestRole(info->role)) {
      include = std::find(copy.tests.begin(), copy.tests.end(), info) !=
                copy.tests.end();
    } else if (IsLifecycle(info->role)) {
      include = true;
    } else {
      include = copy.originals.contains(info);
    }
    if (include) {
      pieces.push_back(indent + RenderMethod(*info, RootVariant(copy, *info),
                                             rename, false));
    }
    for (const Variant* v : SortedVariants(copy, *info)) {
      pieces.push_back(indent + RenderMethod(*info, v, &v->name, true));
    }
    tight.resize(pieces.size(), false);
  }
  std::string body;
  for (size_t i = 0; i < pieces.size(); ++i) {
    body += (i == 0 || tight[i] ? "\n" : "\n\n") + pieces[i];
  }
  body += "\n" + IndentationAt(src, type.range.begin) + "}\n";

  std::set<std::string> identifiers;
  for (const std::string* text : {&header, &body}) {
    for (const java::Token& token : java::Lex(*text).tokens) {
      if (token.kind == java::TokenKind::kIdentifier) {
        identifiers.insert(token.text);
      }
    }
  }
  std::vector<TextEdit> import_edits;
  for (const auto& import : unit.imports) {
    bool wildcard = import.name.ends_with(".*");
    if (!wildcard && !identifiers.contains(SimpleName(import.name))) {
      import_edits.push_back(
          DeletionFor(src, import.range.begin, import.range.end));
    }
  }
  size_t type_start = type.range.begin;
  while (type_start > 0 && src[type_start - 1] != '\n') --type_start;
  std::string prefix =
      ApplyEditsInRange(src, 0, type_start, std::move(import_edits));
  std::string lead(src.substr(type_start, type.range.begin - type_start));
  return prefix + lead + header + body;
}

void Resolver::DescribeEdits(Pending& pending) const {
  const StubbingSite* site = pending.site;
  auto& edits = pending.entry.edits;
  std::string method_name = site->method->decl->name;
  if (pending.cus->kind == StubbingKind::kTotallyUnnecessary) {
    edits.push_back(SourceEdit{"remove-statement", site->location.file_path,
                               site->location.line, method_name, "", ""});
    std::multiset<std::string> referenced;
    for (const java::Expr* expr : java::OwnExpressions(*site->statement)) {
      CollectNames(*expr, referenced);
    }
    std::vector<const java::Stmt*> removed;
    for (const StubbingSite* other : tu_sites_) {
      if (other->method == site->method) removed.push_back(other->statement);
    }
    for (const java::Stmt* stmt :
         PlanRemoval(suite_, *site->method->decl, removed)) {
      if (stmt->kind != NodeKind::kLocalVar) continue;
      const auto& local = static_cast<const java::LocalVarStmt&>(*stmt);
      if (referenced.contains(local.vars[0].name)) {
        edits.push_back(SourceEdit{"remove-statement", site->location.file_path,
                                   stmt->range.line, method_name,
                                   "local " + local.vars[0].name, ""});
      }
    }
    return;
  }
  auto describe_root = [&](const Instance& inst, const MethodInfo& root,
                           const Variant* v) {
    if (!v || !v->reach.contains(site)) return;
    std::string scope = inst.simple_name + "." + root.decl->name;
    if (v->drops.contains(site)) {
      edits.push_back(SourceEdit{"remove-statement", inst.path,
                                 site->location.line, scope, "", ""});
    }
    for (const auto& [call, target] : v->calls) {
      if (target->reach.contains(site)) {
        edits.push_back(SourceEdit{"rewrite-callsite", inst.path, call.first, scope,
                                   call.second, target->name});
      }
    }
  };
  for (const auto& inst : instances_) {
    for (const auto& [method, v] : inst->lifecycle) describe_root(*inst, *method, v);
    for (const Variant* v : inst->variants) {
      if (v->reach.contains(site)) {
        edits.push_back(SourceEdit{"add-method", inst->path, 0,
                                   inst->qualified_name, v->method->decl->name,
                                   v->name});
      }
    }
    if (inst->index > 0) {
      bool involved = std::any_of(
          inst->lifecycle.begin(), inst->lifecycle.end(),
          [&](const auto& entry) { return entry.second->reach.contains(site); });
      if (involved) {
        edits.push_back(SourceEdit{"add-class", inst->path, 0,
                                   inst->cls->qualified_name, "",
                                   inst->qualified_name});
        for (const MethodInfo* test : inst->tests) {
          edits.push_back(SourceEdit{"move-test", inst->path, 0,
                                     inst->cls->qualified_name,
                                     test->decl->name, inst->qualified_name});
        }
        for (const MethodInfo* helper : inst->originals) {
          edits.push_back(SourceEdit{"copy-member", inst->path, 0,
                                     inst->cls->qualified_name,
                                     helper->decl->name, inst->qualified_name});
        }
      }
    }
  }
  for (const MethodInfo* helper : removed_helpers_) {
    bool involved = false;
    for (const auto& inst : instances_) {
      for (const Variant* v : inst->variants) {
        if (v->method == helper && v->reach.contains(site)) involved = true;
      }
    }
    if (involved) {
      edits.push_back(SourceEdit{"remove-method", helper->owner->unit->path,
                                 helper->decl->range.line,
                                 helper->owner->decl->name, helper->decl->name,
                                 ""});
    }
  }
  for (const auto& [method, v] : test_variants_) {
    auto moved = moved_to_.find(method);
    Instance placeholder;
    placeholder.simple_name = method->owner->decl->name;
    placeholder.path = method->owner->unit->path;
    const Instance& inst = moved != moved_to_.end() ? *moved->second : placeholder;
    describe_root(inst, *method, v);
  }
  std::sort(edits.begin(), edits.end());
  edits.erase(std::unique(edits.begin(), edits.end()), edits.end());
}

ResolveResult Resolver::Run(const std::vector<ClassifiedStubbing>& classified,
                            const std::vector<ClassifiedStubbing>& excluded) {
  ResolveResult result;
  std::vector<Pending> pending;
  pending.reserve(classified.size() + excluded.size());
  auto strategy = [](StubbingKind kind) -> std::string {
    switch (kind) {
      case StubbingKind::kTotallyUnnecessary:
        return "code-removal";
      case StubbingKind::kUsedUnnecessaryHelper:
        return "method-duplication";
      case StubbingKind::kUsedUnnecessarySetup:
        return "class-duplication";
    }
    return "";
  };
  for (const auto* list : {&classified, &excluded}) {
    for (const ClassifiedStubbing& cus : *list) {
      Pending p;
      p.cus = &cus;
      p.site = suite_.FindStubbingSite(cus.group.location);
      p.entry.location = cus.group.location;
      p.entry.kind = cus.kind;
      p.entry.strategy = strategy(cus.kind);
      p.entry.affected_tests = cus.group.unnecessary_tests;
      if (list == &excluded) {
        p.entry.status = ResolutionStatus::kSkipped;
        p.entry.reason =
            "defined in a loop or reached from a parameterized test";
      } else if (!p.site) {
        p.entry.status = ResolutionStatus::kError;
        p.entry.reason = "location is not a stubbing definition in the suite";
      }
      pending.push_back(std::move(p));
    }
  }

  std::vector<Pending*> contributors;
  for (Pending& p : pending) {
    if (p.entry.status != ResolutionStatus::kResolved) continue;
    if (p.cus->kind == StubbingKind::kTotallyUnnecessary) {
      if (!p.site->standalone) {
        p.entry.status = ResolutionStatus::kSkipped;
        p.entry.reason = "definition is part of a larger statement";
      } else {
        tu_sites_.insert(p.site);
      }
      continue;
    }
    if (p.cus->kind == StubbingKind::kUsedUnnecessarySetup &&
        options_.keep_setup_stubbings) {
      p.entry.status = ResolutionStatus::kSkipped;
      p.entry.reason = "setup stubbings are kept";
      continue;
    }
    std::string problem = CheckCallPaths(*p.cus);
    if (problem.empty() && !p.site->standalone) {
      problem = "definition is part of a larger statement";
    }
    if (!problem.empty()) {
      p.entry.status = ResolutionStatus::kError;
      p.entry.reason = problem;
      continue;
    }
    contributors.push_back(&p);
  }

  BuildTrie(contributors);
  std::set<const StubbingSite*> conflicts = Conflicts();
  if (!conflicts.empty()) {
    std::vector<Pending*> kept;
    for (Pending* p : contributors) {
      if (conflicts.contains(p->site)) {
        p->entry.status = ResolutionStatus::kError;
        p->entry.reason = "identical call paths both use and ignore this stubbing";
      } else {
        kept.push_back(p);
      }
    }
    contributors = std::move(kept);
    BuildTrie(contributors);
  }

  for (const auto& [method, root] : test_roots_) {
    if (const Variant* v = Compute(*root)) test_variants_[method] = v;
  }
  for (const auto& [test, roots] : lifecycle_roots_) {
    for (const auto& [method, root] : roots) {
      if (const Variant* v = Compute(*root)) lifecycle_variants_[test][method] = v;
    }
  }

  PlanClasses();
  Close();
  AssignNames();

  std::set<const java::CompilationUnit*> touched;
  for (const StubbingSite* site : tu_sites_) touched.insert(site->method->owner->unit);
  for (const auto& [method, v] : test_variants_) touched.insert(method->owner->unit);
  for (const auto& inst : instances_) {
    if (inst->index == 0) touched.insert(inst->cls->unit);
  }
  for (const auto& [method, inst] : moved_to_) touched.insert(method->owner->unit);

  for (const auto& unit : suite_.units()) {
    std::string text =
        touched.contains(unit.get()) ? RenderOriginalFile(*unit) : unit->source;
    if (text != unit->source) result.modified_files.insert(unit->path);
    result.files[unit->path] = std::move(text);
  }
  for (const auto& inst : instances_) {
    if (inst->index == 0) continue;
    result.files[inst->path] = RenderCopy(*inst);
    result.added_files.insert(inst->path);
    result.new_classes.push_back(inst->qualified_name);
    for (const MethodInfo* test : inst->tests) {
      result.moved_tests.push_back(MovedTest{
          TestKey{inst->cls->qualified_name, test->decl->name},
          inst->qualified_name});
    }
  }
  for (const ClassInfo* cls : suite_.TestClasses()) {
    bool has_test = false;
    for (const auto& member : cls->decl->members) {
      if (member->kind == java::MemberKind::kField) continue;
      const MethodInfo* info =
          suite_.InfoFor(static_cast<const java::MethodDecl&>(*member));
      if (IsTestRole(info->role) && !moved_to_.contains(info)) has_test = true;
    }
    if (!has_test) result.test_less_classes.push_back(cls->qualified_name);
  }

  for (Pending& p : pending) {
    if (p.entry.status == ResolutionStatus::kResolved) DescribeEdits(p);
    result.entries.push_back(std::move(p.entry));
  }
  std::sort(result.entries.begin(), result.entries.end(),
            [](const ResolutionEntry& a, const ResolutionEntry& b) {
              return a.location < b.location;
            });
  return result;
}

}  // namespace

std::string_view ToString(ResolutionStatus status) {
  switch (status) {
    case ResolutionStatus::kResolved:
      return "resolved";
    case ResolutionStatus::kSkipped:
      return "skipped";
    case ResolutionStatus::kError:
      return "error";
    case ResolutionStatus::kDetected:
      return "detected";
  }
  return "error";
}

size_t ResolveResult::EditCount() const {
  size_t count = 0;
  for (const auto& entry : entries) count += entry.edits.size();
  return count;
}

ResolveResult Resolve(const SuiteModel& suite,
                      const std::vector<ClassifiedStubbing>& classified,
                      const std::vector<ClassifiedStubbing>& excluded,
                      const ResolveOptions& options) {
  return Resolver(suite, options).Run(classified, excluded);
}

std::string RemoveStatements(const SuiteModel& suite,
                             const java::CompilationUnit& unit,
                             const java::MethodDecl& method,
                             const std::vector<const java::Stmt*>& statements) {
  return ApplyEditsInRange(
      unit.source, method.range.begin, method.range.end,
      RemovalEdits(unit, method, PlanRemoval(suite, method, statements)));
}

bool IsSideEffectFree(const java::Expr& expr, const SuiteModel& suite) {
  auto all = [&](const std::vector<java::ExprPtr>& exprs) {
    return std::all_of(exprs.begin(), exprs.end(), [&](const java::ExprPtr& e) {
      return IsSideEffectFree(*e, suite);
    });
  };
  switch (expr.kind) {
    case NodeKind::kLiteral:
    case NodeKind::kName:
    case NodeKind::kThis:
    case NodeKind::kClassLiteral:
      return true;
    case NodeKind::kFieldAccess:
      return IsSideEffectFree(
          *static_cast<const java::FieldAccessExpr&>(expr).object, suite);
    case NodeKind::kParen:
      return IsSideEffectFree(*static_cast<const java::ParenExpr&>(expr).inner,
                              suite);
    case NodeKind::kUnary: {
      const auto& unary = static_cast<const java::UnaryExpr&>(expr);
      return unary.op != "++" && unary.op != "--" &&
             IsSideEffectFree(*unary.operand, suite);
    }
    case NodeKind::kBinary: {
      const auto& binary = static_cast<const java::BinaryExpr&>(expr);
      return IsSideEffectFree(*binary.lhs, suite) &&
             IsSideEffectFree(*binary.rhs, suite);
    }
    case NodeKind::kConditional: {
      const auto& cond = static_cast<const java::ConditionalExpr&>(expr);
      return IsSideEffectFree(*cond.condition, suite) &&
             IsSideEffectFree(*cond.when_true, suite) &&
             IsSideEffectFree(*cond.when_false, suite);
    }
    case NodeKind::kArrayInit:
      return all(static_cast<const java::ArrayInitExpr&>(expr).elements);
    case NodeKind::kMethodCall: {
      const auto& call = static_cast<const java::MethodCallExpr&>(expr);
      bool mockito_receiver =
          !call.receiver ||
          (call.receiver->kind == NodeKind::kName &&
           static_cast<const java::NameExpr&>(*call.receiver).name == "Mockito");
      return call.name == "mock" && mockito_receiver && all(call.args);
    }
    case NodeKind::kNew: {
      const auto& creation = static_cast<const java::NewExpr&>(expr);
      for (const auto& cls : suite.classes()) {
        if (cls->decl->name == creation.type.base) return false;
      }
      return all(creation.args);
    }
    default:
      return false;
  }
}

TestKey MapMovedTest(const TestKey& test, const ResolveResult& result) {
  for (const MovedTest& moved : result.moved_tests) {
    if (moved.from == test) return TestKey{moved.to_class, test.test_name};
  }
  return test;
}

}  // namespace stubscrub
