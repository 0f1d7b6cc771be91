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

#include "stubscrub/runner.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>

#include <json.hpp>

#include "stubscrub/java/lexer.h"

namespace stubscrub {

namespace {

using java::NodeKind;

struct Instance;
struct ListObject;
struct BuilderObject;

struct EnumConstantValue {
  const ClassInfo* type = nullptr;
  int ordinal = 0;
  std::string name;
  bool operator==(const EnumConstantValue& o) const {
    return type == o.type && ordinal == o.ordinal;
  }
};

// A class used as a value, for static member access. Library classes carry
// only their name.
struct ClassRef {
  const ClassInfo* cls = nullptr;
  std::string builtin;
  bool operator==(const ClassRef&) const = default;
};

using Value =
    std::variant<std::monostate, bool, std::int64_t, double, std::string,
                 std::shared_ptr<Instance>, DoubleHandle,
                 std::shared_ptr<ListObject>, EnumConstantValue, ClassRef,
                 std::shared_ptr<BuilderObject>>;

struct Instance {
  const ClassInfo* cls = nullptr;  // null for library exception types
  std::string type_name;
  std::map<std::string, Value> fields;
};

struct ListObject {
  std::vector<Value> items;
};

struct BuilderObject {
  std::string text;
};

// Control transfer out of statements.
struct ReturnSignal {
  Value value;
};
struct BreakSignal {
  std::string label;
};
struct ContinueSignal {
  std::string label;
};
struct JavaThrow {
  std::shared_ptr<Instance> exception;
};

const std::set<std::string, std::less<>> kRuntimeExceptions = {
    "RuntimeException",         "IllegalStateException",
    "IllegalArgumentException", "NullPointerException",
    "ArithmeticException",      "UnsupportedOperationException",
    "IndexOutOfBoundsException"};

bool IsNull(const Value& v) { return std::holds_alternative<std::monostate>(v); }

std::string FormatDouble(double d) {
  if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 1e15) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed, 1);
    return std::string(buf, res.ptr);
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

std::string SimpleName(std::string_view name) {
  size_t dot = name.rfind('.');
  return std::string(dot == std::string_view::npos ? name : name.substr(dot + 1));
}

class Interpreter {
 public:
  Interpreter(const SuiteModel& model, StubShim& shim, const RunOptions& options)
      : model_(model), shim_(shim), options_(options) {}

  SuiteRunResult RunAll() {
    SuiteRunResult result;
    for (const ClassInfo* cls : model_.TestClasses()) {
      for (const auto& member : cls->decl->members) {
        if (member->kind != java::MemberKind::kMethod) continue;
        const MethodInfo* method =
            model_.InfoFor(static_cast<const java::MethodDecl&>(*member));
        if (method->role == MethodRole::kTest) {
          result.outcomes.push_back(RunTest(*cls, *method, method->decl->name, {}));
        } else if (method->role == MethodRole::kParameterizedTest) {
          std::vector<Value> values = ParameterValues(*method);
          for (size_t i = 0; i < values.size(); ++i) {
            result.outcomes.push_back(
                RunTest(*cls, *method,
                        method->decl->name + "[" + std::to_string(i + 1) + "]",
                        {values[i]}));
          }
        }
      }
    }
    return result;
  }

 private:
  struct Frame {
    const MethodInfo* method = nullptr;
    const ClassInfo* cls = nullptr;
    Value self;
    std::vector<std::map<std::string, Value>> scopes;
    int line = 0;
  };

  // --- test lifecycle ------------------------------------------------------

  std::vector<Value> ParameterValues(const MethodInfo& method) {
    std::vector<Value> values;
    const java::Annotation* source = method.decl->FindAnnotation("ValueSource");
    if (!source) return values;
    for (const auto& [key, expr] : source->args) {
      if (expr->kind == NodeKind::kArrayInit) {
        for (const auto& e : static_cast<const java::ArrayInitExpr&>(*expr).elements) {
          values.push_back(Literal(*e));
        }
      } else {
        values.push_back(Literal(*expr));
      }
    }
    return values;
  }

  Value Literal(const java::Expr& expr) {
    if (expr.kind == NodeKind::kLiteral) {
      return EvalLiteral(static_cast<const java::LiteralExpr&>(expr));
    }
    if (expr.kind == NodeKind::kUnary) {
      const auto& u = static_cast<const java::UnaryExpr&>(expr);
      Value v = Literal(*u.operand);
      if (u.op == "-") {
        if (auto* i = std::get_if<std::int64_t>(&v)) return -*i;
        if (auto* d = std::get_if<double>(&v)) return -*d;
      }
      return v;
    }
    return Value{};
  }

  std::vector<const ClassInfo*> Lineage(const ClassInfo& cls) {
    std::vector<const ClassInfo*> chain;
    for (const ClassInfo* c = &cls; c; c = SuperOf(*c)) {
      if (std::find(chain.begin(), chain.end(), c) != chain.end()) break;
      chain.push_back(c);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
  }

  // What an unstubbed call on a double returns: the zero value of the
  // declared primitive return type, an empty list for collections, null
  // otherwise or when the type is not part of the suite.
  Value DefaultAnswer(const std::string& type, const std::string& method,
                      size_t arity) {
    std::vector<const ClassInfo*> pending;
    if (const ClassInfo* cls = model_.FindClass(type)) pending.push_back(cls);
    std::set<const ClassInfo*> seen;
    while (!pending.empty()) {
      const ClassInfo* cls = pending.back();
      pending.pop_back();
      if (!seen.insert(cls).second) continue;
      if (const java::MethodDecl* decl = cls->decl->FindMethod(method, arity)) {
        const std::string& base = decl->return_type.base;
        if (base == "boolean") return false;
        if (base == "int" || base == "long" || base == "short" || base == "byte") {
          return std::int64_t{0};
        }
        if (base == "double" || base == "float") return 0.0;
        if (base == "List" || base == "Collection" || base == "Set" ||
            base == "Iterable") {
          return std::make_shared<ListObject>();
        }
        return Value{};
      }
      std::vector<std::string> parents = cls->decl->implements;
      if (!cls->decl->extends.empty()) parents.push_back(cls->decl->extends);
      for (const std::string& parent : parents) {
        if (const ClassInfo* p = model_.FindClass(parent)) pending.push_back(p);
      }
    }
    return Value{};
  }

  const ClassInfo* SuperOf(const ClassInfo& cls) {
    if (cls.decl->extends.empty()) return nullptr;
    return model_.FindClass(cls.decl->extends);
  }

  TestOutcome RunTest(const ClassInfo& cls, const MethodInfo& test,
                      std::string name, std::vector<Value> args) {
    TestOutcome outcome{cls.qualified_name, name, TestStatus::kPassed, ""};
    if (test.decl->HasAnnotation("Ignore") || test.decl->HasAnnotation("Disabled")) {
      outcome.status = TestStatus::kSkipped;
      return outcome;
    }
    steps_ = 0;
    frames_.clear();
    shim_.BeginTest(cls.qualified_name, name);
    std::string failure;
    std::shared_ptr<Instance> instance;
    std::optional<std::string> expected;
    if (const auto* annotation = test.decl->FindAnnotation("Test")) {
      if (const java::Expr* e = annotation->Arg("expected");
          e && e->kind == NodeKind::kClassLiteral) {
        expected = SimpleName(static_cast<const java::ClassLiteralExpr&>(*e).type_name);
      }
    }
    auto capture = [&](auto&& body) {
      try {
        body();
        return std::optional<std::shared_ptr<Instance>>();
      } catch (const JavaThrow& thrown) {
        return std::optional<std::shared_ptr<Instance>>(thrown.exception);
      } catch (const ReturnSignal&) {
        return std::optional<std::shared_ptr<Instance>>();
      } catch (const BreakSignal&) {
        return std::optional(MakeException("RuntimeException", "stray break"));
      } catch (const ContinueSignal&) {
        return std::optional(MakeException("RuntimeException", "stray continue"));
      } catch (const std::exception& e) {
        return std::optional(MakeException("InternalError", e.what()));
      }
    };
    auto describe = [&](const std::shared_ptr<Instance>& e) {
      std::string message = MessageOf(e);
      return message.empty() ? e->type_name : e->type_name + ": " + message;
    };
    auto thrown = capture([&] {
      instance = NewObject(cls, {});
      for (const ClassInfo* c : Lineage(cls)) {
        for (const MethodInfo* setup : model_.MethodsWithRole(*c, MethodRole::kSetup)) {
          CallMethod(*setup, instance, {});
        }
      }
      CallMethod(test, instance, args);
    });
    if (thrown) {
      if (expected && IsInstanceOf(**thrown, *expected)) {
        thrown.reset();
        expected.reset();
      } else {
        failure = describe(*thrown);
      }
    } else if (expected) {
      failure = "expected exception " + *expected;
    }
    if (instance) {
      auto lineage = Lineage(cls);
      for (auto it = lineage.rbegin(); it != lineage.rend(); ++it) {
        for (const MethodInfo* teardown :
             model_.MethodsWithRole(**it, MethodRole::kTeardown)) {
          auto teardown_thrown = capture([&] { CallMethod(*teardown, instance, {}); });
          if (teardown_thrown && failure.empty()) failure = describe(*teardown_thrown);
        }
      }
    }
    shim_.EndTest();
    frames_.clear();
    if (!failure.empty()) {
      outcome.status = TestStatus::kFailed;
      outcome.message = failure;
    }
    return outcome;
  }

  // --- errors --------------------------------------------------------------

  std::shared_ptr<Instance> MakeException(const std::string& type,
                                          const std::string& message) {
    auto e = std::make_shared<Instance>();
    e->type_name = type;
    e->fields["message"] = message;
    return e;
  }

  [[noreturn]] void Throw(const std::string& type, const std::string& message) {
    throw JavaThrow{MakeException(type, message)};
  }

  [[noreturn]] void Unsupported(const std::string& what) {
    Throw("UnsupportedOperationException", what);
  }

  std::string MessageOf(const std::shared_ptr<Instance>& e) {
    auto it = e->fields.find("message");
    if (it == e->fields.end() || IsNull(it->second)) return "";
    return ToJavaString(it->second);
  }

  bool IsInstanceOf(const Instance& object, const std::string& type) {
    if (object.cls) {
      for (const ClassInfo* c = object.cls; c; c = SuperOf(*c)) {
        if (c->decl->name == type) return true;
        for (const auto& iface : c->decl->implements) {
          if (iface == type) return true;
        }
        if (!SuperOf(*c) && !c->decl->extends.empty()) {
          return BuiltinSubtype(c->decl->extends, type);
        }
      }
      return type == "Object";
    }
    return BuiltinSubtype(object.type_name, type);
  }

  static bool BuiltinSubtype(const std::string& actual, const std::string& type) {
    if (actual == type || type == "Object" || type == "Throwable") return true;
    bool is_error = actual == "AssertionError" || actual.ends_with("Error");
    if (type == "Exception") return !is_error;
    if (type == "Error") return is_error;
    if (type == "RuntimeException") return kRuntimeExceptions.contains(actual);
    return false;
  }

  // --- values --------------------------------------------------------------

  std::string ToJavaString(const Value& v) {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return "null";
          } else if constexpr (std::is_same_v<T, bool>) {
            return x ? "true" : "false";
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            return std::to_string(x);
          } else if constexpr (std::is_same_v<T, double>) {
            return FormatDouble(x);
          } else if constexpr (std::is_same_v<T, std::string>) {
            return x;
          } else if constexpr (std::is_same_v<T, std::shared_ptr<Instance>>) {
            if (x->cls) {
              if (const MethodInfo* m = FindMethod(*x->cls, "toString", 0)) {
                return ToJavaString(CallMethod(*m, x, {}));
              }
              return x->cls->decl->name + "@" + IdentityOf(x.get());
            }
            std::string message = MessageOf(x);
            return message.empty() ? x->type_name : x->type_name + ": " + message;
          } else if constexpr (std::is_same_v<T, DoubleHandle>) {
            return "Mock for " + x->double_class() + ", hashCode: " + IdentityOf(x.get());
          } else if constexpr (std::is_same_v<T, std::shared_ptr<ListObject>>) {
            std::string out = "[";
            for (size_t i = 0; i < x->items.size(); ++i) {
              if (i) out += ", ";
              out += ToJavaString(x->items[i]);
            }
            return out + "]";
          } else if constexpr (std::is_same_v<T, EnumConstantValue>) {
            return x.name;
          } else if constexpr (std::is_same_v<T, ClassRef>) {
            return "class " + (x.cls ? x.cls->qualified_name : x.builtin);
          } else {
            return x->text;
          }
        },
        v);
  }

  std::string IdentityOf(const void* p) {
    auto [it, inserted] = identities_.try_emplace(p, identities_.size() + 1);
    return std::to_string(it->second);
  }

  bool Truthy(const Value& v) {
    if (auto* b = std::get_if<bool>(&v)) return *b;
    if (IsNull(v)) Throw("NullPointerException", "null used as boolean");
    Throw("IllegalStateException", "non-boolean condition " + ToJavaString(v));
  }

  static bool IsNumber(const Value& v) {
    return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
  }

  static double AsDouble(const Value& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    return std::get<double>(v);
  }

  std::int64_t AsInt(const Value& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
    if (auto* d = std::get_if<double>(&v)) return static_cast<std::int64_t>(*d);
    if (IsNull(v)) Throw("NullPointerException", "null used as int");
    Throw("IllegalStateException", "not a number: " + ToJavaString(v));
  }

  // Reference identity for objects, value equality for primitives and
  // strings.
  bool SameValue(const Value& a, const Value& b) {
    if (IsNumber(a) && IsNumber(b)) {
      if (std::holds_alternative<std::int64_t>(a) &&
          std::holds_alternative<std::int64_t>(b)) {
        return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
      }
      return AsDouble(a) == AsDouble(b);
    }
    return a == b;
  }

  bool JavaEquals(const Value& a, const Value& b) {
    if (IsNull(a) || IsNull(b)) return IsNull(a) && IsNull(b);
    if (auto* obj = std::get_if<std::shared_ptr<Instance>>(&a); obj && (*obj)->cls) {
      if (const MethodInfo* m = FindMethod(*(*obj)->cls, "equals", 1)) {
        return Truthy(CallMethod(*m, *obj, {b}));
      }
    }
    auto* la = std::get_if<std::shared_ptr<ListObject>>(&a);
    auto* lb = std::get_if<std::shared_ptr<ListObject>>(&b);
    if (la && lb) {
      if ((*la)->items.size() != (*lb)->items.size()) return false;
      for (size_t i = 0; i < (*la)->items.size(); ++i) {
        if (!JavaEquals((*la)->items[i], (*lb)->items[i])) return false;
      }
      return true;
    }
    return SameValue(a, b);
  }

  Value EvalLiteral(const java::LiteralExpr& lit) {
    std::string s = lit.spelling;
    switch (lit.literal) {
      case java::LiteralKind::kNull:
        return Value{};
      case java::LiteralKind::kBool:
        return s == "true";
      case java::LiteralKind::kString:
      case java::LiteralKind::kChar:
        return java::UnquoteLiteral(s);
      case java::LiteralKind::kInt: {
        std::erase(s, '_');
        if (!s.empty() && (s.back() == 'L' || s.back() == 'l')) s.pop_back();
        int base = 10;
        size_t offset = 0;
        if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
          base = 16;
          offset = 2;
        } else if (s.size() > 2 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B')) {
          base = 2;
          offset = 2;
        }
        std::int64_t value = 0;
        std::from_chars(s.data() + offset, s.data() + s.size(), value, base);
        return value;
      }
      case java::LiteralKind::kFloat: {
        std::erase(s, '_');
        if (!s.empty() && std::string_view("fFdD").find(s.back()) != std::string_view::npos) {
          s.pop_back();
        }
        return std::stod(s);
      }
    }
    return Value{};
  }

  // --- class members ---------------------------------------------------------

  const MethodInfo* FindMethod(const ClassInfo& cls, std::string_view name,
                               size_t arity) {
    for (const ClassInfo* c = &cls; c; c = SuperOf(*c)) {
      if (const java::MethodDecl* m = c->decl->FindMethod(name, arity)) {
        return model_.InfoFor(*m);
      }
    }
    return nullptr;
  }

  const ClassInfo* ResolveType(const std::string& name) {
    if (const ClassInfo* c = model_.FindClass(name)) return c;
    return model_.FindClass(SimpleName(name));
  }

  std::map<std::string, Value>& Statics(const ClassInfo& cls) {
    auto it = statics_.find(&cls);
    if (it != statics_.end()) return it->second;
    auto& table = statics_[&cls];
    for (const auto& member : cls.decl->members) {
      if (member->kind != java::MemberKind::kField || !member->HasModifier("static")) {
        continue;
      }
      for (const auto& var : static_cast<const java::FieldDecl&>(*member).vars) {
        table[var.name] = Value{};
      }
    }
    Frame frame;
    frame.cls = &cls;
    frame.scopes.emplace_back();
    frames_.push_back(std::move(frame));
    try {
      for (const auto& member : cls.decl->members) {
        if (member->kind != java::MemberKind::kField || !member->HasModifier("static")) {
          continue;
        }
        for (const auto& var : static_cast<const java::FieldDecl&>(*member).vars) {
          if (var.init) table[var.name] = Eval(*var.init);
        }
      }
    } catch (...) {
      frames_.pop_back();
      throw;
    }
    frames_.pop_back();
    return table;
  }

  Value* FindStatic(const ClassInfo& cls, const std::string& name) {
    for (const ClassInfo* c = &cls; c; c = SuperOf(*c)) {
      auto& table = Statics(*c);
      auto it = table.find(name);
      if (it != table.end()) return &it->second;
    }
    return nullptr;
  }

  std::optional<Value> EnumConstant(const ClassInfo& cls, const std::string& name) {
    const auto& constants = cls.decl->enum_constants;
    for (size_t i = 0; i < constants.size(); ++i) {
      if (constants[i].name == name) {
        return EnumConstantValue{&cls, static_cast<int>(i), name};
      }
    }
    return std::nullopt;
  }

  std::shared_ptr<Instance> NewObject(const ClassInfo& cls, std::vector<Value> args) {
    if (cls.decl->kind != java::TypeKind::kClass ||
        std::count(cls.decl->modifiers.begin(), cls.decl->modifiers.end(), "abstract")) {
      Throw("InstantiationException", "cannot instantiate " + cls.qualified_name);
    }
    auto object = std::make_shared<Instance>();
    object->cls = &cls;
    object->type_name = cls.decl->name;
    for (const ClassInfo* c : Lineage(cls)) {
      Frame frame;
      frame.cls = c;
      frame.self = object;
      frame.scopes.emplace_back();
      frames_.push_back(std::move(frame));
      try {
        for (const auto& member : c->decl->members) {
          if (member->kind != java::MemberKind::kField || member->HasModifier("static")) {
            continue;
          }
          const auto& field = static_cast<const java::FieldDecl&>(*member);
          bool make_double = std::any_of(
              model_.conventions().double_field_annotations.begin(),
              model_.conventions().double_field_annotations.end(),
              [&](const std::string& a) { return field.HasAnnotation(a); });
          for (const auto& var : field.vars) {
            object->fields[var.name] = Value{};
            if (make_double) {
              object->fields[var.name] = shim_.CreateDouble(field.type.base);
            } else if (var.init) {
              object->fields[var.name] = Eval(*var.init);
            } else {
              object->fields[var.name] = DefaultFor(field.type.text);
            }
          }
        }
      } catch (...) {
        frames_.pop_back();
        throw;
      }
      frames_.pop_back();
    }
    const java::MethodDecl* ctor = nullptr;
    bool has_ctor = false;
    for (const auto& member : cls.decl->members) {
      if (member->kind != java::MemberKind::kConstructor) continue;
      has_ctor = true;
      const auto& m = static_cast<const java::MethodDecl&>(*member);
      if (m.params.size() == args.size()) ctor = &m;
    }
    if (ctor) {
      CallMethod(*model_.InfoFor(*ctor), object, std::move(args));
    } else if (has_ctor || !args.empty()) {
      Throw("IllegalArgumentException",
            "no constructor of " + cls.decl->name + " takes " +
                std::to_string(args.size()) + " arguments");
    }
    return object;
  }

  static Value DefaultFor(const std::string& type) {
    if (type == "int" || type == "long" || type == "short" || type == "byte") {
      return std::int64_t{0};
    }
    if (type == "double" || type == "float") return 0.0;
    if (type == "boolean") return false;
    if (type == "char") return std::string(1, '\0');
    return Value{};
  }

  Value CallMethod(const MethodInfo& method, Value self, std::vector<Value> args) {
    const java::MethodDecl& decl = *method.decl;
    if (!decl.body) Throw("AbstractMethodError", decl.name);
    if (static_cast<int>(frames_.size()) >= options_.max_call_depth) {
      Throw("StackOverflowError", decl.name);
    }
    Frame frame;
    frame.method = &method;
    frame.cls = method.owner;
    frame.self = decl.HasModifier("static") ? Value{} : std::move(self);
    frame.line = decl.name_range.line;
    frame.scopes.emplace_back();
    for (size_t i = 0; i < decl.params.size() && i < args.size(); ++i) {
      frame.scopes.back()[decl.params[i].name] = std::move(args[i]);
    }
    frames_.push_back(std::move(frame));
    Value result;
    try {
      ExecBlock(*decl.body);
    } catch (ReturnSignal& r) {
      result = std::move(r.value);
    } catch (...) {
      frames_.pop_back();
      throw;
    }
    frames_.pop_back();
    return result;
  }

  Frame& Top() { return frames_.back(); }

  std::vector<StackFrame> CurrentStack() {
    std::vector<StackFrame> stack;
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      if (!it->method) continue;
      const MethodInfo& m = *it->method;
      stack.push_back(StackFrame{m.owner->unit->path, m.owner->qualified_name,
                                 m.FrameName(), it->line});
      if (m.role == MethodRole::kTest || m.role == MethodRole::kParameterizedTest ||
          m.role == MethodRole::kSetup || m.role == MethodRole::kTeardown) {
        break;
      }
    }
    return stack;
  }

  CodeLocation CurrentSite(int line) {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      if (it->cls) return CodeLocation{it->cls->unit->path, line, 0};
    }
    return CodeLocation{"", line, 0};
  }

  // --- statements -------------------------------------------------------------

  void Step() {
    if (++steps_ > options_.step_limit) {
      Throw("TimeoutError", "step limit exceeded");
    }
  }

  void ExecBlock(const java::BlockStmt& block) {
    Top().scopes.emplace_back();
    try {
      for (const auto& s : block.statements) Exec(*s);
    } catch (...) {
      Top().scopes.pop_back();
      throw;
    }
    Top().scopes.pop_back();
  }

  void Declare(const std::string& name, Value value) {
    Top().scopes.back()[name] = std::move(value);
  }

  void Exec(const java::Stmt& stmt, const std::string& label = "") {
    Step();
    Top().line = stmt.range.line;
    switch (stmt.kind) {
      case NodeKind::kBlock:
        ExecBlock(static_cast<const java::BlockStmt&>(stmt));
        return;
      case NodeKind::kEmpty:
        return;
      case NodeKind::kLocalVar: {
        const auto& s = static_cast<const java::LocalVarStmt&>(stmt);
        for (const auto& var : s.vars) {
          Declare(var.name, var.init ? Eval(*var.init) : Value{});
        }
        return;
      }
      case NodeKind::kExprStmt:
        Eval(*static_cast<const java::ExprStmt&>(stmt).expr);
        return;
      case NodeKind::kIf: {
        const auto& s = static_cast<const java::IfStmt&>(stmt);
        if (Truthy(Eval(*s.condition))) {
          ExecScoped(*s.then_branch);
        } else if (s.else_branch) {
          ExecScoped(*s.else_branch);
        }
        return;
      }
      case NodeKind::kFor:
      case NodeKind::kForEach:
      case NodeKind::kWhile:
      case NodeKind::kDoWhile:
        ExecLoop(stmt, label);
        return;
      case NodeKind::kReturn: {
        const auto& s = static_cast<const java::ReturnStmt&>(stmt);
        throw ReturnSignal{s.value ? Eval(*s.value) : Value{}};
      }
      case NodeKind::kBreak:
        throw BreakSignal{static_cast<const java::BreakStmt&>(stmt).label};
      case NodeKind::kContinue:
        throw ContinueSignal{static_cast<const java::ContinueStmt&>(stmt).label};
      case NodeKind::kThrow: {
        Value v = Eval(*static_cast<const java::ThrowStmt&>(stmt).value);
        if (auto* obj = std::get_if<std::shared_ptr<Instance>>(&v)) {
          throw JavaThrow{*obj};
        }
        Throw("NullPointerException", "throw of a non-exception value");
      }
      case NodeKind::kTry:
        ExecTry(static_cast<const java::TryStmt&>(stmt));
        return;
      case NodeKind::kSwitch:
        ExecSwitch(static_cast<const java::SwitchStmt&>(stmt));
        return;
      case NodeKind::kLabeled: {
        const auto& s = static_cast<const java::LabeledStmt&>(stmt);
        try {
          Exec(*s.body, s.label);
        } catch (const BreakSignal& b) {
          if (b.label != s.label) throw;
        }
        return;
      }
      default:
        Unsupported("statement");
    }
  }

  void ExecScoped(const java::Stmt& stmt) {
    Top().scopes.emplace_back();
    try {
      Exec(stmt);
    } catch (...) {
      Top().scopes.pop_back();
      throw;
    }
    Top().scopes.pop_back();
  }

  // Returns false when the loop must stop.
  bool RunBody(const java::Stmt& body, const std::string& label) {
    try {
      ExecScoped(body);
    } catch (const BreakSignal& b) {
      if (b.label.empty()) return false;
      throw;
    } catch (const ContinueSignal& c) {
      if (!c.label.empty() && c.label != label) throw;
    }
    return true;
  }

  void ExecLoop(const java::Stmt& stmt, const std::string& label) {
    Top().scopes.emplace_back();
    try {
      switch (stmt.kind) {
        case NodeKind::kFor: {
          const auto& s = static_cast<const java::ForStmt&>(stmt);
          for (const auto& init : s.init) Exec(*init);
          while (!s.condition || Truthy(Eval(*s.condition))) {
            if (!RunBody(*s.body, label)) break;
            for (const auto& update : s.update) Eval(*update);
            Step();
          }
          break;
        }
        case NodeKind::kForEach: {
          const auto& s = static_cast<const java::ForEachStmt&>(stmt);
          Value iterable = Eval(*s.iterable);
          auto* list = std::get_if<std::shared_ptr<ListObject>>(&iterable);
          if (!list) Throw("NullPointerException", "for-each over a non-list");
          std::vector<Value> items = (*list)->items;
          for (const Value& item : items) {
            Declare(s.name, item);
            if (!RunBody(*s.body, label)) break;
            Step();
          }
          break;
        }
        case NodeKind::kWhile: {
          const auto& s = static_cast<const java::WhileStmt&>(stmt);
          while (Truthy(Eval(*s.condition))) {
            if (!RunBody(*s.body, label)) break;
            Step();
          }
          break;
        }
        default: {
          const auto& s = static_cast<const java::DoWhileStmt&>(stmt);
          do {
            if (!RunBody(*s.body, label)) break;
            Step();
          } while (Truthy(Eval(*s.condition)));
          break;
        }
      }
    } catch (...) {
      Top().scopes.pop_back();
      throw;
    }
    Top().scopes.pop_back();
  }

  void ExecTry(const java::TryStmt& stmt) {
    auto run_finally = [&] {
      if (stmt.finally_block) ExecBlock(*stmt.finally_block);
    };
    try {
      ExecBlock(*stmt.body);
    } catch (const JavaThrow& thrown) {
      const java::CatchClause* handler = nullptr;
      for (const auto& clause : stmt.catches) {
        for (const auto& type : clause.types) {
          if (IsInstanceOf(*thrown.exception, type)) handler = &clause;
        }
        if (handler) break;
      }
      if (!handler) {
        run_finally();
        throw;
      }
      try {
        Top().scopes.emplace_back();
        Declare(handler->name, thrown.exception);
        ExecBlock(*handler->body);
        Top().scopes.pop_back();
      } catch (...) {
        Top().scopes.pop_back();
        run_finally();
        throw;
      }
    } catch (...) {
      run_finally();
      throw;
    }
    run_finally();
  }

  void ExecSwitch(const java::SwitchStmt& stmt) {
    Value selector = Eval(*stmt.selector);
    const ClassInfo* enum_type = nullptr;
    if (auto* e = std::get_if<EnumConstantValue>(&selector)) enum_type = e->type;
    if (IsNull(selector)) Throw("NullPointerException", "switch on null");
    int start = -1;
    int default_case = -1;
    for (size_t i = 0; i < stmt.cases.size() && start < 0; ++i) {
      const auto& c = stmt.cases[i];
      if (c.labels.empty()) default_case = static_cast<int>(i);
      for (const auto& label : c.labels) {
        Value v;
        if (enum_type && label->kind == NodeKind::kName) {
          v = EnumConstant(*enum_type, static_cast<const java::NameExpr&>(*label).name)
                  .value_or(Value{});
        } else {
          v = Eval(*label);
        }
        if (SameValue(v, selector)) start = static_cast<int>(i);
      }
    }
    if (start < 0) start = default_case;
    if (start < 0) return;
    Top().scopes.emplace_back();
    try {
      for (size_t i = start; i < stmt.cases.size(); ++i) {
        for (const auto& s : stmt.cases[i].body) Exec(*s);
      }
    } catch (const BreakSignal& b) {
      Top().scopes.pop_back();
      if (!b.label.empty()) throw;
      return;
    } catch (...) {
      Top().scopes.pop_back();
      throw;
    }
    Top().scopes.pop_back();
  }

  // --- names and assignment ---------------------------------------------------

  Value* FindLocal(const std::string& name) {
    auto& scopes = Top().scopes;
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  Value* FindField(const std::string& name) {
    Frame& frame = Top();
    if (auto* self = std::get_if<std::shared_ptr<Instance>>(&frame.self)) {
      auto it = (*self)->fields.find(name);
      if (it != (*self)->fields.end()) return &it->second;
    }
    if (frame.cls) return FindStatic(*frame.cls, name);
    return nullptr;
  }

  std::optional<Value> ResolveTypeName(const std::string& name) {
    if (const ClassInfo* c = ResolveType(name)) return ClassRef{c, ""};
    static const std::set<std::string, std::less<>> kLibraryClasses = {
        "Collections", "Arrays", "List", "Math", "String", "Integer", "Long",
        "Double", "Boolean", "Objects", "System", "Assert", "Assertions",
        "Mockito"};
    if (kLibraryClasses.contains(name)) return ClassRef{nullptr, name};
    return std::nullopt;
  }

  Value EvalName(const std::string& name) {
    if (Value* v = FindLocal(name)) return *v;
    if (Value* v = FindField(name)) return *v;
    if (auto type = ResolveTypeName(name)) return *type;
    Throw("NoSuchFieldError", name);
  }

  Value& LValue(const java::Expr& target) {
    if (target.kind == NodeKind::kName) {
      const std::string& name = static_cast<const java::NameExpr&>(target).name;
      if (Value* v = FindLocal(name)) return *v;
      if (Value* v = FindField(name)) return *v;
      Throw("NoSuchFieldError", name);
    }
    if (target.kind == NodeKind::kFieldAccess) {
      const auto& access = static_cast<const java::FieldAccessExpr&>(target);
      Value object = Eval(*access.object);
      if (auto* obj = std::get_if<std::shared_ptr<Instance>>(&object)) {
        auto it = (*obj)->fields.find(access.name);
        if (it != (*obj)->fields.end()) return it->second;
        Throw("NoSuchFieldError", access.name);
      }
      if (auto* ref = std::get_if<ClassRef>(&object); ref && ref->cls) {
        if (Value* v = FindStatic(*ref->cls, access.name)) return *v;
      }
      if (IsNull(object)) Throw("NullPointerException", "field " + access.name);
      Throw("NoSuchFieldError", access.name);
    }
    if (target.kind == NodeKind::kParen) {
      return LValue(*static_cast<const java::ParenExpr&>(target).inner);
    }
    Unsupported("assignment target");
  }

  Value Arithmetic(const std::string& op, const Value& a, const Value& b) {
    if (op == "+" && (std::holds_alternative<std::string>(a) ||
                      std::holds_alternative<std::string>(b))) {
      return ToJavaString(a) + ToJavaString(b);
    }
    if (std::holds_alternative<bool>(a) && std::holds_alternative<bool>(b)) {
      bool x = std::get<bool>(a), y = std::get<bool>(b);
      if (op == "&") return x && y;
      if (op == "|") return x || y;
      if (op == "^") return x != y;
    }
    if (!IsNumber(a) || !IsNumber(b)) {
      if (IsNull(a) || IsNull(b)) Throw("NullPointerException", "operator " + op);
      Throw("IllegalStateException", "operator " + op + " on non-numbers");
    }
    bool integral = std::holds_alternative<std::int64_t>(a) &&
                    std::holds_alternative<std::int64_t>(b);
    if (integral) {
      std::int64_t x = std::get<std::int64_t>(a), y = std::get<std::int64_t>(b);
      if (op == "+") return x + y;
      if (op == "-") return x - y;
      if (op == "*") return x * y;
      if (op == "/" || op == "%") {
        if (y == 0) Throw("ArithmeticException", "/ by zero");
        return op == "/" ? x / y : x % y;
      }
      if (op == "&") return x & y;
      if (op == "|") return x | y;
      if (op == "^") return x ^ y;
      if (op == "<") return x < y;
      if (op == ">") return x > y;
      if (op == "<=") return x <= y;
      if (op == ">=") return x >= y;
    } else {
      double x = AsDouble(a), y = AsDouble(b);
      if (op == "+") return x + y;
      if (op == "-") return x - y;
      if (op == "*") return x * y;
      if (op == "/") return x / y;
      if (op == "%") return std::fmod(x, y);
      if (op == "<") return x < y;
      if (op == ">") return x > y;
      if (op == "<=") return x <= y;
      if (op == ">=") return x >= y;
    }
    Unsupported("operator " + op);
  }

  // --- expressions ------------------------------------------------------------

  Value Eval(const java::Expr& expr) {
    switch (expr.kind) {
      case NodeKind::kLiteral:
        return EvalLiteral(static_cast<const java::LiteralExpr&>(expr));
      case NodeKind::kName:
        return EvalName(static_cast<const java::NameExpr&>(expr).name);
      case NodeKind::kThis:
        return Top().self;
      case NodeKind::kParen:
        return Eval(*static_cast<const java::ParenExpr&>(expr).inner);
      case NodeKind::kClassLiteral: {
        const auto& lit = static_cast<const java::ClassLiteralExpr&>(expr);
        if (const ClassInfo* c = ResolveType(lit.type_name)) return ClassRef{c, ""};
        return ClassRef{nullptr, SimpleName(lit.type_name)};
      }
      case NodeKind::kFieldAccess:
        return EvalFieldAccess(static_cast<const java::FieldAccessExpr&>(expr));
      case NodeKind::kMethodCall:
        return EvalCall(static_cast<const java::MethodCallExpr&>(expr));
      case NodeKind::kNew:
        return EvalNew(static_cast<const java::NewExpr&>(expr));
      case NodeKind::kUnary:
        return EvalUnary(static_cast<const java::UnaryExpr&>(expr));
      case NodeKind::kBinary:
        return EvalBinary(static_cast<const java::BinaryExpr&>(expr));
      case NodeKind::kAssign: {
        const auto& a = static_cast<const java::AssignExpr&>(expr);
        Value value = Eval(*a.value);
        Value& slot = LValue(*a.target);
        if (a.op == "=") {
          slot = std::move(value);
        } else {
          slot = Arithmetic(a.op.substr(0, a.op.size() - 1), slot, value);
        }
        return slot;
      }
      case NodeKind::kConditional: {
        const auto& c = static_cast<const java::ConditionalExpr&>(expr);
        return Truthy(Eval(*c.condition)) ? Eval(*c.when_true) : Eval(*c.when_false);
      }
      case NodeKind::kArrayInit: {
        auto list = std::make_shared<ListObject>();
        for (const auto& e : static_cast<const java::ArrayInitExpr&>(expr).elements) {
          list->items.push_back(Eval(*e));
        }
        return list;
      }
      default:
        Unsupported("expression");
    }
  }

  Value EvalFieldAccess(const java::FieldAccessExpr& access) {
    Value object;
    if (access.object->kind == NodeKind::kName) {
      const auto& name = static_cast<const java::NameExpr&>(*access.object).name;
      if (name == "System" && !FindLocal(name) && !FindField(name)) {
        return ClassRef{nullptr, "System." + access.name};
      }
    }
    object = Eval(*access.object);
    if (auto* obj = std::get_if<std::shared_ptr<Instance>>(&object)) {
      auto it = (*obj)->fields.find(access.name);
      if (it != (*obj)->fields.end()) return it->second;
      Throw("NoSuchFieldError", access.name);
    }
    if (auto* ref = std::get_if<ClassRef>(&object)) {
      if (ref->cls) {
        if (auto constant = EnumConstant(*ref->cls, access.name)) return *constant;
        if (Value* v = FindStatic(*ref->cls, access.name)) return *v;
      } else if (ref->builtin == "Integer" && access.name == "MAX_VALUE") {
        return std::int64_t{2147483647};
      } else if (ref->builtin == "Integer" && access.name == "MIN_VALUE") {
        return std::int64_t{-2147483648LL};
      }
      Throw("NoSuchFieldError", access.name);
    }
    if (IsNull(object)) Throw("NullPointerException", "field " + access.name);
    Throw("NoSuchFieldError", access.name);
  }

  Value EvalUnary(const java::UnaryExpr& u) {
    if (u.op == "++" || u.op == "--") {
      Value& slot = LValue(*u.operand);
      Value before = slot;
      slot = Arithmetic(u.op == "++" ? "+" : "-", slot, std::int64_t{1});
      return u.postfix ? before : slot;
    }
    Value v = Eval(*u.operand);
    if (u.op == "!") return !Truthy(v);
    if (u.op == "-") {
      if (auto* i = std::get_if<std::int64_t>(&v)) return -*i;
      if (auto* d = std::get_if<double>(&v)) return -*d;
    }
    if (u.op == "+") return v;
    if (u.op == "~") return ~AsInt(v);
    Throw("IllegalStateException", "bad operand for " + u.op);
  }

  Value EvalBinary(const java::BinaryExpr& b) {
    if (b.op == "&&") return Truthy(Eval(*b.lhs)) && Truthy(Eval(*b.rhs));
    if (b.op == "||") return Truthy(Eval(*b.lhs)) || Truthy(Eval(*b.rhs));
    Value lhs = Eval(*b.lhs);
    if (b.op == "instanceof") {
      const std::string& type = static_cast<const java::NameExpr&>(*b.rhs).name;
      if (auto* obj = std::get_if<std::shared_ptr<Instance>>(&lhs)) {
        return IsInstanceOf(**obj, type);
      }
      if (auto* d = std::get_if<DoubleHandle>(&lhs)) return (*d)->double_class() == type;
      if (std::holds_alternative<std::string>(lhs)) return type == "String" || type == "Object";
      if (std::holds_alternative<std::shared_ptr<ListObject>>(lhs)) {
        return type == "List" || type == "Collection" || type == "Object";
      }
      return !IsNull(lhs) && type == "Object";
    }
    Value rhs = Eval(*b.rhs);
    if (b.op == "==") return SameValue(lhs, rhs);
    if (b.op == "!=") return !SameValue(lhs, rhs);
    return Arithmetic(b.op, lhs, rhs);
  }

  Value EvalNew(const java::NewExpr& expr) {
    Top().line = expr.range.line;
    std::vector<Value> args;
    for (const auto& a : expr.args) args.push_back(Eval(*a));
    Top().line = expr.range.line;
    const std::string& type = expr.type.base;
    if (const ClassInfo* cls = ResolveType(type)) return NewObject(*cls, std::move(args));
    if (type == "ArrayList" || type == "LinkedList") {
      auto list = std::make_shared<ListObject>();
      if (!args.empty()) {
        if (auto* src = std::get_if<std::shared_ptr<ListObject>>(&args[0])) {
          list->items = (*src)->items;
        }
      }
      return list;
    }
    if (type == "StringBuilder") {
      auto builder = std::make_shared<BuilderObject>();
      if (!args.empty()) builder->text = ToJavaString(args[0]);
      return builder;
    }
    if (type == "Object") {
      auto object = std::make_shared<Instance>();
      object->type_name = "Object";
      return object;
    }
    if (type.ends_with("Exception") || type.ends_with("Error") || type == "Throwable") {
      auto e = MakeException(type, "");
      e->fields["message"] = args.empty() ? Value{} : Value(ToJavaString(args[0]));
      return e;
    }
    Throw("NoClassDefFoundError", type);
  }

  std::vector<Value> EvalArgs(const java::MethodCallExpr& call) {
    std::vector<Value> args;
    for (const auto& a : call.args) args.push_back(Eval(*a));
    return args;
  }

  bool IsVariable(const std::string& name) {
    return FindLocal(name) || FindField(name);
  }

  Value EvalCall(const java::MethodCallExpr& call) {
    int line = call.name_range.line;
    if (IsStubbingDefinition(call)) return DefineStubbing(call);
    if (!call.receiver) {
      Top().line = line;
      if (Top().cls) {
        if (const MethodInfo* m = FindMethod(*Top().cls, call.name, call.args.size())) {
          std::vector<Value> args = EvalArgs(call);
          Top().line = line;
          return CallMethod(*m, Top().self, std::move(args));
        }
      }
      std::vector<Value> args = EvalArgs(call);
      Top().line = line;
      if (std::holds_alternative<EnumConstantValue>(Top().self)) {
        return CallOn(Top().self, call.name, std::move(args), line);
      }
      return CallLibraryStatic("", call.name, args);
    }
    if (call.receiver->kind == NodeKind::kName) {
      const auto& name = static_cast<const java::NameExpr&>(*call.receiver).name;
      if (!IsVariable(name)) {
        if (auto type = ResolveTypeName(name)) {
          std::vector<Value> args = EvalArgs(call);
          Top().line = line;
          return CallStatic(std::get<ClassRef>(*type), call.name, std::move(args));
        }
      }
    }
    Value receiver = Eval(*call.receiver);
    std::vector<Value> args = EvalArgs(call);
    Top().line = line;
    return CallOn(receiver, call.name, std::move(args), line);
  }

  Value CallStatic(const ClassRef& type, const std::string& name, std::vector<Value> args) {
    if (type.cls) {
      if (type.cls->decl->kind == java::TypeKind::kEnum) {
        if (name == "values" && args.empty()) {
          auto list = std::make_shared<ListObject>();
          for (const auto& c : type.cls->decl->enum_constants) {
            list->items.push_back(*EnumConstant(*type.cls, c.name));
          }
          return list;
        }
        if (name == "valueOf" && args.size() == 1) {
          if (auto c = EnumConstant(*type.cls, ToJavaString(args[0]))) return *c;
          Throw("IllegalArgumentException", "no enum constant " + ToJavaString(args[0]));
        }
      }
      const MethodInfo* m = FindMethod(*type.cls, name, args.size());
      if (!m) Throw("NoSuchMethodError", type.cls->decl->name + "." + name);
      return CallMethod(*m, Value{}, std::move(args));
    }
    return CallLibraryStatic(type.builtin, name, args);
  }

  Value CallLibraryStatic(const std::string& type, const std::string& name,
                          const std::vector<Value>& args) {
    bool assertions = type.empty() || type == "Assert" || type == "Assertions";
    if (assertions && name.starts_with("assert")) return Assert(name, args);
    if (assertions && name == "fail") {
      Throw("AssertionError", args.empty() ? "" : ToJavaString(args.back()));
    }
    if ((type.empty() || type == "Mockito") && name == "mock" && args.size() == 1) {
      const auto* ref = std::get_if<ClassRef>(&args[0]);
      if (!ref) Throw("IllegalArgumentException", "mock() needs a class literal");
      return shim_.CreateDouble(ref->cls ? ref->cls->decl->name : ref->builtin);
    }
    if ((type.empty() || type == "Mockito") && name == "when") {
      Throw("IllegalStateException", "when() without thenReturn()");
    }
    auto list_of = [&](std::vector<Value> items) {
      auto list = std::make_shared<ListObject>();
      list->items = std::move(items);
      return Value(list);
    };
    if (type == "Collections") {
      if (name == "singletonList" && args.size() == 1) return list_of(args);
      if (name == "emptyList" && args.empty()) return list_of({});
      if ((name == "unmodifiableList" || name == "reverse") && args.size() == 1) {
        auto* list = std::get_if<std::shared_ptr<ListObject>>(&args[0]);
        if (!list) Throw("NullPointerException", "Collections." + name);
        if (name == "reverse") {
          std::reverse((*list)->items.begin(), (*list)->items.end());
          return Value{};
        }
        return *list;
      }
    }
    if ((type == "Arrays" && name == "asList") || (type == "List" && name == "of")) {
      return list_of(args);
    }
    if (type == "Math" && args.size() == 2 && (name == "max" || name == "min")) {
      bool less = AsDouble(args[0]) < AsDouble(args[1]);
      return (name == "max") != less ? args[0] : args[1];
    }
    if (type == "Math" && name == "abs" && args.size() == 1) {
      if (auto* i = std::get_if<std::int64_t>(&args[0])) return *i < 0 ? -*i : *i;
      return std::fabs(AsDouble(args[0]));
    }
    if (type == "String" && name == "valueOf" && args.size() == 1) {
      return ToJavaString(args[0]);
    }
    if ((type == "Integer" || type == "Long") && args.size() == 1) {
      if (name == "parseInt" || name == "parseLong" ||
          (name == "valueOf" && std::holds_alternative<std::string>(args[0]))) {
        try {
          return static_cast<std::int64_t>(std::stoll(ToJavaString(args[0])));
        } catch (const std::exception&) {
          Throw("NumberFormatException", ToJavaString(args[0]));
        }
      }
      if (name == "valueOf") return AsInt(args[0]);
      if (name == "toString") return ToJavaString(args[0]);
    }
    if (type == "Objects") {
      if (name == "equals" && args.size() == 2) return JavaEquals(args[0], args[1]);
      if (name == "isNull" && args.size() == 1) return IsNull(args[0]);
      if (name == "nonNull" && args.size() == 1) return !IsNull(args[0]);
    }
    if (type == "System.out" || type == "System.err") {
      if (name == "println" || name == "print") return Value{};
    }
    Throw("NoSuchMethodError", (type.empty() ? "" : type + ".") + name);
  }

  Value Assert(const std::string& name, const std::vector<Value>& args) {
    auto fail = [&](const std::string& detail, size_t expected_arity) {
      std::string message;
      if (args.size() > expected_arity) message = ToJavaString(args[0]) + " ";
      Throw("AssertionError", message + detail);
    };
    auto arg = [&](size_t expected_arity, size_t i) -> const Value& {
      return args[i + (args.size() > expected_arity ? 1 : 0)];
    };
    if ((name == "assertEquals" || name == "assertNotEquals") &&
        (args.size() == 2 || args.size() == 3)) {
      const Value& expected = arg(2, 0);
      const Value& actual = arg(2, 1);
      bool equal = JavaEquals(expected, actual);
      if (name == "assertEquals" && !equal) {
        fail("expected:<" + ToJavaString(expected) + "> but was:<" +
                 ToJavaString(actual) + ">",
             2);
      }
      if (name == "assertNotEquals" && equal) {
        fail("values should differ: " + ToJavaString(actual), 2);
      }
      return Value{};
    }
    if ((name == "assertTrue" || name == "assertFalse") &&
        (args.size() == 1 || args.size() == 2)) {
      bool want = name == "assertTrue";
      if (Truthy(arg(1, 0)) != want) fail(want ? "expected true" : "expected false", 1);
      return Value{};
    }
    if ((name == "assertNull" || name == "assertNotNull") &&
        (args.size() == 1 || args.size() == 2)) {
      bool want_null = name == "assertNull";
      if (IsNull(arg(1, 0)) != want_null) {
        fail(want_null ? "expected null but was:<" + ToJavaString(arg(1, 0)) + ">"
                       : "expected non-null",
             1);
      }
      return Value{};
    }
    if ((name == "assertSame" || name == "assertNotSame") &&
        (args.size() == 2 || args.size() == 3)) {
      bool same = SameValue(arg(2, 0), arg(2, 1));
      if (same != (name == "assertSame")) fail(name + " failed", 2);
      return Value{};
    }
    Throw("NoSuchMethodError", name);
  }

  Value CallOn(Value& receiver, const std::string& name, std::vector<Value> args,
               int line) {
    if (IsNull(receiver)) {
      Throw("NullPointerException", "cannot invoke " + name + "() on null");
    }
    if (auto* d = std::get_if<DoubleHandle>(&receiver)) {
      if (name == "equals" && args.size() == 1) return SameValue(receiver, args[0]);
      if (name == "toString" && args.empty()) return ToJavaString(receiver);
      if (name == "hashCode" && args.empty()) {
        return static_cast<std::int64_t>(std::stoll(IdentityOf(d->get())));
      }
      std::any result = shim_.Dispatch(**d, name, CurrentSite(line));
      if (!result.has_value()) return DefaultAnswer((*d)->double_class(), name, args.size());
      return std::any_cast<Value>(result);
    }
    if (auto* obj = std::get_if<std::shared_ptr<Instance>>(&receiver)) {
      if ((*obj)->cls) {
        if (const MethodInfo* m = FindMethod(*(*obj)->cls, name, args.size())) {
          return CallMethod(*m, *obj, std::move(args));
        }
      } else if (name == "getMessage" && args.empty()) {
        return (*obj)->fields["message"];
      }
      if (name == "equals" && args.size() == 1) return SameValue(receiver, args[0]);
      if (name == "toString" && args.empty()) return ToJavaString(receiver);
      if (name == "hashCode" && args.empty()) {
        return static_cast<std::int64_t>(std::stoll(IdentityOf(obj->get())));
      }
      Throw("NoSuchMethodError", (*obj)->type_name + "." + name);
    }
    if (auto* s = std::get_if<std::string>(&receiver)) return StringMethod(*s, name, args);
    if (auto* list = std::get_if<std::shared_ptr<ListObject>>(&receiver)) {
      return ListMethod(**list, name, args);
    }
    if (auto* e = std::get_if<EnumConstantValue>(&receiver)) {
      if (name == "name" || name == "toString") return e->name;
      if (name == "ordinal") return std::int64_t{e->ordinal};
      if (name == "equals" && args.size() == 1) return SameValue(receiver, args[0]);
      if (name == "compareTo" && args.size() == 1) {
        const auto* other = std::get_if<EnumConstantValue>(&args[0]);
        if (!other) Throw("NullPointerException", "compareTo");
        return std::int64_t{e->ordinal - other->ordinal};
      }
      if (const MethodInfo* m = FindMethod(*e->type, name, args.size())) {
        return CallMethod(*m, receiver, std::move(args));
      }
    }
    if (auto* builder = std::get_if<std::shared_ptr<BuilderObject>>(&receiver)) {
      if (name == "append" && args.size() == 1) {
        (*builder)->text += ToJavaString(args[0]);
        return receiver;
      }
      if (name == "toString") return (*builder)->text;
      if (name == "length") return static_cast<std::int64_t>((*builder)->text.size());
    }
    if (auto* ref = std::get_if<ClassRef>(&receiver)) return CallStatic(*ref, name, std::move(args));
    if (name == "equals" && args.size() == 1) return JavaEquals(receiver, args[0]);
    if (name == "toString" && args.empty()) return ToJavaString(receiver);
    if (name == "compareTo" && args.size() == 1 && IsNumber(receiver)) {
      double a = AsDouble(receiver), b = AsDouble(args[0]);
      return std::int64_t{a < b ? -1 : (a > b ? 1 : 0)};
    }
    if ((name == "intValue" || name == "longValue") && IsNumber(receiver)) {
      return AsInt(receiver);
    }
    if (name == "booleanValue" && std::holds_alternative<bool>(receiver)) return receiver;
    Throw("NoSuchMethodError", name);
  }

  Value StringMethod(const std::string& s, const std::string& name,
                     const std::vector<Value>& args) {
    auto str_arg = [&](size_t i) {
      if (IsNull(args[i])) Throw("NullPointerException", "String." + name);
      return ToJavaString(args[i]);
    };
    auto index = [&](std::int64_t i) {
      if (i < 0 || i > static_cast<std::int64_t>(s.size())) {
        Throw("StringIndexOutOfBoundsException", std::to_string(i));
      }
      return static_cast<size_t>(i);
    };
    if (args.empty()) {
      if (name == "length") return static_cast<std::int64_t>(s.size());
      if (name == "isEmpty") return s.empty();
      if (name == "toString" || name == "intern") return s;
      if (name == "trim") {
        size_t b = s.find_first_not_of(" \t\n\r");
        size_t e = s.find_last_not_of(" \t\n\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      }
      if (name == "toUpperCase" || name == "toLowerCase") {
        std::string out = s;
        for (char& c : out) {
          c = name == "toUpperCase" ? static_cast<char>(std::toupper(c))
                                    : static_cast<char>(std::tolower(c));
        }
        return out;
      }
    }
    if (args.size() == 1) {
      if (name == "equals") {
        auto* o = std::get_if<std::string>(&args[0]);
        return o && *o == s;
      }
      if (name == "equalsIgnoreCase") {
        auto* o = std::get_if<std::string>(&args[0]);
        if (!o || o->size() != s.size()) return false;
        for (size_t i = 0; i < s.size(); ++i) {
          if (std::tolower(s[i]) != std::tolower((*o)[i])) return false;
        }
        return true;
      }
      if (name == "contains") return s.find(str_arg(0)) != std::string::npos;
      if (name == "startsWith") return s.starts_with(str_arg(0));
      if (name == "endsWith") return s.ends_with(str_arg(0));
      if (name == "indexOf") {
        size_t p = s.find(str_arg(0));
        return p == std::string::npos ? std::int64_t{-1} : static_cast<std::int64_t>(p);
      }
      if (name == "concat") return s + str_arg(0);
      if (name == "compareTo") {
        int c = s.compare(str_arg(0));
        return std::int64_t{c < 0 ? -1 : (c > 0 ? 1 : 0)};
      }
      if (name == "charAt") {
        size_t i = index(AsInt(args[0]));
        if (i >= s.size()) Throw("StringIndexOutOfBoundsException", std::to_string(i));
        return std::string(1, s[i]);
      }
      if (name == "substring") return s.substr(index(AsInt(args[0])));
    }
    if (args.size() == 2) {
      if (name == "substring") {
        size_t b = index(AsInt(args[0]));
        size_t e = index(AsInt(args[1]));
        if (e < b) Throw("StringIndexOutOfBoundsException", std::to_string(e));
        return s.substr(b, e - b);
      }
      if (name == "replace") {
        std::string from = str_arg(0), to = str_arg(1), out;
        if (from.empty()) return s;
        size_t pos = 0;
        for (size_t hit; (hit = s.find(from, pos)) != std::string::npos;
             pos = hit + from.size()) {
          out += s.substr(pos, hit - pos) + to;
        }
        return out + s.substr(pos);
      }
    }
    Throw("NoSuchMethodError", "String." + name);
  }

  Value ListMethod(ListObject& list, const std::string& name,
                   const std::vector<Value>& args) {
    auto checked = [&](const Value& v) {
      std::int64_t i = AsInt(v);
      if (i < 0 || i >= static_cast<std::int64_t>(list.items.size())) {
        Throw("IndexOutOfBoundsException", "index " + std::to_string(i));
      }
      return static_cast<size_t>(i);
    };
    if (name == "size" && args.empty()) return static_cast<std::int64_t>(list.items.size());
    if (name == "isEmpty" && args.empty()) return list.items.empty();
    if (name == "clear" && args.empty()) {
      list.items.clear();
      return Value{};
    }
    if (name == "add" && args.size() == 1) {
      list.items.push_back(args[0]);
      return true;
    }
    if (name == "add" && args.size() == 2) {
      std::int64_t i = AsInt(args[0]);
      if (i < 0 || i > static_cast<std::int64_t>(list.items.size())) {
        Throw("IndexOutOfBoundsException", "index " + std::to_string(i));
      }
      list.items.insert(list.items.begin() + i, args[1]);
      return Value{};
    }
    if (name == "addAll" && args.size() == 1) {
      auto* other = std::get_if<std::shared_ptr<ListObject>>(&args[0]);
      if (!other) Throw("NullPointerException", "addAll");
      std::vector<Value> items = (*other)->items;
      list.items.insert(list.items.end(), items.begin(), items.end());
      return !items.empty();
    }
    if (name == "get" && args.size() == 1) return list.items[checked(args[0])];
    if (name == "set" && args.size() == 2) {
      size_t i = checked(args[0]);
      Value old = list.items[i];
      list.items[i] = args[1];
      return old;
    }
    if (name == "remove" && args.size() == 1 && std::holds_alternative<std::int64_t>(args[0])) {
      size_t i = checked(args[0]);
      Value old = list.items[i];
      list.items.erase(list.items.begin() + i);
      return old;
    }
    if ((name == "contains" || name == "indexOf") && args.size() == 1) {
      for (size_t i = 0; i < list.items.size(); ++i) {
        if (JavaEquals(list.items[i], args[0])) {
          return name == "contains" ? Value(true) : Value(static_cast<std::int64_t>(i));
        }
      }
      return name == "contains" ? Value(false) : Value(std::int64_t{-1});
    }
    if (name == "equals" && args.size() == 1) {
      return JavaEquals(std::make_shared<ListObject>(list), args[0]);
    }
    Throw("NoSuchMethodError", "List." + name);
  }

  // `when(d.m(...)).thenReturn(v)`: the inner call names the stubbed method
  // and is not dispatched.
  Value DefineStubbing(const java::MethodCallExpr& then_return) {
    const auto& when = static_cast<const java::MethodCallExpr&>(*then_return.receiver);
    const auto& stubbed = static_cast<const java::MethodCallExpr&>(*when.args[0]);
    const StubbingSite* site = model_.SiteForThenReturn(then_return);
    if (!site) Throw("IllegalStateException", "unindexed stubbing definition");
    if (!stubbed.receiver) {
      Throw("IllegalStateException", "when() needs a call on a test double");
    }
    Value target = Eval(*stubbed.receiver);
    EvalArgs(stubbed);
    auto* double_object = std::get_if<DoubleHandle>(&target);
    if (!double_object) {
      Throw("IllegalStateException", "when() needs a call on a test double, got " +
                                         ToJavaString(target));
    }
    Value value = Eval(*then_return.args[0]);
    Top().line = site->location.line;
    std::vector<StackFrame> stack = CurrentStack();
    if (stack.empty() || stack.front().line != site->location.line) {
      Throw("IllegalStateException", "stubbing defined outside a test method");
    }
    shim_.DefineStubbing(**double_object, stubbed.name, std::any(value), site->location,
                         std::move(stack));
    return Value{};
  }

  const SuiteModel& model_;
  StubShim& shim_;
  RunOptions options_;
  std::vector<Frame> frames_;
  std::map<const ClassInfo*, std::map<std::string, Value>> statics_;
  std::map<const void*, size_t> identities_;
  std::int64_t steps_ = 0;
};

}  // namespace

bool SuiteRunResult::AllPassed() const {
  return std::none_of(outcomes.begin(), outcomes.end(), [](const TestOutcome& o) {
    return o.status == TestStatus::kFailed;
  });
}

int SuiteRunResult::Count(TestStatus status) const {
  return static_cast<int>(std::count_if(outcomes.begin(), outcomes.end(),
                                        [&](const TestOutcome& o) { return o.status == status; }));
}

SuiteRunResult RunSuite(const SuiteModel& model, StubShim& shim, const RunOptions& options) {
  return Interpreter(model, shim, options).RunAll();
}

std::string_view ToString(TestStatus status) {
  switch (status) {
    case TestStatus::kPassed:
      return "passed";
    case TestStatus::kFailed:
      return "failed";
    case TestStatus::kSkipped:
      return "skipped";
  }
  return "failed";
}

std::string RunResultToJson(const SuiteRunResult& result) {
  nlohmann::ordered_json tests = nlohmann::ordered_json::array();
  for (const auto& o : result.outcomes) {
    tests.push_back({{"class", o.test_class},
                     {"name", o.test_name},
                     {"status", ToString(o.status)},
                     {"message", o.message}});
  }
  nlohmann::ordered_json doc = {{"tests", tests}};
  return doc.dump(2) + "\n";
}

SuiteRunResult RunResultFromJson(std::string_view text) {
  SuiteRunResult result;
  try {
    auto doc = nlohmann::json::parse(text);
    for (const auto& t : doc.at("tests")) {
      TestOutcome o;
      o.test_class = t.at("class").get<std::string>();
      o.test_name = t.at("name").get<std::string>();
      std::string status = t.at("status").get<std::string>();
      if (status == "passed") {
        o.status = TestStatus::kPassed;
      } else if (status == "failed") {
        o.status = TestStatus::kFailed;
      } else if (status == "skipped") {
        o.status = TestStatus::kSkipped;
      } else {
        throw std::runtime_error("unknown test status " + status);
      }
      o.message = t.value("message", "");
      result.outcomes.push_back(std::move(o));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed run results: ") + e.what());
  }
  return result;
}

}  // namespace stubscrub
