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

#include <set>
#include <string>
#include <vector>

#include "stubscrub/java/lexer.h"

namespace stubscrub {

namespace {

using java::NodeKind;

bool IsLogical(const java::Expr& expr) {
  if (expr.kind != NodeKind::kBinary) return false;
  const auto& op = static_cast<const java::BinaryExpr&>(expr).op;
  return op == "&&" || op == "||";
}

const java::Expr& StripParens(const java::Expr& expr) {
  const java::Expr* e = &expr;
  while (e->kind == NodeKind::kParen) {
    e = static_cast<const java::ParenExpr&>(*e).inner.get();
  }
  return *e;
}

class Scorer {
 public:
  explicit Scorer(const java::MethodDecl& method) : method_(method) {}

  int Score() {
    if (method_.body) Stmt(*method_.body, 0);
    if (recursive_) ++score_;
    return score_;
  }

 private:
  // Operators of a chain of && and || in source order, looking through
  // parentheses. Operands that are not logical end the chain and are
  // scored on their own.
  void Flatten(const java::Expr& expr, std::vector<std::string>& ops,
               std::vector<const java::Expr*>& leaves) {
    const java::Expr& e = StripParens(expr);
    if (IsLogical(e)) {
      const auto& bin = static_cast<const java::BinaryExpr&>(e);
      Flatten(*bin.lhs, ops, leaves);
      ops.push_back(bin.op);
      Flatten(*bin.rhs, ops, leaves);
    } else {
      leaves.push_back(&e);
    }
  }

  void Expr(const java::Expr& expr, int nesting) {
    switch (expr.kind) {
      case NodeKind::kBinary: {
        const auto& bin = static_cast<const java::BinaryExpr&>(expr);
        if (!IsLogical(expr)) {
          Expr(*bin.lhs, nesting);
          Expr(*bin.rhs, nesting);
          return;
        }
        std::vector<std::string> ops;
        std::vector<const java::Expr*> leaves;
        Flatten(expr, ops, leaves);
        for (size_t i = 0; i < ops.size(); ++i) {
          if (i == 0 || ops[i] != ops[i - 1]) ++score_;
        }
        for (const java::Expr* leaf : leaves) Expr(*leaf, nesting);
        return;
      }
      case NodeKind::kConditional: {
        const auto& cond = static_cast<const java::ConditionalExpr&>(expr);
        score_ += 1 + nesting;
        Expr(*cond.condition, nesting);
        Expr(*cond.when_true, nesting + 1);
        Expr(*cond.when_false, nesting + 1);
        return;
      }
      case NodeKind::kMethodCall: {
        const auto& call = static_cast<const java::MethodCallExpr&>(expr);
        bool own_receiver =
            !call.receiver || call.receiver->kind == NodeKind::kThis;
        if (own_receiver && call.name == method_.name &&
            call.args.size() == method_.params.size() &&
            method_.kind == java::MemberKind::kMethod) {
          recursive_ = true;
        }
        if (call.receiver) Expr(*call.receiver, nesting);
        for (const auto& arg : call.args) Expr(*arg, nesting);
        return;
      }
      case NodeKind::kNew:
        for (const auto& arg : static_cast<const java::NewExpr&>(expr).args) {
          Expr(*arg, nesting);
        }
        return;
      case NodeKind::kFieldAccess:
        Expr(*static_cast<const java::FieldAccessExpr&>(expr).object, nesting);
        return;
      case NodeKind::kUnary:
        Expr(*static_cast<const java::UnaryExpr&>(expr).operand, nesting);
        return;
      case NodeKind::kAssign: {
        const auto& assign = static_cast<const java::AssignExpr&>(expr);
        Expr(*assign.target, nesting);
        Expr(*assign.value, nesting);
        return;
      }
      case NodeKind::kParen:
        Expr(*static_cast<const java::ParenExpr&>(expr).inner, nesting);
        return;
      case NodeKind::kArrayInit:
        for (const auto& e :
             static_cast<const java::ArrayInitExpr&>(expr).elements) {
          Expr(*e, nesting);
        }
        return;
      default:
        return;
    }
  }

  void MaybeExpr(const java::ExprPtr& expr, int nesting) {
    if (expr) Expr(*expr, nesting);
  }

  void MaybeStmt(const java::StmtPtr& stmt, int nesting) {
    if (stmt) Stmt(*stmt, nesting);
  }

  // The else part of an if statement; else-if chains stay flat.
  void Else(const java::Stmt& stmt, int nesting) {
    ++score_;
    if (stmt.kind == NodeKind::kIf) {
      const auto& chained = static_cast<const java::IfStmt&>(stmt);
      Expr(*chained.condition, nesting);
      Stmt(*chained.then_branch, nesting + 1);
      if (chained.else_branch) Else(*chained.else_branch, nesting);
    } else {
      Stmt(stmt, nesting + 1);
    }
  }

  void Stmt(const java::Stmt& stmt, int nesting) {
    switch (stmt.kind) {
      case NodeKind::kBlock:
        for (const auto& s : static_cast<const java::BlockStmt&>(stmt).statements) {
          Stmt(*s, nesting);
        }
        return;
      case NodeKind::kLocalVar:
        for (const auto& var : static_cast<const java::LocalVarStmt&>(stmt).vars) {
          MaybeExpr(var.init, nesting);
        }
        return;
      case NodeKind::kExprStmt:
        Expr(*static_cast<const java::ExprStmt&>(stmt).expr, nesting);
        return;
      case NodeKind::kIf: {
        const auto& s = static_cast<const java::IfStmt&>(stmt);
        score_ += 1 + nesting;
        Expr(*s.condition, nesting);
        Stmt(*s.then_branch, nesting + 1);
        if (s.else_branch) Else(*s.else_branch, nesting);
        return;
      }
      case NodeKind::kFor: {
        const auto& s = static_cast<const java::ForStmt&>(stmt);
        score_ += 1 + nesting;
        for (const auto& init : s.init) Stmt(*init, nesting);
        MaybeExpr(s.condition, nesting);
        for (const auto& update : s.update) Expr(*update, nesting);
        Stmt(*s.body, nesting + 1);
        return;
      }
      case NodeKind::kForEach: {
        const auto& s = static_cast<const java::ForEachStmt&>(stmt);
        score_ += 1 + nesting;
        Expr(*s.iterable, nesting);
        Stmt(*s.body, nesting + 1);
        return;
      }
      case NodeKind::kWhile: {
        const auto& s = static_cast<const java::WhileStmt&>(stmt);
        score_ += 1 + nesting;
        Expr(*s.condition, nesting);
        Stmt(*s.body, nesting + 1);
        return;
      }
      case NodeKind::kDoWhile: {
        const auto& s = static_cast<const java::DoWhileStmt&>(stmt);
        score_ += 1 + nesting;
        Stmt(*s.body, nesting + 1);
        Expr(*s.condition, nesting);
        return;
      }
      case NodeKind::kReturn:
        MaybeExpr(static_cast<const java::ReturnStmt&>(stmt).value, nesting);
        return;
      case NodeKind::kThrow:
        MaybeExpr(static_cast<const java::ThrowStmt&>(stmt).value, nesting);
        return;
      case NodeKind::kBreak:
        if (!static_cast<const java::BreakStmt&>(stmt).label.empty()) ++score_;
        return;
      case NodeKind::kContinue:
        if (!static_cast<const java::ContinueStmt&>(stmt).label.empty()) ++score_;
        return;
      case NodeKind::kTry: {
        const auto& s = static_cast<const java::TryStmt&>(stmt);
        Stmt(*s.body, nesting);
        for (const auto& handler : s.catches) {
          score_ += 1 + nesting;
          Stmt(*handler.body, nesting + 1);
        }
        if (s.finally_block) Stmt(*s.finally_block, nesting);
        return;
      }
      case NodeKind::kSwitch: {
        const auto& s = static_cast<const java::SwitchStmt&>(stmt);
        score_ += 1 + nesting;
        Expr(*s.selector, nesting);
        for (const auto& c : s.cases) {
          for (const auto& body : c.body) Stmt(*body, nesting + 1);
        }
        return;
      }
      case NodeKind::kLabeled:
        MaybeStmt(static_cast<const java::LabeledStmt&>(stmt).body, nesting);
        return;
      default:
        return;
    }
  }

  const java::MethodDecl& method_;
  int score_ = 0;
  bool recursive_ = false;
};

}  // namespace

int CognitiveComplexity(const java::MethodDecl& method) {
  return Scorer(method).Score();
}

int CognitiveComplexity(const java::CompilationUnit& unit) {
  int total = 0;
  for (const auto& type : unit.types) {
    for (const auto& member : type->members) {
      if (member->kind == java::MemberKind::kField) continue;
      total += CognitiveComplexity(static_cast<const java::MethodDecl&>(*member));
    }
  }
  return total;
}

int LinesOfCode(const java::CompilationUnit& unit) {
  std::set<int> lines;
  for (const java::Token& token : unit.tokens) {
    if (token.kind != java::TokenKind::kEnd) lines.insert(token.line);
  }
  return static_cast<int>(lines.size());
}

int LinesOfCode(std::string_view source) {
  std::set<int> lines;
  for (const java::Token& token : java::Lex(source).tokens) {
    if (token.kind != java::TokenKind::kEnd) lines.insert(token.line);
  }
  return static_cast<int>(lines.size());
}

ComplexitySnapshot MeasureTestFiles(const SuiteModel& suite) {
  ComplexitySnapshot snapshot;
  for (const auto& unit : suite.units()) {
    if (!suite.IsTestFile(*unit)) continue;
    snapshot.loc += LinesOfCode(*unit);
    snapshot.cognitive += CognitiveComplexity(*unit);
    ++snapshot.files;
  }
  return snapshot;
}

std::optional<double> PercentDelta(int64_t before, int64_t after) {
  if (before == 0) return std::nullopt;
  return static_cast<double>(after - before) / static_cast<double>(before) * 100.0;
}

}  // namespace stubscrub
