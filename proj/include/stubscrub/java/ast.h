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

// Syntax tree for the Java subset accepted by stubscrub. Every node keeps
// its byte range in the original source so rewrites can splice text
// without reformatting anything they do not touch.

#ifndef STUBSCRUB_JAVA_AST_H_
#define STUBSCRUB_JAVA_AST_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stubscrub/java/lexer.h"

namespace stubscrub::java {

struct SourceRange {
  size_t begin = 0;
  size_t end = 0;  // exclusive
  int line = 1;
  int end_line = 1;
};

enum class NodeKind {
  // Expressions.
  kLiteral,
  kName,
  kThis,
  kFieldAccess,
  kMethodCall,
  kNew,
  kClassLiteral,
  kUnary,
  kBinary,
  kAssign,
  kConditional,
  kParen,
  kArrayInit,
  // Statements.
  kBlock,
  kLocalVar,
  kExprStmt,
  kIf,
  kFor,
  kForEach,
  kWhile,
  kDoWhile,
  kReturn,
  kBreak,
  kContinue,
  kThrow,
  kTry,
  kSwitch,
  kLabeled,
  kEmpty,
};

struct Node {
  explicit Node(NodeKind k) : kind(k) {}
  virtual ~Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  NodeKind kind;
  SourceRange range;
};

struct Expr : Node {
  using Node::Node;
};
struct Stmt : Node {
  using Node::Node;
};

using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

struct TypeRef {
  std::string text;  // normalized, e.g. "List<String>"
  std::string base;  // erasure without package, e.g. "List"
  SourceRange range;
};

enum class LiteralKind { kInt, kFloat, kString, kChar, kBool, kNull };

struct LiteralExpr : Expr {
  LiteralExpr() : Expr(NodeKind::kLiteral) {}
  LiteralKind literal = LiteralKind::kNull;
  std::string spelling;
};

struct NameExpr : Expr {
  NameExpr() : Expr(NodeKind::kName) {}
  std::string name;
};

struct ThisExpr : Expr {
  ThisExpr() : Expr(NodeKind::kThis) {}
};

struct FieldAccessExpr : Expr {
  FieldAccessExpr() : Expr(NodeKind::kFieldAccess) {}
  ExprPtr object;
  std::string name;
};

struct MethodCallExpr : Expr {
  MethodCallExpr() : Expr(NodeKind::kMethodCall) {}
  ExprPtr receiver;  // null for unqualified calls
  std::string name;
  SourceRange name_range;
  std::vector<ExprPtr> args;
};

struct NewExpr : Expr {
  NewExpr() : Expr(NodeKind::kNew) {}
  TypeRef type;
  std::vector<ExprPtr> args;
};

struct ClassLiteralExpr : Expr {
  ClassLiteralExpr() : Expr(NodeKind::kClassLiteral) {}
  std::string type_name;
};

struct UnaryExpr : Expr {
  UnaryExpr() : Expr(NodeKind::kUnary) {}
  std::string op;
  bool postfix = false;
  ExprPtr operand;
};

struct BinaryExpr : Expr {
  BinaryExpr() : Expr(NodeKind::kBinary) {}
  std::string op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct AssignExpr : Expr {
  AssignExpr() : Expr(NodeKind::kAssign) {}
  std::string op;
  ExprPtr target;
  ExprPtr value;
};

struct ConditionalExpr : Expr {
  ConditionalExpr() : Expr(NodeKind::kConditional) {}
  ExprPtr condition;
  ExprPtr when_true;
  ExprPtr when_false;
};

struct ParenExpr : Expr {
  ParenExpr() : Expr(NodeKind::kParen) {}
  ExprPtr inner;
};

struct ArrayInitExpr : Expr {
  ArrayInitExpr() : Expr(NodeKind::kArrayInit) {}
  std::vector<ExprPtr> elements;
};

struct BlockStmt : Stmt {
  BlockStmt() : Stmt(NodeKind::kBlock) {}
  std::vector<StmtPtr> statements;
};

struct VarDeclarator {
  std::string name;
  SourceRange name_range;
  ExprPtr init;
};

struct LocalVarStmt : Stmt {
  LocalVarStmt() : Stmt(NodeKind::kLocalVar) {}
  TypeRef type;
  std::vector<VarDeclarator> vars;
};

struct ExprStmt : Stmt {
  ExprStmt() : Stmt(NodeKind::kExprStmt) {}
  ExprPtr expr;
};

struct IfStmt : Stmt {
  IfStmt() : Stmt(NodeKind::kIf) {}
  ExprPtr condition;
  StmtPtr then_branch;
  StmtPtr else_branch;
};

struct ForStmt : Stmt {
  ForStmt() : Stmt(NodeKind::kFor) {}
  std::vector<StmtPtr> init;
  ExprPtr condition;
  std::vector<ExprPtr> update;
  StmtPtr body;
};

struct ForEachStmt : Stmt {
  ForEachStmt() : Stmt(NodeKind::kForEach) {}
  TypeRef type;
  std::string name;
  ExprPtr iterable;
  StmtPtr body;
};

struct WhileStmt : Stmt {
  WhileStmt() : Stmt(NodeKind::kWhile) {}
  ExprPtr condition;
  StmtPtr body;
};

struct DoWhileStmt : Stmt {
  DoWhileStmt() : Stmt(NodeKind::kDoWhile) {}
  StmtPtr body;
  ExprPtr condition;
};

struct ReturnStmt : Stmt {
  ReturnStmt() : Stmt(NodeKind::kReturn) {}
  ExprPtr value;
};

struct BreakStmt : Stmt {
  BreakStmt() : Stmt(NodeKind::kBreak) {}
  std::string label;
};

struct ContinueStmt : Stmt {
  ContinueStmt() : Stmt(NodeKind::kContinue) {}
  std::string label;
};

struct ThrowStmt : Stmt {
  ThrowStmt() : Stmt(NodeKind::kThrow) {}
  ExprPtr value;
};

struct CatchClause {
  std::vector<std::string> types;
  std::string name;
  std::unique_ptr<BlockStmt> body;
};

struct TryStmt : Stmt {
  TryStmt() : Stmt(NodeKind::kTry) {}
  std::unique_ptr<BlockStmt> body;
  std::vector<CatchClause> catches;
  std::unique_ptr<BlockStmt> finally_block;
};

struct SwitchCase {
  std::vector<ExprPtr> labels;  // empty for `default`
  std::vector<StmtPtr> body;
};

struct SwitchStmt : Stmt {
  SwitchStmt() : Stmt(NodeKind::kSwitch) {}
  ExprPtr selector;
  std::vector<SwitchCase> cases;
};

struct LabeledStmt : Stmt {
  LabeledStmt() : Stmt(NodeKind::kLabeled) {}
  std::string label;
  StmtPtr body;
};

struct EmptyStmt : Stmt {
  EmptyStmt() : Stmt(NodeKind::kEmpty) {}
};

struct Annotation {
  std::string name;  // simple name, package dropped
  // Unnamed single values are stored under "value".
  std::vector<std::pair<std::string, ExprPtr>> args;
  SourceRange range;

  const Expr* Arg(std::string_view key) const;
};

enum class MemberKind { kField, kMethod, kConstructor };

struct Param {
  TypeRef type;
  std::string name;
};

struct MemberDecl {
  explicit MemberDecl(MemberKind k) : kind(k) {}
  virtual ~MemberDecl() = default;
  MemberDecl(const MemberDecl&) = delete;
  MemberDecl& operator=(const MemberDecl&) = delete;

  bool HasAnnotation(std::string_view name) const;
  const Annotation* FindAnnotation(std::string_view name) const;
  bool HasModifier(std::string_view name) const;

  MemberKind kind;
  std::vector<Annotation> annotations;
  std::vector<std::string> modifiers;
  SourceRange range;  // first annotation/modifier through last token
};

struct FieldDecl : MemberDecl {
  FieldDecl() : MemberDecl(MemberKind::kField) {}
  TypeRef type;
  std::vector<VarDeclarator> vars;
};

struct MethodDecl : MemberDecl {
  explicit MethodDecl(MemberKind k) : MemberDecl(k) {}
  TypeRef return_type;  // empty for constructors
  std::string name;
  SourceRange name_range;
  std::vector<Param> params;
  std::unique_ptr<BlockStmt> body;  // null for abstract/interface methods
};

enum class TypeKind { kClass, kInterface, kEnum };

struct EnumConstant {
  std::string name;
  SourceRange range;
};

struct TypeDecl {
  bool HasAnnotation(std::string_view name) const;
  const Annotation* FindAnnotation(std::string_view name) const;
  const MethodDecl* FindMethod(std::string_view name, size_t arity) const;

  TypeKind kind = TypeKind::kClass;
  std::string name;
  SourceRange name_range;
  std::vector<Annotation> annotations;
  std::vector<std::string> modifiers;
  std::string extends;
  std::vector<std::string> implements;
  std::vector<EnumConstant> enum_constants;
  std::vector<std::unique_ptr<MemberDecl>> members;
  SourceRange range;
  size_t body_open = 0;   // offset of '{'
  size_t body_close = 0;  // offset of '}'
};

struct ImportDecl {
  std::string name;  // e.g. "java.util.List" or "org.junit.Assert.*"
  bool is_static = false;
  SourceRange range;
};

struct CompilationUnit {
  std::string path;  // suite-relative
  std::string source;
  std::string package;
  std::vector<ImportDecl> imports;
  std::vector<std::unique_ptr<TypeDecl>> types;
  std::vector<Comment> comments;
  std::vector<Token> tokens;
};

}  // namespace stubscrub::java

#endif  // STUBSCRUB_JAVA_AST_H_
