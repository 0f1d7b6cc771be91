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

#include "stubscrub/java/parser.h"

#include <optional>
#include <set>

namespace stubscrub::java {

namespace {

const std::set<std::string_view> kModifiers = {
    "public",    "private",  "protected", "static",   "final",
    "abstract",  "synchronized", "native", "transient", "volatile",
    "strictfp",  "default"};

const std::set<std::string_view> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double",
    "void"};

const std::set<std::string_view> kAssignOps = {"=",  "+=", "-=", "*=",
                                               "/=", "%=", "&=", "|=", "^="};

class Parser {
 public:
  Parser(const CompilationUnit& unit) : unit_(unit), tokens_(unit.tokens) {}

  void ParseInto(CompilationUnit& unit) {
    if (Is("package")) {
      Next();
      unit.package = ParseQualifiedName();
      Expect(";");
    }
    while (Is("import")) {
      size_t start = pos_;
      Next();
      ImportDecl decl;
      if (Accept("static")) decl.is_static = true;
      decl.name = ParseQualifiedName();
      if (Accept(".")) {
        Expect("*");
        decl.name += ".*";
      }
      Expect(";");
      decl.range = RangeFrom(start);
      unit.imports.push_back(std::move(decl));
    }
    while (Peek().kind != TokenKind::kEnd) {
      if (Accept(";")) continue;
      unit.types.push_back(ParseTypeDecl());
    }
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& Peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool Is(std::string_view text, size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return (t.kind == TokenKind::kIdentifier || t.kind == TokenKind::kPunct) &&
           t.text == text;
  }

  bool IsIdentifier(size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind == TokenKind::kIdentifier && !IsReservedWord(t.text);
  }

  const Token& Next() {
    const Token& t = Peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  bool Accept(std::string_view text) {
    if (!Is(text)) return false;
    Next();
    return true;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw SyntaxError(unit_.path, Peek().line, message);
  }

  void Expect(std::string_view text) {
    if (!Accept(text)) {
      Fail("expected '" + std::string(text) + "' but found '" + Peek().text +
           "'");
    }
  }

  std::string ExpectIdentifier() {
    if (!IsIdentifier()) {
      Fail("expected identifier but found '" + Peek().text + "'");
    }
    return Next().text;
  }

  SourceRange RangeFrom(size_t start_token) const {
    const Token& first = tokens_[start_token];
    const Token& last = tokens_[pos_ > start_token ? pos_ - 1 : start_token];
    return SourceRange{first.begin, last.end, first.line, last.line};
  }

  static SourceRange TokenRange(const Token& t) {
    return SourceRange{t.begin, t.end, t.line, t.line};
  }

  std::string ParseQualifiedName() {
    std::string name = ExpectIdentifier();
    while (Is(".") && IsIdentifier(1)) {
      Next();
      name += "." + Next().text;
    }
    return name;
  }

  // --- declarations ---------------------------------------------------------

  void ParseAnnotationsAndModifiers(std::vector<Annotation>& annotations,
                                    std::vector<std::string>& modifiers) {
    while (true) {
      if (Is("@") && !Is("interface", 1)) {
        annotations.push_back(ParseAnnotation());
      } else if (Peek().kind == TokenKind::kIdentifier &&
                 kModifiers.contains(Peek().text) &&
                 !(Peek().text == "default" && Is(":", 1))) {
        modifiers.push_back(Next().text);
      } else {
        return;
      }
    }
  }

  Annotation ParseAnnotation() {
    size_t start = pos_;
    Expect("@");
    Annotation annotation;
    std::string name = ParseQualifiedName();
    size_t dot = name.rfind('.');
    annotation.name = dot == std::string::npos ? name : name.substr(dot + 1);
    if (Accept("(")) {
      if (!Is(")")) {
        if (IsIdentifier() && Is("=", 1)) {
          do {
            std::string key = ExpectIdentifier();
            Expect("=");
            annotation.args.emplace_back(key, ParseElementValue());
          } while (Accept(","));
        } else {
          annotation.args.emplace_back("value", ParseElementValue());
        }
      }
      Expect(")");
    }
    annotation.range = RangeFrom(start);
    return annotation;
  }

  ExprPtr ParseElementValue() {
    if (!Is("{")) return ParseConditional();
    size_t start = pos_;
    Next();
    auto init = std::make_unique<ArrayInitExpr>();
    while (!Is("}")) {
      init->elements.push_back(ParseElementValue());
      if (!Accept(",")) break;
    }
    Expect("}");
    init->range = RangeFrom(start);
    return init;
  }

  void SkipTypeParameters() {
    if (!Is("<")) return;
    int depth = 0;
    do {
      if (Is("<")) ++depth;
      if (Is(">")) --depth;
      if (Peek().kind == TokenKind::kEnd) Fail("unterminated type parameters");
      Next();
    } while (depth > 0);
  }

  std::unique_ptr<TypeDecl> ParseTypeDecl() {
    size_t start = pos_;
    auto decl = std::make_unique<TypeDecl>();
    ParseAnnotationsAndModifiers(decl->annotations, decl->modifiers);
    if (Accept("class")) {
      decl->kind = TypeKind::kClass;
    } else if (Accept("interface")) {
      decl->kind = TypeKind::kInterface;
    } else if (Accept("enum")) {
      decl->kind = TypeKind::kEnum;
    } else {
      Fail("expected class, interface or enum declaration");
    }
    decl->name_range = TokenRange(Peek());
    decl->name = ExpectIdentifier();
    SkipTypeParameters();
    if (Accept("extends")) {
      decl->extends = ParseType().base;
      // Interfaces may extend several.
      while (Accept(",")) decl->implements.push_back(ParseType().base);
    }
    if (Accept("implements")) {
      do {
        decl->implements.push_back(ParseType().base);
      } while (Accept(","));
    }
    decl->body_open = Peek().begin;
    Expect("{");
    if (decl->kind == TypeKind::kEnum) {
      while (IsIdentifier()) {
        EnumConstant constant;
        constant.range = TokenRange(Peek());
        constant.name = Next().text;
        decl->enum_constants.push_back(std::move(constant));
        if (!Accept(",")) break;
      }
      if (!Accept(";") && !Is("}")) Fail("expected ';' after enum constants");
    }
    while (!Is("}")) {
      if (Peek().kind == TokenKind::kEnd) Fail("unterminated type body");
      if (Accept(";")) continue;
      decl->members.push_back(ParseMember(*decl));
    }
    decl->body_close = Peek().begin;
    Expect("}");
    decl->range = RangeFrom(start);
    return decl;
  }

  std::unique_ptr<MemberDecl> ParseMember(const TypeDecl& owner) {
    size_t start = pos_;
    std::vector<Annotation> annotations;
    std::vector<std::string> modifiers;
    ParseAnnotationsAndModifiers(annotations, modifiers);
    if (Is("class") || Is("interface") || Is("enum") || Is("{")) {
      Fail("nested types and initializer blocks are not supported");
    }
    SkipTypeParameters();
    std::unique_ptr<MemberDecl> member;
    if (IsIdentifier() && Peek().text == owner.name && Is("(", 1)) {
      auto ctor = std::make_unique<MethodDecl>(MemberKind::kConstructor);
      ctor->name_range = TokenRange(Peek());
      ctor->name = Next().text;
      ParseMethodRest(*ctor);
      member = std::move(ctor);
    } else {
      TypeRef type = ParseType();
      if (IsIdentifier() && Is("(", 1)) {
        auto method = std::make_unique<MethodDecl>(MemberKind::kMethod);
        method->return_type = std::move(type);
        method->name_range = TokenRange(Peek());
        method->name = Next().text;
        ParseMethodRest(*method);
        member = std::move(method);
      } else {
        auto field = std::make_unique<FieldDecl>();
        field->type = std::move(type);
        field->vars = ParseDeclarators();
        Expect(";");
        member = std::move(field);
      }
    }
    member->annotations = std::move(annotations);
    member->modifiers = std::move(modifiers);
    member->range = RangeFrom(start);
    return member;
  }

  void ParseMethodRest(MethodDecl& method) {
    Expect("(");
    if (!Is(")")) {
      do {
        std::vector<Annotation> ignored_annotations;
        std::vector<std::string> ignored_modifiers;
        ParseAnnotationsAndModifiers(ignored_annotations, ignored_modifiers);
        Param param;
        param.type = ParseType();
        if (Accept("...")) param.type.text += "...";
        param.name = ExpectIdentifier();
        method.params.push_back(std::move(param));
      } while (Accept(","));
    }
    Expect(")");
    if (Accept("throws")) {
      do {
        ParseType();
      } while (Accept(","));
    }
    if (Accept(";")) return;
    method.body = ParseBlock();
  }

  std::vector<VarDeclarator> ParseDeclarators() {
    std::vector<VarDeclarator> vars;
    do {
      VarDeclarator var;
      var.name_range = TokenRange(Peek());
      var.name = ExpectIdentifier();
      while (Is("[") && Is("]", 1)) {
        Next();
        Next();
      }
      if (Accept("=")) var.init = ParseElementValueOrExpr();
      vars.push_back(std::move(var));
    } while (Accept(","));
    return vars;
  }

  ExprPtr ParseElementValueOrExpr() {
    return Is("{") ? ParseElementValue() : ParseExpression();
  }

  // --- types ----------------------------------------------------------------

  TypeRef ParseType() {
    auto type = TryParseType();
    if (!type) Fail("expected type but found '" + Peek().text + "'");
    return *type;
  }

  std::optional<TypeRef> TryParseType() {
    size_t start = pos_;
    TypeRef type;
    if (Peek().kind != TokenKind::kIdentifier) return std::nullopt;
    if (kPrimitiveTypes.contains(Peek().text)) {
      type.text = type.base = Next().text;
    } else {
      if (!IsIdentifier()) return std::nullopt;
      type.base = Next().text;
      type.text = type.base;
      while (Is(".") && IsIdentifier(1)) {
        Next();
        type.base = Next().text;
        type.text += "." + type.base;
      }
      if (Is("<")) {
        auto args = TryParseTypeArguments();
        if (!args) {
          pos_ = start;
          return std::nullopt;
        }
        type.text += *args;
      }
    }
    while (Is("[") && Is("]", 1)) {
      Next();
      Next();
      type.text += "[]";
    }
    type.range = RangeFrom(start);
    return type;
  }

  std::optional<std::string> TryParseTypeArguments() {
    size_t start = pos_;
    Next();  // '<'
    std::string text = "<";
    if (Accept(">")) return std::string("<>");
    while (true) {
      if (Accept("?")) {
        text += "?";
        if (Is("extends") || Is("super")) {
          text += " " + Next().text + " ";
          auto bound = TryParseType();
          if (!bound) break;
          text += bound->text;
        }
      } else {
        auto arg = TryParseType();
        if (!arg) break;
        text += arg->text;
      }
      if (Accept(",")) {
        text += ", ";
        continue;
      }
      if (Accept(">")) return text + ">";
      break;
    }
    pos_ = start;
    return std::nullopt;
  }

  // --- statements -----------------------------------------------------------

  std::unique_ptr<BlockStmt> ParseBlock() {
    size_t start = pos_;
    Expect("{");
    auto block = std::make_unique<BlockStmt>();
    while (!Is("}")) {
      if (Peek().kind == TokenKind::kEnd) Fail("unterminated block");
      block->statements.push_back(ParseStatement());
    }
    Expect("}");
    block->range = RangeFrom(start);
    return block;
  }

  bool LooksLikeLocalVar() {
    if (Is("final")) return true;
    if (Peek().kind != TokenKind::kIdentifier) return false;
    size_t start = pos_;
    bool result = false;
    if (TryParseType() && IsIdentifier()) {
      result = Is("=", 1) || Is(";", 1) || Is(",", 1) || Is(":", 1) ||
               Is("[", 1);
    }
    pos_ = start;
    return result;
  }

  StmtPtr ParseLocalVar(bool require_semicolon = true) {
    size_t start = pos_;
    auto stmt = std::make_unique<LocalVarStmt>();
    while (Accept("final")) {
    }
    while (Is("@")) ParseAnnotation();
    stmt->type = ParseType();
    stmt->vars = ParseDeclarators();
    if (require_semicolon) Expect(";");
    stmt->range = RangeFrom(start);
    return stmt;
  }

  StmtPtr ParseStatement() {
    size_t start = pos_;
    StmtPtr result;
    if (Is("{")) return ParseBlock();
    if (Accept(";")) {
      result = std::make_unique<EmptyStmt>();
    } else if (Accept("if")) {
      auto stmt = std::make_unique<IfStmt>();
      Expect("(");
      stmt->condition = ParseExpression();
      Expect(")");
      stmt->then_branch = ParseStatement();
      if (Accept("else")) stmt->else_branch = ParseStatement();
      result = std::move(stmt);
    } else if (Accept("for")) {
      result = ParseForRest();
    } else if (Accept("while")) {
      auto stmt = std::make_unique<WhileStmt>();
      Expect("(");
      stmt->condition = ParseExpression();
      Expect(")");
      stmt->body = ParseStatement();
      result = std::move(stmt);
    } else if (Accept("do")) {
      auto stmt = std::make_unique<DoWhileStmt>();
      stmt->body = ParseStatement();
      Expect("while");
      Expect("(");
      stmt->condition = ParseExpression();
      Expect(")");
      Expect(";");
      result = std::move(stmt);
    } else if (Accept("return")) {
      auto stmt = std::make_unique<ReturnStmt>();
      if (!Is(";")) stmt->value = ParseExpression();
      Expect(";");
      result = std::move(stmt);
    } else if (Accept("break")) {
      auto stmt = std::make_unique<BreakStmt>();
      if (IsIdentifier()) stmt->label = Next().text;
      Expect(";");
      result = std::move(stmt);
    } else if (Accept("continue")) {
      auto stmt = std::make_unique<ContinueStmt>();
      if (IsIdentifier()) stmt->label = Next().text;
      Expect(";");
      result = std::move(stmt);
    } else if (Accept("throw")) {
      auto stmt = std::make_unique<ThrowStmt>();
      stmt->value = ParseExpression();
      Expect(";");
      result = std::move(stmt);
    } else if (Accept("try")) {
      result = ParseTryRest();
    } else if (Accept("switch")) {
      result = ParseSwitchRest();
    } else if (IsIdentifier() && Is(":", 1)) {
      auto stmt = std::make_unique<LabeledStmt>();
      stmt->label = Next().text;
      Next();
      stmt->body = ParseStatement();
      result = std::move(stmt);
    } else if (LooksLikeLocalVar()) {
      return ParseLocalVar();
    } else {
      auto stmt = std::make_unique<ExprStmt>();
      stmt->expr = ParseExpression();
      Expect(";");
      result = std::move(stmt);
    }
    result->range = RangeFrom(start);
    return result;
  }

  StmtPtr ParseForRest() {
    Expect("(");
    // for-each: [final] Type name : expr
    {
      size_t save = pos_;
      while (Accept("final")) {
      }
      auto type = TryParseType();
      if (type && IsIdentifier() && Is(":", 1)) {
        auto stmt = std::make_unique<ForEachStmt>();
        stmt->type = *type;
        stmt->name = Next().text;
        Next();
        stmt->iterable = ParseExpression();
        Expect(")");
        stmt->body = ParseStatement();
        return stmt;
      }
      pos_ = save;
    }
    auto stmt = std::make_unique<ForStmt>();
    if (!Is(";")) {
      if (LooksLikeLocalVar()) {
        stmt->init.push_back(ParseLocalVar(false));
      } else {
        do {
          size_t start = pos_;
          auto init = std::make_unique<ExprStmt>();
          init->expr = ParseExpression();
          init->range = RangeFrom(start);
          stmt->init.push_back(std::move(init));
        } while (Accept(","));
      }
    }
    Expect(";");
    if (!Is(";")) stmt->condition = ParseExpression();
    Expect(";");
    if (!Is(")")) {
      do {
        stmt->update.push_back(ParseExpression());
      } while (Accept(","));
    }
    Expect(")");
    stmt->body = ParseStatement();
    return stmt;
  }

  StmtPtr ParseTryRest() {
    auto stmt = std::make_unique<TryStmt>();
    if (Is("(")) Fail("try-with-resources is not supported");
    stmt->body = ParseBlock();
    while (Accept("catch")) {
      CatchClause clause;
      Expect("(");
      while (Accept("final")) {
      }
      clause.types.push_back(ParseType().base);
      while (Accept("|")) clause.types.push_back(ParseType().base);
      clause.name = ExpectIdentifier();
      Expect(")");
      clause.body = ParseBlock();
      stmt->catches.push_back(std::move(clause));
    }
    if (Accept("finally")) stmt->finally_block = ParseBlock();
    if (stmt->catches.empty() && !stmt->finally_block) {
      Fail("try without catch or finally");
    }
    return stmt;
  }

  StmtPtr ParseSwitchRest() {
    auto stmt = std::make_unique<SwitchStmt>();
    Expect("(");
    stmt->selector = ParseExpression();
    Expect(")");
    Expect("{");
    while (!Is("}")) {
      SwitchCase switch_case;
      if (Accept("default")) {
        Expect(":");
      } else {
        Expect("case");
        do {
          switch_case.labels.push_back(ParseConditional());
        } while (Accept(","));
        Expect(":");
      }
      while (!Is("case") && !Is("default") && !Is("}")) {
        if (Peek().kind == TokenKind::kEnd) Fail("unterminated switch");
        switch_case.body.push_back(ParseStatement());
      }
      stmt->cases.push_back(std::move(switch_case));
    }
    Expect("}");
    return stmt;
  }

  // --- expressions ----------------------------------------------------------

  template <typename T>
  std::unique_ptr<T> Finish(std::unique_ptr<T> node, size_t start) {
    node->range = RangeFrom(start);
    return node;
  }

  ExprPtr ParseExpression() {
    size_t start = pos_;
    ExprPtr lhs = ParseConditional();
    if (Peek().kind == TokenKind::kPunct && kAssignOps.contains(Peek().text)) {
      auto assign = std::make_unique<AssignExpr>();
      assign->op = Next().text;
      assign->target = std::move(lhs);
      assign->value = ParseExpression();
      return Finish(std::move(assign), start);
    }
    return lhs;
  }

  ExprPtr ParseConditional() {
    size_t start = pos_;
    ExprPtr cond = ParseBinary(0);
    if (!Accept("?")) return cond;
    auto expr = std::make_unique<ConditionalExpr>();
    expr->condition = std::move(cond);
    expr->when_true = ParseExpression();
    Expect(":");
    expr->when_false = ParseConditional();
    return Finish(std::move(expr), start);
  }

  static int Precedence(const Token& t) {
    if (t.kind != TokenKind::kPunct && t.text != "instanceof") return -1;
    static const std::vector<std::vector<std::string_view>> kLevels = {
        {"||"}, {"&&"}, {"|"}, {"^"}, {"&"}, {"==", "!="},
        {"<", ">", "<=", ">=", "instanceof"}, {"+", "-"}, {"*", "/", "%"}};
    for (size_t level = 0; level < kLevels.size(); ++level) {
      for (std::string_view op : kLevels[level]) {
        if (t.text == op) return static_cast<int>(level);
      }
    }
    return -1;
  }

  ExprPtr ParseBinary(int min_level) {
    size_t start = pos_;
    ExprPtr lhs = ParseUnary();
    while (true) {
      int level = Precedence(Peek());
      if (level < min_level) return lhs;
      auto bin = std::make_unique<BinaryExpr>();
      bin->op = Next().text;
      bin->lhs = std::move(lhs);
      if (bin->op == "instanceof") {
        size_t type_start = pos_;
        auto name = std::make_unique<NameExpr>();
        name->name = ParseType().base;
        bin->rhs = Finish(std::move(name), type_start);
      } else {
        bin->rhs = ParseBinary(level + 1);
      }
      lhs = Finish(std::move(bin), start);
    }
  }

  ExprPtr ParseUnary() {
    size_t start = pos_;
    if (Is("!") || Is("-") || Is("+") || Is("++") || Is("--") || Is("~")) {
      auto expr = std::make_unique<UnaryExpr>();
      expr->op = Next().text;
      expr->operand = ParseUnary();
      return Finish(std::move(expr), start);
    }
    return ParsePostfix();
  }

  std::vector<ExprPtr> ParseArguments() {
    std::vector<ExprPtr> args;
    Expect("(");
    if (!Is(")")) {
      do {
        args.push_back(ParseExpression());
      } while (Accept(","));
    }
    Expect(")");
    return args;
  }

  // Dotted chain text of a name/field-access expression, for `X.class`.
  static std::optional<std::string> DottedName(const Expr& expr) {
    if (expr.kind == NodeKind::kName) {
      return static_cast<const NameExpr&>(expr).name;
    }
    if (expr.kind == NodeKind::kFieldAccess) {
      const auto& access = static_cast<const FieldAccessExpr&>(expr);
      auto head = DottedName(*access.object);
      if (head) return *head + "." + access.name;
    }
    return std::nullopt;
  }

  ExprPtr ParsePostfix() {
    size_t start = pos_;
    ExprPtr expr = ParsePrimary();
    while (true) {
      if (Is(".") && Is("class", 1)) {
        auto name = DottedName(*expr);
        if (!name) Fail("unsupported class literal");
        Next();
        Next();
        auto literal = std::make_unique<ClassLiteralExpr>();
        literal->type_name = *name;
        expr = Finish(std::move(literal), start);
      } else if (Accept(".")) {
        if (Is("<")) SkipTypeParameters();
        const Token& name_token = Peek();
        std::string name = ExpectIdentifier();
        if (Is("(")) {
          auto call = std::make_unique<MethodCallExpr>();
          call->receiver = std::move(expr);
          call->name = name;
          call->name_range = TokenRange(name_token);
          call->args = ParseArguments();
          expr = Finish(std::move(call), start);
        } else {
          auto access = std::make_unique<FieldAccessExpr>();
          access->object = std::move(expr);
          access->name = name;
          expr = Finish(std::move(access), start);
        }
      } else if (Is("++") || Is("--")) {
        auto unary = std::make_unique<UnaryExpr>();
        unary->op = Next().text;
        unary->postfix = true;
        unary->operand = std::move(expr);
        expr = Finish(std::move(unary), start);
      } else if (Is("[")) {
        Fail("array indexing is not supported");
      } else {
        return expr;
      }
    }
  }

  ExprPtr ParsePrimary() {
    size_t start = pos_;
    const Token& t = Peek();
    auto literal = [&](LiteralKind kind) {
      auto lit = std::make_unique<LiteralExpr>();
      lit->literal = kind;
      lit->spelling = Next().text;
      return Finish(std::move(lit), start);
    };
    switch (t.kind) {
      case TokenKind::kInt:
        return literal(LiteralKind::kInt);
      case TokenKind::kFloat:
        return literal(LiteralKind::kFloat);
      case TokenKind::kString:
        return literal(LiteralKind::kString);
      case TokenKind::kChar:
        return literal(LiteralKind::kChar);
      default:
        break;
    }
    if (Is("true") || Is("false")) return literal(LiteralKind::kBool);
    if (Is("null")) return literal(LiteralKind::kNull);
    if (Accept("this")) return Finish(std::make_unique<ThisExpr>(), start);
    if (Accept("new")) {
      auto expr = std::make_unique<NewExpr>();
      expr->type = ParseType();
      if (Is("[")) Fail("array creation is not supported");
      expr->args = ParseArguments();
      if (Is("{")) Fail("anonymous classes are not supported");
      return Finish(std::move(expr), start);
    }
    if (Accept("(")) {
      auto expr = std::make_unique<ParenExpr>();
      expr->inner = ParseExpression();
      Expect(")");
      return Finish(std::move(expr), start);
    }
    if (IsIdentifier()) {
      if (Is("->", 1)) Fail("lambda expressions are not supported");
      const Token& name_token = Peek();
      std::string name = Next().text;
      if (Is("(")) {
        auto call = std::make_unique<MethodCallExpr>();
        call->name = name;
        call->name_range = TokenRange(name_token);
        call->args = ParseArguments();
        return Finish(std::move(call), start);
      }
      auto expr = std::make_unique<NameExpr>();
      expr->name = name;
      return Finish(std::move(expr), start);
    }
    if (t.kind == TokenKind::kIdentifier && kPrimitiveTypes.contains(t.text) &&
        Is(".", 1) && Is("class", 2)) {
      auto expr = std::make_unique<NameExpr>();
      expr->name = Next().text;
      return Finish(std::move(expr), start);
    }
    Fail("unexpected '" + t.text + "' in expression");
  }

  const CompilationUnit& unit_;
  const std::vector<Token>& tokens_;
  size_t pos_ = 0;
};

template <typename T>
bool HasAnnotationIn(const std::vector<Annotation>& annotations, T name) {
  for (const auto& a : annotations) {
    if (a.name == name) return true;
  }
  return false;
}

const Annotation* FindAnnotationIn(const std::vector<Annotation>& annotations,
                                   std::string_view name) {
  for (const auto& a : annotations) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

}  // namespace

const Expr* Annotation::Arg(std::string_view key) const {
  for (const auto& [name, value] : args) {
    if (name == key) return value.get();
  }
  return nullptr;
}

bool MemberDecl::HasAnnotation(std::string_view name) const {
  return HasAnnotationIn(annotations, name);
}

const Annotation* MemberDecl::FindAnnotation(std::string_view name) const {
  return FindAnnotationIn(annotations, name);
}

bool MemberDecl::HasModifier(std::string_view name) const {
  for (const auto& m : modifiers) {
    if (m == name) return true;
  }
  return false;
}

bool TypeDecl::HasAnnotation(std::string_view name) const {
  return HasAnnotationIn(annotations, name);
}

const Annotation* TypeDecl::FindAnnotation(std::string_view name) const {
  return FindAnnotationIn(annotations, name);
}

const MethodDecl* TypeDecl::FindMethod(std::string_view name,
                                       size_t arity) const {
  for (const auto& member : members) {
    if (member->kind != MemberKind::kMethod) continue;
    const auto& method = static_cast<const MethodDecl&>(*member);
    if (method.name == name && method.params.size() == arity) return &method;
  }
  return nullptr;
}

std::unique_ptr<CompilationUnit> ParseCompilationUnit(std::string source,
                                                      std::string path) {
  auto unit = std::make_unique<CompilationUnit>();
  unit->path = std::move(path);
  unit->source = std::move(source);
  LexedSource lexed = Lex(unit->source, unit->path);
  unit->tokens = std::move(lexed.tokens);
  unit->comments = std::move(lexed.comments);
  Parser(*unit).ParseInto(*unit);
  return unit;
}

std::vector<const Stmt*> ChildStatements(const Stmt& stmt) {
  std::vector<const Stmt*> out;
  auto add = [&](const Stmt* s) {
    if (s) out.push_back(s);
  };
  switch (stmt.kind) {
    case NodeKind::kBlock:
      for (const auto& s : static_cast<const BlockStmt&>(stmt).statements) {
        add(s.get());
      }
      break;
    case NodeKind::kIf: {
      const auto& s = static_cast<const IfStmt&>(stmt);
      add(s.then_branch.get());
      add(s.else_branch.get());
      break;
    }
    case NodeKind::kFor: {
      const auto& s = static_cast<const ForStmt&>(stmt);
      for (const auto& init : s.init) add(init.get());
      add(s.body.get());
      break;
    }
    case NodeKind::kForEach:
      add(static_cast<const ForEachStmt&>(stmt).body.get());
      break;
    case NodeKind::kWhile:
      add(static_cast<const WhileStmt&>(stmt).body.get());
      break;
    case NodeKind::kDoWhile:
      add(static_cast<const DoWhileStmt&>(stmt).body.get());
      break;
    case NodeKind::kTry: {
      const auto& s = static_cast<const TryStmt&>(stmt);
      add(s.body.get());
      for (const auto& c : s.catches) add(c.body.get());
      add(s.finally_block.get());
      break;
    }
    case NodeKind::kSwitch:
      for (const auto& c : static_cast<const SwitchStmt&>(stmt).cases) {
        for (const auto& s : c.body) add(s.get());
      }
      break;
    case NodeKind::kLabeled:
      add(static_cast<const LabeledStmt&>(stmt).body.get());
      break;
    default:
      break;
  }
  return out;
}

namespace {

void WalkStatementsImpl(const Stmt& stmt, std::vector<const Stmt*>& ancestors,
                        const StmtVisitor& visit) {
  visit(stmt, ancestors);
  ancestors.push_back(&stmt);
  for (const Stmt* child : ChildStatements(stmt)) {
    WalkStatementsImpl(*child, ancestors, visit);
  }
  ancestors.pop_back();
}

}  // namespace

std::vector<const Expr*> OwnExpressions(const Stmt& stmt) {
  std::vector<const Expr*> out;
  auto add = [&](const Expr* e) {
    if (e) out.push_back(e);
  };
  switch (stmt.kind) {
    case NodeKind::kLocalVar:
      for (const auto& v : static_cast<const LocalVarStmt&>(stmt).vars) {
        add(v.init.get());
      }
      break;
    case NodeKind::kExprStmt:
      add(static_cast<const ExprStmt&>(stmt).expr.get());
      break;
    case NodeKind::kIf:
      add(static_cast<const IfStmt&>(stmt).condition.get());
      break;
    case NodeKind::kFor: {
      const auto& s = static_cast<const ForStmt&>(stmt);
      add(s.condition.get());
      for (const auto& u : s.update) add(u.get());
      break;
    }
    case NodeKind::kForEach:
      add(static_cast<const ForEachStmt&>(stmt).iterable.get());
      break;
    case NodeKind::kWhile:
      add(static_cast<const WhileStmt&>(stmt).condition.get());
      break;
    case NodeKind::kDoWhile:
      add(static_cast<const DoWhileStmt&>(stmt).condition.get());
      break;
    case NodeKind::kReturn:
      add(static_cast<const ReturnStmt&>(stmt).value.get());
      break;
    case NodeKind::kThrow:
      add(static_cast<const ThrowStmt&>(stmt).value.get());
      break;
    case NodeKind::kSwitch: {
      const auto& s = static_cast<const SwitchStmt&>(stmt);
      add(s.selector.get());
      for (const auto& c : s.cases) {
        for (const auto& l : c.labels) add(l.get());
      }
      break;
    }
    default:
      break;
  }
  return out;
}

void WalkStatements(const Stmt& stmt, const StmtVisitor& visit) {
  std::vector<const Stmt*> ancestors;
  WalkStatementsImpl(stmt, ancestors, visit);
}

void WalkExpression(const Expr& expr,
                    const std::function<void(const Expr&)>& visit) {
  visit(expr);
  auto recurse = [&](const Expr* e) {
    if (e) WalkExpression(*e, visit);
  };
  switch (expr.kind) {
    case NodeKind::kFieldAccess:
      recurse(static_cast<const FieldAccessExpr&>(expr).object.get());
      break;
    case NodeKind::kMethodCall: {
      const auto& e = static_cast<const MethodCallExpr&>(expr);
      recurse(e.receiver.get());
      for (const auto& a : e.args) recurse(a.get());
      break;
    }
    case NodeKind::kNew:
      for (const auto& a : static_cast<const NewExpr&>(expr).args) {
        recurse(a.get());
      }
      break;
    case NodeKind::kUnary:
      recurse(static_cast<const UnaryExpr&>(expr).operand.get());
      break;
    case NodeKind::kBinary: {
      const auto& e = static_cast<const BinaryExpr&>(expr);
      recurse(e.lhs.get());
      recurse(e.rhs.get());
      break;
    }
    case NodeKind::kAssign: {
      const auto& e = static_cast<const AssignExpr&>(expr);
      recurse(e.target.get());
      recurse(e.value.get());
      break;
    }
    case NodeKind::kConditional: {
      const auto& e = static_cast<const ConditionalExpr&>(expr);
      recurse(e.condition.get());
      recurse(e.when_true.get());
      recurse(e.when_false.get());
      break;
    }
    case NodeKind::kParen:
      recurse(static_cast<const ParenExpr&>(expr).inner.get());
      break;
    case NodeKind::kArrayInit:
      for (const auto& e : static_cast<const ArrayInitExpr&>(expr).elements) {
        recurse(e.get());
      }
      break;
    default:
      break;
  }
}

void WalkExpressions(const Stmt& stmt,
                     const std::function<void(const Expr&)>& visit) {
  WalkStatements(stmt, [&](const Stmt& s, const std::vector<const Stmt*>&) {
    for (const Expr* e : OwnExpressions(s)) WalkExpression(*e, visit);
  });
}

}  // namespace stubscrub::java
