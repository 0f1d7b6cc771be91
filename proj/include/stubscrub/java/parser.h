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

#ifndef STUBSCRUB_JAVA_PARSER_H_
#define STUBSCRUB_JAVA_PARSER_H_

#include <functional>
#include <memory>
#include <string>

#include "stubscrub/java/ast.h"

namespace stubscrub::java {

// Parses one source file. Throws SyntaxError on anything outside the
// supported subset.
std::unique_ptr<CompilationUnit> ParseCompilationUnit(std::string source,
                                                      std::string path);

// Visits `stmt` and every statement nested in it, pre-order. The callback
// receives the statement and the chain of enclosing statements (outermost
// first).
using StmtVisitor =
    std::function<void(const Stmt&, const std::vector<const Stmt*>&)>;
void WalkStatements(const Stmt& stmt, const StmtVisitor& visit);

// Visits every expression directly or indirectly owned by `stmt`
// (including nested statements), pre-order.
void WalkExpressions(const Stmt& stmt,
                     const std::function<void(const Expr&)>& visit);
void WalkExpression(const Expr& expr,
                    const std::function<void(const Expr&)>& visit);

// Expressions owned by this statement itself, not by nested statements.
std::vector<const Expr*> OwnExpressions(const Stmt& stmt);

// Statements owned directly by `stmt` (not transitively).
std::vector<const Stmt*> ChildStatements(const Stmt& stmt);

}  // namespace stubscrub::java

#endif  // STUBSCRUB_JAVA_PARSER_H_
