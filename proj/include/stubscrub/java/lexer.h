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

#ifndef STUBSCRUB_JAVA_LEXER_H_
#define STUBSCRUB_JAVA_LEXER_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stubscrub::java {

enum class TokenKind {
  kIdentifier,  // includes keywords; the parser tells them apart
  kInt,
  kFloat,
  kString,
  kChar,
  kPunct,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // raw spelling, quotes included for literals
  size_t begin = 0;
  size_t end = 0;
  int line = 1;
};

struct Comment {
  size_t begin = 0;
  size_t end = 0;
  int line = 1;
  int end_line = 1;
};

struct LexedSource {
  std::vector<Token> tokens;  // always terminated by a kEnd token
  std::vector<Comment> comments;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string file, int line, const std::string& message);
  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

LexedSource Lex(std::string_view source, const std::string& file = "");

// Decodes escape sequences of a string or char literal spelling.
std::string UnquoteLiteral(std::string_view spelling);

bool IsReservedWord(std::string_view word);

}  // namespace stubscrub::java

#endif  // STUBSCRUB_JAVA_LEXER_H_
