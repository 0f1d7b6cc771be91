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

#include "stubscrub/java/lexer.h"

#include <array>
#include <cctype>
#include <set>

namespace stubscrub::java {

namespace {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool IsIdentPart(char c) {
  return IsIdentStart(c) || std::isdigit(static_cast<unsigned char>(c));
}

// Longest match first. '>' is never merged so nested generics close
// token by token.
constexpr std::array<std::string_view, 20> kMultiCharPuncts = {
    "...", "->", "::", "==", "!=", "<=", ">=", "&&", "||", "++",
    "--",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<"};

}  // namespace

SyntaxError::SyntaxError(std::string file, int line, const std::string& message)
    : std::runtime_error((file.empty() ? std::string("<input>") : file) + ":" +
                         std::to_string(line) + ": " + message),
      file_(std::move(file)),
      line_(line) {}

bool IsReservedWord(std::string_view word) {
  static const std::set<std::string_view> kWords = {
      "abstract", "assert",    "boolean",    "break",     "byte",
      "case",     "catch",     "char",       "class",     "const",
      "continue", "default",   "do",         "double",    "else",
      "enum",     "extends",   "final",      "finally",   "float",
      "for",      "goto",      "if",         "implements", "import",
      "instanceof", "int",     "interface",  "long",      "native",
      "new",      "package",   "private",    "protected", "public",
      "return",   "short",     "static",     "strictfp",  "super",
      "switch",   "synchronized", "this",    "throw",     "throws",
      "transient", "try",      "void",       "volatile",  "while",
      "true",     "false",     "null"};
  return kWords.contains(word);
}

LexedSource Lex(std::string_view src, const std::string& file) {
  LexedSource out;
  size_t i = 0;
  int line = 1;
  auto push = [&](TokenKind kind, size_t begin, int token_line) {
    out.tokens.push_back(
        Token{kind, std::string(src.substr(begin, i - begin)), begin, i,
              token_line});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      size_t begin = i;
      while (i < src.size() && src[i] != '\n') ++i;
      out.comments.push_back(Comment{begin, i, line, line});
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      size_t begin = i;
      int start_line = line;
      i += 2;
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i + 1 >= src.size()) {
        throw SyntaxError(file, start_line, "unterminated comment");
      }
      i += 2;
      out.comments.push_back(Comment{begin, i, start_line, line});
      continue;
    }
    size_t begin = i;
    int token_line = line;
    if (IsIdentStart(c)) {
      while (i < src.size() && IsIdentPart(src[i])) ++i;
      push(TokenKind::kIdentifier, begin, token_line);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      bool is_float = false;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) ||
              src[i] == '_' || src[i] == '.')) {
        if (src[i] == '.') {
          // `1.foo()` does not occur in practice; a dot followed by a digit
          // or nothing numeric still belongs to the literal.
          if (i + 1 < src.size() &&
              !std::isdigit(static_cast<unsigned char>(src[i + 1])) &&
              src[i + 1] != 'e' && src[i + 1] != 'E' && src[i + 1] != 'f' &&
              src[i + 1] != 'd') {
            break;
          }
          is_float = true;
        }
        ++i;
      }
      char last = src[i - 1];
      if (last == 'f' || last == 'F' || last == 'd' || last == 'D') {
        is_float = true;
      }
      push(is_float ? TokenKind::kFloat : TokenKind::kInt, begin, token_line);
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      ++i;
      while (i < src.size() && src[i] != quote) {
        if (src[i] == '\\') ++i;
        if (i < src.size() && src[i] == '\n') {
          throw SyntaxError(file, token_line, "unterminated literal");
        }
        ++i;
      }
      if (i >= src.size()) {
        throw SyntaxError(file, token_line, "unterminated literal");
      }
      ++i;
      push(quote == '"' ? TokenKind::kString : TokenKind::kChar, begin,
           token_line);
      continue;
    }
    bool matched = false;
    for (std::string_view p : kMultiCharPuncts) {
      if (src.substr(i, p.size()) == p) {
        i += p.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      static constexpr std::string_view kSingle = "{}()[];,.@=<>!~?:+-*/&|^%";
      if (kSingle.find(c) == std::string_view::npos) {
        throw SyntaxError(file, token_line,
                          std::string("unexpected character '") + c + "'");
      }
      ++i;
    }
    push(TokenKind::kPunct, begin, token_line);
  }
  out.tokens.push_back(Token{TokenKind::kEnd, "", src.size(), src.size(), line});
  return out;
}

std::string UnquoteLiteral(std::string_view spelling) {
  std::string out;
  if (spelling.size() < 2) return out;
  std::string_view body = spelling.substr(1, spelling.size() - 2);
  for (size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\' || i + 1 == body.size()) {
      out += c;
      continue;
    }
    char e = body[++i];
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '0': out += '\0'; break;
      case 'b': out += '\b'; break;
      case 'f': out += '\f'; break;
      default: out += e; break;
    }
  }
  return out;
}

}  // namespace stubscrub::java
