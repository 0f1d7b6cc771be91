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

#include "stubscrub/text_edit.h"

#include <algorithm>
#include <stdexcept>

namespace stubscrub {

namespace {

bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::string ApplyEditsInRange(std::string_view source, size_t begin,
                              size_t end, std::vector<TextEdit> edits) {
  if (begin > end || end > source.size()) {
    throw std::invalid_argument("edit range outside the source");
  }
  std::stable_sort(edits.begin(), edits.end(),
                   [](const TextEdit& a, const TextEdit& b) {
                     return a.begin < b.begin;
                   });
  std::string out;
  size_t cursor = begin;
  for (const TextEdit& edit : edits) {
    if (edit.begin < cursor || edit.end < edit.begin || edit.end > end) {
      throw std::invalid_argument("overlapping or out-of-range text edit at " +
                                  std::to_string(edit.begin));
    }
    out.append(source.substr(cursor, edit.begin - cursor));
    out += edit.replacement;
    cursor = edit.end;
  }
  out.append(source.substr(cursor, end - cursor));
  return out;
}

std::string ApplyEdits(std::string_view source, std::vector<TextEdit> edits) {
  return ApplyEditsInRange(source, 0, source.size(), std::move(edits));
}

TextEdit DeletionFor(std::string_view source, size_t begin, size_t end) {
  size_t line_start = begin;
  while (line_start > 0 && IsBlank(source[line_start - 1])) --line_start;
  bool alone_at_start = line_start == 0 || source[line_start - 1] == '\n';

  size_t after = end;
  while (after < source.size() && IsBlank(source[after])) ++after;
  if (source.substr(after, 2) == "//") {
    size_t nl = source.find('\n', after);
    after = nl == std::string_view::npos ? source.size() : nl;
  }
  bool alone_at_end = after == source.size() || source[after] == '\n';

  if (alone_at_start && alone_at_end) {
    return TextEdit{line_start, after < source.size() ? after + 1 : after, ""};
  }
  size_t stop = end;
  while (stop < source.size() && IsBlank(source[stop])) ++stop;
  return TextEdit{begin, stop, ""};
}

std::string IndentationAt(std::string_view source, size_t offset) {
  size_t line_start = source.rfind('\n', offset == 0 ? 0 : offset - 1);
  line_start = line_start == std::string_view::npos ? 0 : line_start + 1;
  if (offset == 0) line_start = 0;
  size_t stop = line_start;
  while (stop < source.size() && IsBlank(source[stop]) && source[stop] != '\r') {
    ++stop;
  }
  return std::string(source.substr(line_start, stop - line_start));
}

}  // namespace stubscrub
