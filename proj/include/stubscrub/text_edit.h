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

#ifndef STUBSCRUB_TEXT_EDIT_H_
#define STUBSCRUB_TEXT_EDIT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stubscrub {

// Replaces source[begin, end) with `replacement`. Zero-width edits insert.
struct TextEdit {
  size_t begin = 0;
  size_t end = 0;
  std::string replacement;
};

// Applies edits expressed in offsets of `source`. Edits must not overlap;
// insertions at the same offset keep their input order. Throws
// std::invalid_argument on overlap or out-of-range offsets.
std::string ApplyEdits(std::string_view source, std::vector<TextEdit> edits);

// Same as ApplyEdits on the slice [begin, end) of `source`, with edit
// offsets still relative to the whole source.
std::string ApplyEditsInRange(std::string_view source, size_t begin,
                              size_t end, std::vector<TextEdit> edits);

// Range to delete so that the text [begin, end) disappears. When it is the
// only thing on its lines (besides blanks and a trailing line comment) the
// whole lines go, otherwise just the text and the blanks after it.
TextEdit DeletionFor(std::string_view source, size_t begin, size_t end);

// Leading whitespace of the line containing `offset`.
std::string IndentationAt(std::string_view source, size_t offset);

}  // namespace stubscrub

#endif  // STUBSCRUB_TEXT_EDIT_H_
