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

#ifndef STUBSCRUB_TESTS_SUPPORT_COGNITIVE_SNIPPETS_H_
#define STUBSCRUB_TESTS_SUPPORT_COGNITIVE_SNIPPETS_H_

#include <string>
#include <vector>

namespace stubscrub::testing {

struct CognitiveSnippet {
  const char* name;
  const char* code;  // a single method declaration
  int expected;
};

// Methods with hand-computed cognitive complexity scores.
const std::vector<CognitiveSnippet>& CognitiveSnippets();

// Cognitive complexity of a single method declaration.
int ScoreMethod(const std::string& method);

}  // namespace stubscrub::testing

#endif  // STUBSCRUB_TESTS_SUPPORT_COGNITIVE_SNIPPETS_H_
