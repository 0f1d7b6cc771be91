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

#include "stubscrub/trace_model.h"

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace stubscrub {

namespace {

constexpr std::string_view kTestStart = "test_start";
constexpr std::string_view kTestEnd = "test_end";
constexpr std::string_view kExecStart = "test_method_execution_start";
constexpr std::string_view kExecEnd = "test_method_execution_end";
constexpr std::string_view kCreationStart = "stub_creation_info_start";
constexpr std::string_view kCreationEnd = "stub_creation_info_end";
constexpr std::string_view kInvocationStart = "stub_invocation_info_start";
constexpr std::string_view kInvocationEnd = "stub_invocation_info_end";
constexpr std::string_view kUnnecessaryStart =
    "unnecessary_stubbing_info_start";
constexpr std::string_view kUnnecessaryEnd = "unnecessary_stubbing_info_end";

std::optional<std::int64_t> ParseInt(std::string_view text) {
  std::int64_t value = 0;
  if (text.empty()) return std::nullopt;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::string_view Trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t' ||
                           text.front() == '\r')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  return text;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// "file:line[:occ]"
std::optional<CodeLocation> ParseFileLine(std::string_view text) {
  auto parts = Split(text, ':');
  if (parts.size() < 2) return std::nullopt;
  CodeLocation loc;
  size_t file_parts = parts.size() - 1;
  if (parts.size() >= 3 && ParseInt(parts[parts.size() - 1]) &&
      ParseInt(parts[parts.size() - 2])) {
    file_parts = parts.size() - 2;
    loc.occurrence_index = static_cast<int>(*ParseInt(parts.back()));
    loc.line = static_cast<int>(*ParseInt(parts[parts.size() - 2]));
  } else {
    auto line = ParseInt(parts.back());
    if (!line) return std::nullopt;
    loc.line = static_cast<int>(*line);
  }
  std::string file;
  for (size_t i = 0; i < file_parts; ++i) {
    if (i > 0) file += ':';
    file += parts[i];
  }
  if (file.empty() || loc.line < 1 || loc.occurrence_index < 0) {
    return std::nullopt;
  }
  loc.file_path = std::move(file);
  return loc;
}

std::string FormatFileLine(const CodeLocation& loc) {
  std::string out = loc.file_path + ":" + std::to_string(loc.line);
  if (loc.occurrence_index != 0) {
    out += ":" + std::to_string(loc.occurrence_index);
  }
  return out;
}

struct ParsedStubbingLocation {
  std::string declaring_class;
  std::string method_name;
  CodeLocation location;
};

std::optional<ParsedStubbingLocation> ParseStubbingLocation(
    std::string_view text) {
  if (text.empty() || text.back() != ')') return std::nullopt;
  size_t open = text.rfind('(');
  if (open == std::string_view::npos) return std::nullopt;
  std::string_view qualified = text.substr(0, open);
  size_t dot = qualified.rfind('.');
  if (dot == std::string_view::npos || dot == 0 ||
      dot + 1 == qualified.size()) {
    return std::nullopt;
  }
  auto loc = ParseFileLine(text.substr(open + 1, text.size() - open - 2));
  if (!loc) return std::nullopt;
  return ParsedStubbingLocation{std::string(qualified.substr(0, dot)),
                                std::string(qualified.substr(dot + 1)),
                                std::move(*loc)};
}

std::optional<std::vector<StackFrame>> ParseStack(std::string_view text) {
  std::vector<StackFrame> frames;
  for (std::string_view piece : Split(text, '#')) {
    if (piece.empty()) continue;
    auto fields = Split(piece, ';');
    if (fields.size() != 4) return std::nullopt;
    auto line = ParseInt(fields[3]);
    if (!line || *line < 1 || fields[0].empty() || fields[1].empty() ||
        fields[2].empty()) {
      return std::nullopt;
    }
    frames.push_back(StackFrame{std::string(fields[0]), std::string(fields[1]),
                                std::string(fields[2]),
                                static_cast<int>(*line)});
  }
  if (frames.empty()) return std::nullopt;
  return frames;
}

std::string FormatStack(const std::vector<StackFrame>& stack) {
  std::string out;
  for (const StackFrame& frame : stack) {
    out += frame.file_path + ";" + frame.declaring_class + ";" +
           frame.method_name + ";" + std::to_string(frame.line) + "#";
  }
  return out;
}

std::string DefinitionLocationText(const StubbingDefinitionEvent& def) {
  const StackFrame& top = def.stack.front();
  return FormatStubbingLocation(top.declaring_class, top.method_name,
                                def.location);
}

// Line-by-line state machine over the nesting
// test > execution > {creation, invocation} and test > unnecessary.
class TraceParser {
 public:
  explicit TraceParser(std::string_view text) : text_(text) {}

  ExecutionTrace Run() {
    size_t pos = 0;
    while (pos <= text_.size()) {
      size_t nl = text_.find('\n', pos);
      std::string_view raw = nl == std::string_view::npos
                                 ? text_.substr(pos)
                                 : text_.substr(pos, nl - pos);
      ++line_no_;
      HandleLine(Trim(raw));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (state_ != State::kTop) Fail("unterminated block at end of input");
    return std::move(trace_);
  }

 private:
  enum class State {
    kTop,
    kTest,
    kExecution,
    kCreation,
    kInvocation,
    kAfterExecution,
    kUnnecessary,
  };

  struct PendingReference {
    int line = 0;
    StubbingId id;
    std::string method_class;
    std::string method_name;
    std::string stubbing_location;
    std::optional<CodeLocation> call_site;
    bool has_id = false;
  };

  [[noreturn]] void Fail(const std::string& message) const {
    throw TraceParseError(line_no_, message);
  }

  static std::pair<std::string_view, std::optional<std::string_view>>
  SplitKey(std::string_view line) {
    size_t colon = line.find(':');
    if (colon == std::string_view::npos) return {line, std::nullopt};
    return {line.substr(0, colon), line.substr(colon + 1)};
  }

  void HandleLine(std::string_view line) {
    if (line.empty()) return;
    auto [key, value] = SplitKey(line);
    switch (state_) {
      case State::kTop:
        if (line != kTestStart) Fail("expected test_start");
        record_ = TestExecutionRecord{};
        pending_.clear();
        state_ = State::kTest;
        return;
      case State::kTest:
        if (line != kExecStart) Fail("expected test_method_execution_start");
        state_ = State::kExecution;
        return;
      case State::kExecution:
        if (line == kCreationStart) {
          definition_ = StubbingDefinitionEvent{};
          has_id_ = has_location_ = has_stack_ = false;
          state_ = State::kCreation;
        } else if (line == kInvocationStart) {
          reference_ = PendingReference{};
          reference_.line = line_no_;
          state_ = State::kInvocation;
        } else if (line == kExecEnd) {
          if (record_.test_class.empty() || record_.test_name.empty()) {
            Fail("test record without test_method_class/test_method_name");
          }
          state_ = State::kAfterExecution;
        } else if (value && key == "test_method_class") {
          record_.test_class = std::string(*value);
        } else if (value && key == "test_method_name") {
          record_.test_name = std::string(*value);
        } else {
          Fail("unexpected line in test execution: " + std::string(line));
        }
        return;
      case State::kCreation:
        HandleCreationLine(line, key, value);
        return;
      case State::kInvocation:
      case State::kUnnecessary:
        HandleReferenceLine(line, key, value);
        return;
      case State::kAfterExecution:
        if (line == kUnnecessaryStart) {
          reference_ = PendingReference{};
          reference_.line = line_no_;
          state_ = State::kUnnecessary;
        } else if (line == kTestEnd) {
          FinishRecord();
          state_ = State::kTop;
        } else {
          Fail("expected unnecessary_stubbing_info_start or test_end");
        }
        return;
    }
  }

  void HandleCreationLine(std::string_view line, std::string_view key,
                          std::optional<std::string_view> value) {
    if (line == kCreationEnd) {
      if (!has_id_ || !has_location_ || !has_stack_ ||
          definition_.stubbed_class.empty() ||
          definition_.stubbed_method.empty()) {
        Fail("incomplete stub_creation_info block");
      }
      const StackFrame& top = definition_.stack.front();
      if (top.file_path != definition_.location.file_path ||
          top.line != definition_.location.line ||
          top.declaring_class != location_class_ ||
          top.method_name != location_method_) {
        Fail("stubbing_location does not match the innermost stack frame");
      }
      record_.definitions.push_back(std::move(definition_));
      state_ = State::kExecution;
      return;
    }
    if (!value) Fail("unexpected line in stub_creation_info block");
    if (key == "stubbing_id") {
      definition_.stubbing_id = ParseIdOrFail(*value);
      has_id_ = true;
    } else if (key == "stubbed_method_class") {
      definition_.stubbed_class = std::string(*value);
    } else if (key == "stubbed_method_name") {
      definition_.stubbed_method = std::string(*value);
    } else if (key == "stubbing_location") {
      auto parsed = ParseStubbingLocation(*value);
      if (!parsed) Fail("malformed stubbing_location");
      definition_.location = parsed->location;
      location_class_ = parsed->declaring_class;
      location_method_ = parsed->method_name;
      has_location_ = true;
    } else if (key == "stack") {
      auto frames = ParseStack(*value);
      if (!frames) Fail("malformed stack");
      definition_.stack = std::move(*frames);
      has_stack_ = true;
    } else {
      Fail("unknown key '" + std::string(key) + "'");
    }
  }

  void HandleReferenceLine(std::string_view line, std::string_view key,
                           std::optional<std::string_view> value) {
    bool invocation = state_ == State::kInvocation;
    if (line == (invocation ? kInvocationEnd : kUnnecessaryEnd)) {
      if (!reference_.has_id || reference_.method_class.empty() ||
          reference_.method_name.empty() ||
          reference_.stubbing_location.empty() ||
          (invocation && !reference_.call_site)) {
        Fail(invocation ? "incomplete stub_invocation_info block"
                        : "incomplete unnecessary_stubbing_info block");
      }
      pending_.push_back({invocation, reference_});
      state_ = invocation ? State::kExecution : State::kAfterExecution;
      return;
    }
    if (!value) Fail("unexpected line in info block");
    if (key == "stubbing_id") {
      reference_.id = ParseIdOrFail(*value);
      reference_.has_id = true;
    } else if (key == (invocation ? "invoked_method_class"
                                  : "stubbed_method_class")) {
      reference_.method_class = std::string(*value);
    } else if (key == (invocation ? "invoked_method_name"
                                  : "stubbed_method_name")) {
      reference_.method_name = std::string(*value);
    } else if (key == "stubbing_location") {
      reference_.stubbing_location = std::string(*value);
    } else if (invocation && key == "invocation_location") {
      reference_.call_site = ParseFileLine(*value);
      if (!reference_.call_site) Fail("malformed invocation_location");
    } else {
      Fail("unknown key '" + std::string(key) + "'");
    }
  }

  StubbingId ParseIdOrFail(std::string_view text) {
    try {
      return StubbingId::Parse(text);
    } catch (const std::invalid_argument& e) {
      Fail(e.what());
    }
  }

  void FinishRecord() {
    std::map<StubbingId, const StubbingDefinitionEvent*> by_id;
    for (const auto& def : record_.definitions) {
      if (!by_id.emplace(def.stubbing_id, &def).second) {
        throw TraceParseError(line_no_, "duplicate stubbing_id " +
                                            def.stubbing_id.ToString());
      }
    }
    std::vector<StubbingDefinitionEvent> unnecessary;
    for (const auto& [invocation, ref] : pending_) {
      auto it = by_id.find(ref.id);
      if (it == by_id.end() ||
          DefinitionLocationText(*it->second) != ref.stubbing_location) {
        throw TraceParseError(ref.line, "stubbing id mismatch for " +
                                            ref.id.ToString());
      }
      const StubbingDefinitionEvent& def = *it->second;
      if (invocation) {
        record_.invocations.push_back(StubbingInvocationEvent{
            ref.id, ref.method_class, ref.method_name, *ref.call_site,
            def.location});
      } else {
        if (ref.method_class != def.stubbed_class ||
            ref.method_name != def.stubbed_method) {
          throw TraceParseError(ref.line, "unnecessary entry disagrees with "
                                          "its definition for " +
                                              ref.id.ToString());
        }
        unnecessary.push_back(def);
      }
    }
    record_.unnecessary = std::move(unnecessary);
    for (const auto& existing : trace_.records) {
      if (existing.test_class == record_.test_class &&
          existing.test_name == record_.test_name) {
        throw TraceParseError(line_no_, "duplicate test record " +
                                            record_.test_class + "." +
                                            record_.test_name);
      }
    }
    trace_.records.push_back(std::move(record_));
  }

  std::string_view text_;
  int line_no_ = 0;
  State state_ = State::kTop;
  ExecutionTrace trace_;
  TestExecutionRecord record_;
  StubbingDefinitionEvent definition_;
  std::string location_class_;
  std::string location_method_;
  bool has_id_ = false;
  bool has_location_ = false;
  bool has_stack_ = false;
  PendingReference reference_;
  std::vector<std::pair<bool, PendingReference>> pending_;
};

}  // namespace

std::string CodeLocation::ToString() const {
  return file_path + ":" + std::to_string(line) + ":" +
         std::to_string(occurrence_index);
}

std::string StubbingId::ToString() const {
  return double_class + "#" + method_name + "#" + std::to_string(serial);
}

StubbingId StubbingId::Parse(std::string_view text) {
  size_t last = text.rfind('#');
  if (last == std::string_view::npos || last == 0) {
    throw std::invalid_argument("malformed stubbing id '" + std::string(text) +
                                "'");
  }
  size_t middle = text.rfind('#', last - 1);
  auto serial = ParseInt(text.substr(last + 1));
  if (middle == std::string_view::npos || middle == 0 || !serial ||
      *serial < 0 || middle + 1 == last) {
    throw std::invalid_argument("malformed stubbing id '" + std::string(text) +
                                "'");
  }
  return StubbingId{std::string(text.substr(0, middle)),
                    std::string(text.substr(middle + 1, last - middle - 1)),
                    *serial};
}

TraceParseError::TraceParseError(int line, const std::string& message)
    : std::runtime_error("execution info line " + std::to_string(line) +
                         ": " + message),
      line_(line) {}

std::vector<StubbingDefinitionEvent> ComputeUnnecessary(
    const std::vector<StubbingDefinitionEvent>& definitions,
    const std::vector<StubbingInvocationEvent>& invocations) {
  std::set<StubbingId> defined;
  for (const auto& def : definitions) defined.insert(def.stubbing_id);
  std::set<StubbingId> invoked;
  for (const auto& inv : invocations) {
    if (!defined.contains(inv.stubbing_id)) {
      throw TraceConsistencyError("invocation of undefined stubbing " +
                                  inv.stubbing_id.ToString());
    }
    invoked.insert(inv.stubbing_id);
  }
  std::vector<StubbingDefinitionEvent> result;
  for (const auto& def : definitions) {
    if (!invoked.contains(def.stubbing_id)) result.push_back(def);
  }
  return result;
}

std::string FormatStubbingLocation(std::string_view declaring_class,
                                   std::string_view method_name,
                                   const CodeLocation& location) {
  return std::string(declaring_class) + "." + std::string(method_name) + "(" +
         FormatFileLine(location) + ")";
}

ExecutionTrace ParseTrace(std::string_view text) {
  return TraceParser(text).Run();
}

std::string SerializeRecord(const TestExecutionRecord& record) {
  std::map<StubbingId, const StubbingDefinitionEvent*> by_id;
  for (const auto& def : record.definitions) by_id[def.stubbing_id] = &def;

  std::ostringstream out;
  out << kTestStart << '\n' << kExecStart << '\n';
  out << "test_method_class:" << record.test_class << '\n';
  out << "test_method_name:" << record.test_name << '\n';
  for (const auto& def : record.definitions) {
    out << kCreationStart << '\n';
    out << "stubbing_id:" << def.stubbing_id.ToString() << '\n';
    out << "stubbed_method_class:" << def.stubbed_class << '\n';
    out << "stubbed_method_name:" << def.stubbed_method << '\n';
    out << "stubbing_location:" << DefinitionLocationText(def) << '\n';
    out << "stack:" << FormatStack(def.stack) << '\n';
    out << kCreationEnd << '\n';
  }
  for (const auto& inv : record.invocations) {
    out << kInvocationStart << '\n';
    out << "stubbing_id:" << inv.stubbing_id.ToString() << '\n';
    out << "invoked_method_class:" << inv.invoked_class << '\n';
    out << "invoked_method_name:" << inv.invoked_method << '\n';
    out << "invocation_location:" << FormatFileLine(inv.call_site) << '\n';
    auto it = by_id.find(inv.stubbing_id);
    out << "stubbing_location:"
        << (it != by_id.end()
                ? DefinitionLocationText(*it->second)
                : FormatStubbingLocation("?", "?", inv.definition_location))
        << '\n';
    out << kInvocationEnd << '\n';
  }
  out << kExecEnd << '\n';
  for (const auto& def : record.unnecessary) {
    out << kUnnecessaryStart << '\n';
    out << "stubbing_id:" << def.stubbing_id.ToString() << '\n';
    out << "stubbed_method_class:" << def.stubbed_class << '\n';
    out << "stubbed_method_name:" << def.stubbed_method << '\n';
    out << "stubbing_location:" << DefinitionLocationText(def) << '\n';
    out << kUnnecessaryEnd << '\n';
  }
  out << kTestEnd << '\n';
  return out.str();
}

std::string SerializeTrace(const ExecutionTrace& trace) {
  std::string out;
  for (const auto& record : trace.records) out += SerializeRecord(record);
  return out;
}

}  // namespace stubscrub
