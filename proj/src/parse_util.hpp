#pragma once

// Shared helpers for the line-oriented text formats. A line whose first
// non-space character is '%' is a comment; blank lines are significant only
// where a format says so (graph vertex lines).

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "mapspan/errors.hpp"

namespace mapspan::parse {

struct Line {
  std::string_view text;
  int number = 0;  // 1-based line number in the source
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back({text.substr(start), number});
      break;
    }
    lines.push_back({text.substr(start, end - start), number});
    start = end + 1;
    ++number;
  }
  return lines;
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

inline bool is_comment_or_blank(std::string_view line) {
  for (char c : line) {
    if (is_space(c)) continue;
    return c == '%';
  }
  return true;
}

inline bool is_blank(std::string_view line) {
  for (char c : line) {
    if (!is_space(c)) return false;
  }
  return true;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] inline void fail(std::string_view source, int line, const std::string& message,
                              ErrorCode code = ErrorCode::ParseError) {
  throw Error(code, std::string(source) + ":" + std::to_string(line) + ": " + message);
}

inline long long parse_int(std::string_view token, std::string_view source, int line,
                           const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    fail(source, line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  return value;
}

}  // namespace mapspan::parse
