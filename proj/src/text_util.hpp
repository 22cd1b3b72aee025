#pragma once

// Small line/token helpers shared by the text formats. Internal header.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

namespace taptrim {

inline std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

// Splits at the first run of blanks; both halves trimmed.
inline std::pair<std::string_view, std::string_view> split_first(std::string_view s) {
  s = trim(s);
  auto pos = s.find_first_of(" \t");
  if (pos == std::string_view::npos) return {s, {}};
  return {s.substr(0, pos), trim(s.substr(pos))};
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  while (!text.empty()) {
    auto nl = text.find('\n');
    if (nl == std::string_view::npos) {
      fn(text);
      return;
    }
    fn(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
}

inline bool is_fqn(std::string_view s) {
  if (s.empty()) return false;
  bool segment_start = true;
  for (char c : s) {
    if (c == '.') {
      if (segment_start) return false;
      segment_start = true;
      continue;
    }
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
              (!segment_start && c >= '0' && c <= '9');
    if (!ok) return false;
    segment_start = false;
  }
  return !segment_start;
}

// Accepts exactly "0x" followed by eight hex digits (either case).
inline std::optional<std::uint32_t> parse_resource_id(std::string_view s) {
  if (s.size() != 10 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) return std::nullopt;
  std::uint32_t value = 0;
  auto digits = s.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

}  // namespace taptrim
