#include "taptrim/config.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "taptrim/error.hpp"
#include "text_util.hpp"

namespace taptrim {

namespace {

bool has_prefix(const std::vector<std::string>& prefixes, std::string_view fqn) {
  return std::any_of(prefixes.begin(), prefixes.end(),
                     [&](const std::string& p) { return fqn.starts_with(p); });
}

bool any_glob(const std::vector<std::string>& globs, std::string_view text) {
  return std::any_of(globs.begin(), globs.end(),
                     [&](const std::string& g) { return glob_match(g, text); });
}

}  // namespace

bool glob_is_valid(std::string_view pattern) {
  if (pattern.empty()) return false;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '\\') {
      if (++i >= pattern.size()) return false;
    } else if (pattern[i] == '[') {
      std::size_t j = i + 1;
      if (j < pattern.size() && (pattern[j] == '!' || pattern[j] == '^')) ++j;
      if (j < pattern.size() && pattern[j] == ']') ++j;
      while (j < pattern.size() && pattern[j] != ']') ++j;
      if (j >= pattern.size()) return false;
      i = j;
    }
  }
  return true;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  std::string p(pattern);
  std::string t(text);
  return fnmatch(p.c_str(), t.c_str(), 0) == 0;
}

bool TrimConfig::is_platform(std::string_view fqn) const { return has_prefix(platform_prefixes, fqn); }
bool TrimConfig::is_library(std::string_view fqn) const { return has_prefix(library_prefixes, fqn); }
bool TrimConfig::is_callback(std::string_view name) const { return any_glob(callback_patterns, name); }
bool TrimConfig::is_extra_keep(std::string_view fqn) const { return any_glob(extra_keep, fqn); }

void TrimConfig::validate() const {
  auto need = [](const std::vector<std::string>& list, const char* what) {
    if (list.empty()) throw Error(ErrorKind::ConfigError, std::string(what) + " list is empty");
    for (const auto& p : list) {
      if (p.empty()) throw Error(ErrorKind::ConfigError, std::string("empty ") + what);
    }
  };
  need(platform_prefixes, "platform-prefix");
  need(entry_bases, "entry-base");
  need(library_prefixes, "library-prefix");
  if (!is_fqn(enum_base)) throw Error(ErrorKind::ConfigError, "bad enum-base '" + enum_base + "'");
  for (const auto* globs : {&callback_patterns, &extra_keep}) {
    for (const auto& g : *globs) {
      if (!glob_is_valid(g)) throw Error(ErrorKind::ConfigError, "malformed glob '" + g + "'");
    }
  }
}

TrimConfig parse_config(std::string_view text, TrimConfig cfg) {
  std::set<std::string> replaced;
  std::size_t line_no = 0;
  auto list_value = [&](std::vector<std::string>& list, const std::string& key,
                        std::string value) {
    if (replaced.insert(key).second) list.clear();
    list.push_back(std::move(value));
  };

  for_each_line(text, [&](std::string_view raw) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorKind::ConfigError, "expected 'key: value'", {}, line_no);
    }
    std::string key(trim(line.substr(0, colon)));
    std::string value(trim(line.substr(colon + 1)));

    if (key == "platform-prefix") {
      list_value(cfg.platform_prefixes, key, value);
    } else if (key == "entry-base") {
      list_value(cfg.entry_bases, key, value);
    } else if (key == "enum-base") {
      cfg.enum_base = value;
    } else if (key == "callback") {
      list_value(cfg.callback_patterns, key, value);
    } else if (key == "keep") {
      list_value(cfg.extra_keep, key, value);
    } else if (key == "library-prefix") {
      list_value(cfg.library_prefixes, key, value);
    } else if (key == "app-resource-package") {
      unsigned v = 0;
      std::string_view digits(value);
      bool ok = digits.size() > 2 && digits.substr(0, 2) == "0x";
      if (ok) {
        auto [ptr, ec] = std::from_chars(digits.data() + 2, digits.data() + digits.size(), v, 16);
        ok = ec == std::errc{} && ptr == digits.data() + digits.size() && v <= 0xff;
      }
      if (!ok) {
        throw Error(ErrorKind::ConfigError, "bad app-resource-package '" + value + "'", {}, line_no);
      }
      cfg.app_resource_package = static_cast<std::uint8_t>(v);
    } else if (key == "paper-strict") {
      if (value != "true" && value != "false") {
        throw Error(ErrorKind::ConfigError, "paper-strict must be true or false", {}, line_no);
      }
      cfg.paper_strict = value == "true";
    } else {
      throw Error(ErrorKind::ConfigError, "unknown key '" + key + "'", {}, line_no);
    }
  });
  cfg.validate();
  return cfg;
}

TrimConfig load_config(const std::string& path, TrimConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read config file", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace taptrim
