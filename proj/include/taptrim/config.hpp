#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace taptrim {

// Keep rules and namespace lists driving reachability, verification and
// library attribution.
struct TrimConfig {
  // Namespaces provided by the platform; references into them are never
  // treated as missing.
  std::vector<std::string> platform_prefixes{"android.", "java.", "javax.", "kotlin."};
  // Subclasses of these are entry points.
  std::vector<std::string> entry_bases{
      "android.app.Application",         "android.app.Activity",
      "android.app.Service",             "android.content.BroadcastReceiver",
      "android.content.ContentProvider",
  };
  std::string enum_base = "java.lang.Enum";
  // Method-name globs kept in seed classes.
  std::vector<std::string> callback_patterns{"on*", "<init>", "<clinit>"};
  // Class-name globs that are always seeds.
  std::vector<std::string> extra_keep;
  std::vector<std::string> library_prefixes{
      "android.support.", "androidx.",   "com.google.", "kotlin.",
      "kotlinx.",         "okhttp3.",    "okio.",       "retrofit2.",
      "io.reactivex.",    "com.squareup.", "org.apache.", "org.json.",
  };
  // Package byte of the app's own resource IDs (0x7fXXXXXX). IDs with any
  // other package byte belong to the platform and are never dangling.
  std::uint8_t app_resource_package = 0x7f;

  // Res-to-res closure and asset directory-prefix matching are disabled.
  bool paper_strict = false;

  bool is_platform(std::string_view fqn) const;
  bool is_library(std::string_view fqn) const;
  bool is_callback(std::string_view method_name) const;
  bool is_extra_keep(std::string_view fqn) const;

  // Throws Error{ConfigError} on empty prefix lists or malformed globs.
  void validate() const;
};

// Shell-style glob (`*`, `?`, `[...]`).
bool glob_match(std::string_view pattern, std::string_view text);
bool glob_is_valid(std::string_view pattern);

// Applies a `key: value` config text on top of `base`. The first occurrence
// of a list key replaces the inherited list; later occurrences append.
// Keys: platform-prefix, entry-base, enum-base, callback, keep,
// library-prefix, app-resource-package, paper-strict.
TrimConfig parse_config(std::string_view text, TrimConfig base = {});
TrimConfig load_config(const std::string& path, TrimConfig base = {});

}  // namespace taptrim
