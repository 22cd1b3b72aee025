#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include "taptrim/package.hpp"

namespace testkit {

inline taptrim::Bytes bytes(std::string_view s) { return taptrim::Bytes(s.begin(), s.end()); }

// Manifest with one main activity plus the given class texts.
inline taptrim::Package package_of(const std::string& main_activity,
                                   std::initializer_list<std::string_view> class_texts) {
  taptrim::Package pkg;
  pkg.manifest.package_name = main_activity.substr(0, main_activity.rfind('.'));
  pkg.manifest.activities.push_back(main_activity);
  pkg.manifest.main_activity = main_activity;
  for (auto text : class_texts) {
    taptrim::ClassDef cls = taptrim::parse_class_text(text);
    pkg.classes.emplace(cls.name, std::move(cls));
  }
  return pkg;
}

inline void add_file_resource(taptrim::Package& pkg, std::uint32_t id, taptrim::ResourceType type,
                              const std::string& name, const std::string& path,
                              std::string_view content) {
  pkg.resource_table.entries.push_back({id, type, name, path});
  pkg.res_files[path] = bytes(content);
}

}  // namespace testkit
