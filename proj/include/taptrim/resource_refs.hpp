#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace taptrim {

// `@type/name` reference inside a res XML file. `@+id/...` definitions and
// namespaced references such as `@android:color/white` are not reported.
struct ResourceRef {
  std::string type;
  std::string name;
  bool operator==(const ResourceRef&) const = default;
};

std::vector<ResourceRef> scan_resource_refs(std::string_view xml);

// Element tags containing a dot, e.g. `<com.example.FancyView ...>`.
std::vector<std::string> scan_widget_tags(std::string_view xml);

bool is_layout_path(std::string_view path);

// Generated resource-index classes: simple name `R` or `R$<type>`.
bool is_resource_index_class(std::string_view fqn);

}  // namespace taptrim
