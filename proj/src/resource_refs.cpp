#include "taptrim/resource_refs.hpp"

#include "taptrim/package.hpp"

namespace taptrim {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '.';
}

bool is_tag_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '$' || c == '.';
}

}  // namespace

std::vector<ResourceRef> scan_resource_refs(std::string_view xml) {
  std::vector<ResourceRef> refs;
  for (std::size_t at = xml.find('@'); at != std::string_view::npos; at = xml.find('@', at + 1)) {
    std::size_t i = at + 1;
    std::size_t type_start = i;
    while (i < xml.size() && is_lower(xml[i])) ++i;
    if (i == type_start || i >= xml.size() || xml[i] != '/') continue;
    std::string_view type = xml.substr(type_start, i - type_start);
    std::size_t name_start = ++i;
    while (i < xml.size() && is_name_char(xml[i])) ++i;
    if (i == name_start) continue;
    refs.push_back({std::string(type), std::string(xml.substr(name_start, i - name_start))});
  }
  return refs;
}

std::vector<std::string> scan_widget_tags(std::string_view xml) {
  std::vector<std::string> tags;
  for (std::size_t at = xml.find('<'); at != std::string_view::npos; at = xml.find('<', at + 1)) {
    std::size_t i = at + 1;
    std::size_t start = i;
    while (i < xml.size() && is_tag_char(xml[i])) ++i;
    std::string_view tag = xml.substr(start, i - start);
    if (tag.find('.') == std::string_view::npos) continue;
    if (tag.front() == '.' || tag.back() == '.') continue;
    tags.emplace_back(tag);
  }
  return tags;
}

bool is_layout_path(std::string_view path) {
  return path.starts_with("res/layout/") && path.ends_with(".xml");
}

bool is_resource_index_class(std::string_view fqn) {
  std::string_view simple = simple_name(fqn);
  return simple == "R" || simple.starts_with("R$");
}

}  // namespace taptrim
