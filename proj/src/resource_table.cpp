#include <array>
#include <set>

#include "taptrim/error.hpp"
#include "taptrim/package.hpp"
#include "text_util.hpp"

namespace taptrim {

namespace {

constexpr std::array<std::pair<ResourceType, std::string_view>, 7> kTypeNames{{
    {ResourceType::Drawable, "drawable"},
    {ResourceType::Layout, "layout"},
    {ResourceType::String, "string"},
    {ResourceType::Color, "color"},
    {ResourceType::Attr, "attr"},
    {ResourceType::Array, "array"},
    {ResourceType::Other, "other"},
}};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool is_resource_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(ResourceType type) {
  for (const auto& [t, name] : kTypeNames) {
    if (t == type) return name;
  }
  return "other";
}

std::optional<ResourceType> resource_type_from_string(std::string_view text) {
  for (const auto& [t, name] : kTypeNames) {
    if (name == text) return t;
  }
  return std::nullopt;
}

bool is_file_resource(ResourceType type) {
  return type == ResourceType::Drawable || type == ResourceType::Layout;
}

const ResourceEntry* ResourceTable::find(std::uint32_t id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const ResourceEntry* ResourceTable::find(ResourceType type, std::string_view name) const {
  for (const auto& e : entries) {
    if (e.type == type && e.name == name) return &e;
  }
  return nullptr;
}

std::string format_resource_id(std::uint32_t id) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "0x";
  for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kHex[(id >> shift) & 0xf]);
  return out;
}

ResourceTable parse_resource_table(std::string_view text) {
  ResourceTable table;
  std::set<std::uint32_t> ids;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::TableParseError, why, std::string(kResourceTablePath), line_no);
  };

  for_each_line(text, [&](std::string_view raw) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (trim(raw).empty() || raw.front() == '#') return;
    auto cols = split_tabs(raw);
    if (cols.size() != 4) fail("expected 4 tab-separated columns");

    ResourceEntry e;
    auto id = parse_resource_id(cols[0]);
    if (!id) fail("bad resource id '" + std::string(cols[0]) + "'");
    e.id = *id;
    auto type = resource_type_from_string(cols[1]);
    if (!type) fail("unknown resource type '" + std::string(cols[1]) + "'");
    e.type = *type;
    if (!is_resource_name(cols[2])) fail("bad resource name '" + std::string(cols[2]) + "'");
    e.name = std::string(cols[2]);
    if (!cols[3].empty()) {
      if (!cols[3].starts_with("res/") || cols[3] == kResourceTablePath) {
        fail("resource path must point under res/: '" + std::string(cols[3]) + "'");
      }
      e.path = std::string(cols[3]);
    }
    if (is_file_resource(e.type) && !e.path) fail(std::string(cols[1]) + " entry needs a path");
    if (!is_file_resource(e.type) && e.type != ResourceType::Other && e.path) {
      fail(std::string(cols[1]) + " entry must not have a path");
    }
    if (!ids.insert(e.id).second) fail("duplicate resource id " + format_resource_id(e.id));
    table.entries.push_back(std::move(e));
  });
  return table;
}

std::string serialize_resource_row(const ResourceEntry& e) {
  std::string row = format_resource_id(e.id);
  row += '\t';
  row += to_string(e.type);
  row += '\t';
  row += e.name;
  row += '\t';
  if (e.path) row += *e.path;
  row += '\n';
  return row;
}

std::string serialize_resource_table(const ResourceTable& table) {
  std::string out;
  for (const auto& e : table.entries) out += serialize_resource_row(e);
  return out;
}

}  // namespace taptrim
