#include "taptrim/report.hpp"

#include <cstdio>
#include <json.hpp>

#include "taptrim/error.hpp"

namespace taptrim {

namespace {

using nlohmann::ordered_json;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json sizes_json(const ComponentSizes& s) {
  return {{"res", s.res_bytes},       {"assets", s.assets_bytes}, {"native", s.native_bytes},
          {"code", s.code_bytes},     {"config", s.config_bytes}, {"total", s.total()}};
}

ordered_json composition_json(const CompositionReport& c) {
  return {{"sizes", sizes_json(c.sizes)},
          {"percent",
           {{"res", c.res.str()},
            {"assets", c.assets.str()},
            {"native", c.native.str()},
            {"code", c.code.str()},
            {"config", c.config.str()},
            {"images", c.images.str()},
            {"layouts", c.layouts.str()}}},
          {"image_bytes", c.image_bytes},
          {"layout_bytes", c.layout_bytes}};
}

ordered_json metrics_json(const std::string& name, const PackageMetrics& m) {
  return {{"package", name},           {"total_bytes", m.total_bytes},
          {"archive_bytes", m.archive_bytes}, {"image_count", m.image_count},
          {"image_bytes", m.image_bytes},     {"page_count", m.page_count},
          {"sizes", sizes_json(m.sizes)}};
}

std::string res_label(const Package& pkg, std::uint32_t id) {
  const ResourceEntry* e = pkg.resource_table.find(id);
  if (e == nullptr) return format_resource_id(id);
  return std::string(to_string(e->type)) + "/" + e->name;
}

std::string join(const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) out += '\t';
    out += cols[i];
  }
  return out + "\n";
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "tsv") return Format::Tsv;
  throw Error(ErrorKind::ConfigError, "unknown report format '" + std::string(text) + "'");
}

std::string format_fraction(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string render_analyze(const std::vector<AnalyzeRow>& rows, Format format) {
  if (format == Format::Json) {
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j{{"package", r.package}, {"composition", composition_json(r.composition)}};
      j["library_ratio"] = r.library_ratio ? ordered_json(*r.library_ratio) : ordered_json();
      out.push_back(std::move(j));
    }
    return dump(out);
  }
  std::string out = join({"package", "total_bytes", "res_bytes", "assets_bytes", "native_bytes",
                          "code_bytes", "config_bytes", "res_pct", "assets_pct", "native_pct",
                          "code_pct", "config_pct", "images_pct", "layouts_pct", "library_ratio"});
  for (const auto& r : rows) {
    const auto& c = r.composition;
    out += join({r.package, std::to_string(c.sizes.total()), std::to_string(c.sizes.res_bytes),
                 std::to_string(c.sizes.assets_bytes), std::to_string(c.sizes.native_bytes),
                 std::to_string(c.sizes.code_bytes), std::to_string(c.sizes.config_bytes),
                 c.res.str(), c.assets.str(), c.native.str(), c.code.str(), c.config.str(),
                 c.images.str(), c.layouts.str(),
                 r.library_ratio ? format_fraction(*r.library_ratio) : "NA"});
  }
  return out;
}

std::string render_bloat(const Package& pkg, const BloatReports& bloat, Format format) {
  if (format == Format::Json) {
    ordered_json classes = ordered_json::object();
    for (const auto& [name, bytes] : bloat.code.removable_classes) classes[name] = bytes;
    ordered_json methods = ordered_json::object();
    for (const auto& [ref, bytes] : bloat.code.removable_methods) methods[to_string(ref)] = bytes;
    ordered_json res = ordered_json::object();
    for (const auto& [id, bytes] : bloat.res.unused_entries) res[res_label(pkg, id)] = bytes;
    ordered_json assets = ordered_json::object();
    for (const auto& [path, bytes] : bloat.assets.unused_assets) assets[path] = bytes;
    return dump({{"code",
                  {{"removable_classes", classes},
                   {"removable_methods", methods},
                   {"total_bytes", bloat.code.total_bytes}}},
                 {"res",
                  {{"unused_entries", res},
                   {"bytes", bloat.res.bytes},
                   {"table_bytes", bloat.res.table_bytes}}},
                 {"assets", {{"unused_assets", assets}, {"bytes", bloat.assets.bytes}}}});
  }
  std::string out = join({"kind", "identifier", "bytes"});
  for (const auto& [name, bytes] : bloat.code.removable_classes) {
    out += join({"class", name, std::to_string(bytes)});
  }
  for (const auto& [ref, bytes] : bloat.code.removable_methods) {
    out += join({"method", to_string(ref), std::to_string(bytes)});
  }
  for (const auto& [id, bytes] : bloat.res.unused_entries) {
    out += join({"res", res_label(pkg, id), std::to_string(bytes)});
  }
  for (const auto& [path, bytes] : bloat.assets.unused_assets) {
    out += join({"asset", path, std::to_string(bytes)});
  }
  return out;
}

std::string render_trim(const TrimReport& report, Format format) {
  if (format == Format::Json) {
    ordered_json stages = ordered_json::array();
    for (const auto& s : report.stages) {
      ordered_json removed = ordered_json::array();
      for (const auto& item : s.removed) {
        removed.push_back({{"kind", item.kind}, {"identifier", item.identifier}, {"bytes", item.bytes}});
      }
      ordered_json counts = ordered_json::object();
      for (const auto& [kind, n] : s.items_removed) counts[kind] = n;
      stages.push_back({{"stage", to_string(s.stage)},
                        {"items_removed", counts},
                        {"bytes_removed", s.bytes_removed},
                        {"removed", removed}});
    }
    return dump({{"original_sizes", sizes_json(report.original_sizes)},
                 {"trimmed_sizes", sizes_json(report.trimmed_sizes)},
                 {"absolute_reduction", report.absolute_reduction},
                 {"normalized_reduction", report.normalized_reduction},
                 {"items_removed", report.items_removed_total()},
                 {"stages", stages}});
  }
  std::string out = join({"stage", "kind", "identifier", "bytes"});
  for (const auto& s : report.stages) {
    for (const auto& item : s.removed) {
      out += join({std::string(to_string(s.stage)), item.kind, item.identifier,
                   std::to_string(item.bytes)});
    }
  }
  return out;
}

std::string render_trim_table(const TrimReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %8s %12s\n", "stage", "items", "bytes");
  out += line;
  for (const auto& s : report.stages) {
    std::uint64_t items = 0;
    for (const auto& [kind, n] : s.items_removed) items += n;
    std::snprintf(line, sizeof line, "%-8s %8llu %12llu\n", std::string(to_string(s.stage)).c_str(),
                  static_cast<unsigned long long>(items),
                  static_cast<unsigned long long>(s.bytes_removed));
    out += line;
  }
  std::snprintf(line, sizeof line, "total: %llu -> %llu bytes (%.2f%% smaller)\n",
                static_cast<unsigned long long>(report.original_sizes.total()),
                static_cast<unsigned long long>(report.trimmed_sizes.total()),
                report.normalized_reduction * 100.0);
  out += line;
  return out;
}

std::string render_verify(const VerifyReport& report, Format format) {
  if (format == Format::Json) {
    ordered_json invokes = ordered_json::array();
    for (const auto& f : report.unresolved_invokes) {
      invokes.push_back({{"site", f.site}, {"owner", f.owner}, {"name", f.name},
                         {"descriptor", f.descriptor}});
    }
    ordered_json classes = ordered_json::array();
    for (const auto& f : report.missing_classes) classes.push_back({{"site", f.site}, {"class", f.name}});
    ordered_json ids = ordered_json::array();
    for (const auto& f : report.dangling_resource_ids) {
      ids.push_back({{"site", f.site}, {"id", format_resource_id(f.id)}});
    }
    ordered_json layouts = ordered_json::array();
    for (const auto& f : report.broken_layout_refs) {
      layouts.push_back({{"path", f.path}, {"reference", f.reference}});
    }
    return dump({{"ok", report.ok()},
                 {"unresolved_invokes", invokes},
                 {"missing_classes", classes},
                 {"dangling_resource_ids", ids},
                 {"broken_layout_refs", layouts}});
  }
  std::string out = join({"finding", "site", "target"});
  for (const auto& f : report.unresolved_invokes) {
    out += join({"unresolved-invoke", f.site, f.owner + "." + f.name + " " + f.descriptor});
  }
  for (const auto& f : report.missing_classes) out += join({"missing-class", f.site, f.name});
  for (const auto& f : report.dangling_resource_ids) {
    out += join({"dangling-resource", f.site, format_resource_id(f.id)});
  }
  for (const auto& f : report.broken_layout_refs) {
    out += join({"broken-layout-ref", f.path, f.reference});
  }
  return out;
}

std::string render_compare(const std::string& first_name, const std::string& second_name,
                           const PairReport& report, Format format) {
  if (format == Format::Json) {
    return dump({{"first", metrics_json(first_name, report.first)},
                 {"second", metrics_json(second_name, report.second)},
                 {"size_ratio", report.size_ratio}});
  }
  std::string out = join({"package", "total_bytes", "archive_bytes", "image_count",
                          "image_bytes", "page_count", "size_ratio"});
  for (const auto& [name, m] : {std::pair{first_name, report.first}, {second_name, report.second}}) {
    out += join({name, std::to_string(m.total_bytes), std::to_string(m.archive_bytes),
                 std::to_string(m.image_count), std::to_string(m.image_bytes),
                 std::to_string(m.page_count), format_fraction(report.size_ratio)});
  }
  return out;
}

}  // namespace taptrim
