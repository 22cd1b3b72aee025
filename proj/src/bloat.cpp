#include "taptrim/bloat.hpp"

#include <deque>

#include "taptrim/error.hpp"
#include "taptrim/resource_refs.hpp"

namespace taptrim {

namespace {

void check_origin(const Package& pkg, const ReachabilityResult& result) {
  if (package_digest(pkg) != result.package_digest) {
    throw Error(ErrorKind::ConfigMismatch,
                "reachability result was computed from a different package");
  }
}

std::string_view blob_text(const Bytes& data) {
  return {reinterpret_cast<const char*>(data.data()), data.size()};
}

}  // namespace

CodeBloatReport detect_code_bloat(const Package& pkg, const ReachabilityResult& result) {
  check_origin(pkg, result);
  CodeBloatReport report;
  for (const auto& [name, cls] : pkg.classes) {
    if (!result.kept_classes.contains(name)) {
      std::uint64_t bytes = serialize_class_text(cls).size();
      report.removable_classes.emplace(name, bytes);
      report.total_bytes += bytes;
      continue;
    }
    for (const auto& m : cls.methods) {
      MethodRef ref{name, m.name, m.descriptor};
      if (result.kept_methods.contains(ref)) continue;
      std::uint64_t bytes = method_text_size(m);
      report.removable_methods.emplace(std::move(ref), bytes);
      report.total_bytes += bytes;
    }
  }
  return report;
}

std::set<std::uint32_t> live_resource_ids(const Package& pkg, const ReachabilityResult& result,
                                          bool paper_strict) {
  std::set<std::uint32_t> live = result.used_resource_ids;
  if (paper_strict) return live;

  std::deque<std::uint32_t> work(live.begin(), live.end());
  while (!work.empty()) {
    const ResourceEntry* entry = pkg.resource_table.find(work.front());
    work.pop_front();
    if (entry == nullptr || !entry->path) continue;
    auto file = pkg.res_files.find(*entry->path);
    if (file == pkg.res_files.end()) continue;
    for (const auto& ref : scan_resource_refs(blob_text(file->second))) {
      auto type = resource_type_from_string(ref.type);
      if (!type) continue;
      const ResourceEntry* target = pkg.resource_table.find(*type, ref.name);
      if (target != nullptr && live.insert(target->id).second) work.push_back(target->id);
    }
  }
  return live;
}

ResBloatReport detect_res_bloat(const Package& pkg, const ReachabilityResult& result,
                                bool paper_strict) {
  check_origin(pkg, result);
  std::set<std::uint32_t> live = live_resource_ids(pkg, result, paper_strict);
  ResBloatReport report;
  for (const auto& e : pkg.resource_table.entries) {
    if (!is_file_resource(e.type) || live.contains(e.id)) continue;
    std::uint64_t bytes = pkg.res_files.at(*e.path).size();
    report.unused_entries.emplace(e.id, bytes);
    report.bytes += bytes;
    report.table_bytes += serialize_resource_row(e).size();
  }
  return report;
}

bool asset_is_referenced(std::string_view asset_path, const std::set<std::string>& strings,
                         bool paper_strict) {
  constexpr std::string_view prefix = "assets/";
  std::string_view relative =
      asset_path.starts_with(prefix) ? asset_path.substr(prefix.size()) : asset_path;

  auto dir_prefix = [](std::string_view s, std::string_view path) {
    if (s.empty() || s.size() >= path.size() || !path.starts_with(s)) return false;
    return s.back() == '/' || path[s.size()] == '/';
  };

  for (const auto& s : strings) {
    if (s == asset_path || s == relative) return true;
    if (!paper_strict && (dir_prefix(s, asset_path) || dir_prefix(s, relative))) return true;
  }
  return false;
}

AssetBloatReport detect_asset_bloat(const Package& pkg, const ReachabilityResult& result,
                                    bool paper_strict) {
  check_origin(pkg, result);
  AssetBloatReport report;
  for (const auto& [path, data] : pkg.asset_files) {
    if (asset_is_referenced(path, result.asset_strings, paper_strict)) continue;
    report.unused_assets.emplace(path, data.size());
    report.bytes += data.size();
  }
  return report;
}

}  // namespace taptrim
