#include "taptrim/trimmer.hpp"

#include <algorithm>

#include "taptrim/bloat.hpp"
#include "taptrim/refgraph.hpp"

namespace taptrim {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Assets: return "assets";
    case Stage::Res: return "res";
    case Stage::Code: return "code";
  }
  return "unknown";
}

std::uint64_t TrimReport::items_removed_total() const {
  std::uint64_t n = 0;
  for (const auto& s : stages) n += s.removed.size();
  return n;
}

namespace {

StageReport trim_assets(Package& pkg, const TrimConfig& cfg) {
  ReachabilityResult r = reach(pkg, cfg);
  AssetBloatReport bloat = detect_asset_bloat(pkg, r, cfg.paper_strict);
  StageReport report{Stage::Assets, {}, 0, {}};
  for (const auto& [path, bytes] : bloat.unused_assets) {
    pkg.asset_files.erase(path);
    report.removed.push_back({"asset", path, bytes});
  }
  return report;
}

StageReport trim_res(Package& pkg, const TrimConfig& cfg) {
  ReachabilityResult r = reach(pkg, cfg);
  ResBloatReport bloat = detect_res_bloat(pkg, r, cfg.paper_strict);
  StageReport report{Stage::Res, {}, 0, {}};
  auto& entries = pkg.resource_table.entries;
  for (const auto& [id, file_bytes] : bloat.unused_entries) {
    auto it = std::find_if(entries.begin(), entries.end(),
                           [id = id](const ResourceEntry& e) { return e.id == id; });
    std::uint64_t row_bytes = serialize_resource_row(*it).size();
    std::string identifier = std::string(to_string(it->type)) + "/" + it->name;
    report.removed.push_back({std::string(to_string(it->type)), identifier, file_bytes + row_bytes});
    pkg.res_files.erase(*it->path);
    entries.erase(it);
  }
  return report;
}

StageReport trim_code(Package& pkg, const TrimConfig& cfg) {
  ReachabilityResult r = reach(pkg, cfg);
  CodeBloatReport bloat = detect_code_bloat(pkg, r);
  StageReport report{Stage::Code, {}, 0, {}};
  for (const auto& [name, bytes] : bloat.removable_classes) {
    pkg.classes.erase(name);
    report.removed.push_back({"class", name, bytes});
  }
  for (const auto& [ref, bytes] : bloat.removable_methods) {
    auto& methods = pkg.classes.at(ref.owner).methods;
    std::erase_if(methods, [&ref = ref](const MethodDef& m) {
      return m.name == ref.name && m.descriptor == ref.descriptor;
    });
    report.removed.push_back({"method", to_string(ref), bytes});
  }
  return report;
}

void finish(StageReport& report) {
  std::sort(report.removed.begin(), report.removed.end(),
            [](const RemovedItem& a, const RemovedItem& b) {
              return std::tie(a.kind, a.identifier) < std::tie(b.kind, b.identifier);
            });
  for (const auto& item : report.removed) {
    ++report.items_removed[item.kind];
    report.bytes_removed += item.bytes;
  }
}

}  // namespace

TrimResult trim(const Package& pkg, const TrimConfig& cfg, TrimOptions options) {
  cfg.validate();
  validate_package(pkg);

  TrimResult out{pkg, {}};
  out.report.original_sizes = component_sizes(pkg);

  std::vector<Stage> order = options.code_first
                                 ? std::vector<Stage>{Stage::Code, Stage::Assets, Stage::Res}
                                 : std::vector<Stage>{Stage::Assets, Stage::Res, Stage::Code};
  for (Stage stage : order) {
    StageReport report;
    switch (stage) {
      case Stage::Assets: report = trim_assets(out.package, cfg); break;
      case Stage::Res: report = trim_res(out.package, cfg); break;
      case Stage::Code: report = trim_code(out.package, cfg); break;
    }
    finish(report);
    validate_package(out.package);
    out.report.stages.push_back(std::move(report));
  }

  out.report.trimmed_sizes = component_sizes(out.package);
  std::uint64_t before = out.report.original_sizes.total();
  std::uint64_t after = out.report.trimmed_sizes.total();
  out.report.absolute_reduction = before - after;
  out.report.normalized_reduction =
      before == 0 ? 0.0 : static_cast<double>(before - after) / static_cast<double>(before);
  return out;
}

}  // namespace taptrim
