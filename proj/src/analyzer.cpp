#include "taptrim/analyzer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "taptrim/error.hpp"
#include "taptrim/resource_refs.hpp"

namespace taptrim {

std::string Percent::str() const {
  std::int64_t whole = hundredths / 100;
  std::int64_t frac = hundredths % 100;
  std::string out = std::to_string(whole) + ".";
  if (frac < 10) out += "0";
  out += std::to_string(frac);
  return out;
}

Percent percent_of(std::uint64_t part, std::uint64_t total) {
  if (total == 0) return {};
  // round(part * 10000 / total), halves away from zero.
  unsigned __int128 scaled = static_cast<unsigned __int128>(part) * 20000 + total;
  return {static_cast<std::int64_t>(scaled / (2 * static_cast<unsigned __int128>(total)))};
}

bool is_image_path(std::string_view path) {
  static constexpr std::array<std::string_view, 5> kExtensions{".png", ".jpg", ".jpeg", ".gif",
                                                               ".webp"};
  std::string lower(path);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return std::any_of(kExtensions.begin(), kExtensions.end(),
                     [&](std::string_view ext) { return lower.ends_with(ext); });
}

CompositionReport composition_report(const Package& pkg) {
  CompositionReport r;
  r.sizes = component_sizes(pkg);
  std::uint64_t total = r.sizes.total();
  if (total == 0) throw Error(ErrorKind::EmptyPackage, "package has no content");

  r.res = percent_of(r.sizes.res_bytes, total);
  r.assets = percent_of(r.sizes.assets_bytes, total);
  r.native = percent_of(r.sizes.native_bytes, total);
  r.code = percent_of(r.sizes.code_bytes, total);
  r.config = percent_of(r.sizes.config_bytes, total);

  for (const auto& [path, data] : pkg.res_files) {
    if (is_image_path(path)) r.image_bytes += data.size();
    if (is_layout_path(path)) r.layout_bytes += data.size();
  }
  r.images = percent_of(r.image_bytes, total);
  r.layouts = percent_of(r.layout_bytes, total);
  return r;
}

double library_ratio(const Package& pkg, const TrimConfig& cfg) {
  std::uint64_t library = 0;
  std::uint64_t total = 0;
  for (const auto& [name, cls] : pkg.classes) {
    std::uint64_t bytes = serialize_class_text(cls).size();
    total += bytes;
    if (cfg.is_library(name)) library += bytes;
  }
  if (total == 0) throw Error(ErrorKind::EmptyCode, "package has no code");
  return static_cast<double>(library) / static_cast<double>(total);
}

PackageMetrics package_metrics(const Package& pkg) {
  PackageMetrics m;
  m.sizes = component_sizes(pkg);
  m.total_bytes = m.sizes.total();
  m.archive_bytes = serialize_package(pkg).size();
  for (const BlobMap* blobs : {&pkg.res_files, &pkg.asset_files}) {
    for (const auto& [path, data] : *blobs) {
      if (!is_image_path(path)) continue;
      ++m.image_count;
      m.image_bytes += data.size();
    }
  }
  m.page_count = pkg.manifest.activities.size();
  return m;
}

PairReport compare(const Package& a, const Package& b) {
  PairReport r{package_metrics(a), package_metrics(b), 1.0};
  std::uint64_t hi = std::max(r.first.total_bytes, r.second.total_bytes);
  std::uint64_t lo = std::min(r.first.total_bytes, r.second.total_bytes);
  if (lo > 0) r.size_ratio = static_cast<double>(hi) / static_cast<double>(lo);
  return r;
}

}  // namespace taptrim
