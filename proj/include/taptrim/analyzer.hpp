#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "taptrim/config.hpp"
#include "taptrim/package.hpp"

namespace taptrim {

// A share of the package total in hundredths of a percent, rounded half up
// (9380 == 93.80%).
struct Percent {
  std::int64_t hundredths = 0;

  double value() const { return static_cast<double>(hundredths) / 100.0; }
  std::string str() const;  // "93.80"
  auto operator<=>(const Percent&) const = default;
};

Percent percent_of(std::uint64_t part, std::uint64_t total);

struct CompositionReport {
  ComponentSizes sizes;
  Percent res;
  Percent assets;
  Percent native;
  Percent code;
  Percent config;
  // Breakdown inside res: image files and layout files.
  std::uint64_t image_bytes = 0;
  std::uint64_t layout_bytes = 0;
  Percent images;
  Percent layouts;

  Percent sum() const {
    return {res.hundredths + assets.hundredths + native.hundredths + code.hundredths +
            config.hundredths};
  }
};

// Throws Error{EmptyPackage} when every component is empty.
CompositionReport composition_report(const Package& pkg);

// Share of code bytes held by classes under a library prefix. Throws
// Error{EmptyCode} when the package has no code.
double library_ratio(const Package& pkg, const TrimConfig& cfg);

bool is_image_path(std::string_view path);

struct PackageMetrics {
  std::uint64_t total_bytes = 0;    // uncompressed
  std::uint64_t archive_bytes = 0;  // deterministic repack
  std::uint64_t image_count = 0;
  std::uint64_t image_bytes = 0;
  std::uint64_t page_count = 0;  // activities
  ComponentSizes sizes;
};

PackageMetrics package_metrics(const Package& pkg);

struct PairReport {
  PackageMetrics first;
  PackageMetrics second;
  double size_ratio = 1.0;  // larger / smaller uncompressed total
};

PairReport compare(const Package& a, const Package& b);

}  // namespace taptrim
