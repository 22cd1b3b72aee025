#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "taptrim/config.hpp"
#include "taptrim/package.hpp"

namespace taptrim {

enum class Stage { Assets, Res, Code };
std::string_view to_string(Stage stage);

struct RemovedItem {
  std::string kind;  // asset, drawable, layout, class, method
  std::string identifier;
  std::uint64_t bytes = 0;
  bool operator==(const RemovedItem&) const = default;
};

struct StageReport {
  Stage stage = Stage::Assets;
  std::map<std::string, std::uint64_t> items_removed;  // count by kind
  std::uint64_t bytes_removed = 0;
  std::vector<RemovedItem> removed;  // sorted by (kind, identifier)
};

struct TrimReport {
  std::vector<StageReport> stages;  // in execution order
  ComponentSizes original_sizes;
  ComponentSizes trimmed_sizes;
  std::uint64_t absolute_reduction = 0;
  double normalized_reduction = 0.0;

  std::uint64_t items_removed_total() const;
};

struct TrimOptions {
  // Runs code, then assets, then res instead of assets, res, code.
  bool code_first = false;
};

struct TrimResult {
  Package package;
  TrimReport report;
};

// Removes unused assets, then unused drawable/layout resources, then
// unreachable classes and methods. The manifest is never modified.
TrimResult trim(const Package& pkg, const TrimConfig& cfg, TrimOptions options = {});

struct UnresolvedInvoke {
  std::string site;
  std::string owner;
  std::string name;
  std::string descriptor;
  bool operator==(const UnresolvedInvoke&) const = default;
};

struct MissingClass {
  std::string site;
  std::string name;
  bool operator==(const MissingClass&) const = default;
};

struct DanglingResource {
  std::string site;
  std::uint32_t id = 0;
  bool operator==(const DanglingResource&) const = default;
};

struct BrokenLayoutRef {
  std::string path;
  std::string reference;  // "@drawable/bg" or a widget class name
  bool operator==(const BrokenLayoutRef&) const = default;
};

struct VerifyReport {
  std::vector<UnresolvedInvoke> unresolved_invokes;
  std::vector<MissingClass> missing_classes;
  std::vector<DanglingResource> dangling_resource_ids;
  std::vector<BrokenLayoutRef> broken_layout_refs;

  bool ok() const {
    return unresolved_invokes.empty() && missing_classes.empty() &&
           dangling_resource_ids.empty() && broken_layout_refs.empty();
  }
  std::size_t finding_count() const {
    return unresolved_invokes.size() + missing_classes.size() + dangling_resource_ids.size() +
           broken_layout_refs.size();
  }
};

// Static link check standing in for running the app: every symbolic
// reference must land inside the package or in a platform namespace.
VerifyReport verify_links(const Package& pkg, const TrimConfig& cfg);

}  // namespace taptrim
