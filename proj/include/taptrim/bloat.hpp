#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "taptrim/config.hpp"
#include "taptrim/package.hpp"
#include "taptrim/refgraph.hpp"

namespace taptrim {

struct CodeBloatReport {
  std::map<std::string, std::uint64_t> removable_classes;  // FQN -> class text bytes
  std::map<MethodRef, std::uint64_t> removable_methods;    // in kept classes -> block bytes
  std::uint64_t total_bytes = 0;
};

struct ResBloatReport {
  std::map<std::uint32_t, std::uint64_t> unused_entries;  // id -> file bytes
  std::uint64_t bytes = 0;
  // Rows the table loses when the entries go; not part of `bytes`.
  std::uint64_t table_bytes = 0;
};

struct AssetBloatReport {
  std::map<std::string, std::uint64_t> unused_assets;
  std::uint64_t bytes = 0;
};

// All three throw Error{ConfigMismatch} when `result` was computed from a
// different package.
CodeBloatReport detect_code_bloat(const Package& pkg, const ReachabilityResult& result);

// Trimmable types are drawable and layout only. Unless `paper_strict`, a
// used resource's own file pulls in the resources it references.
ResBloatReport detect_res_bloat(const Package& pkg, const ReachabilityResult& result,
                                bool paper_strict = false);

// An asset is used when a string names it (with or without the `assets/`
// prefix) or, unless `paper_strict`, names one of its parent directories.
AssetBloatReport detect_asset_bloat(const Package& pkg, const ReachabilityResult& result,
                                    bool paper_strict = false);

// The set of resource IDs considered live after the res-to-res closure.
std::set<std::uint32_t> live_resource_ids(const Package& pkg, const ReachabilityResult& result,
                                          bool paper_strict);

bool asset_is_referenced(std::string_view asset_path, const std::set<std::string>& strings,
                         bool paper_strict);

}  // namespace taptrim
