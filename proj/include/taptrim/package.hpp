#pragma once

// In-memory model of a Trimmable App Package (TAP): a ZIP container holding
// a plain-text manifest, one textual class file per class, a resource table
// and opaque res/asset/native blobs.
//
// Archive layout:
//   manifest.txt
//   classes/<fqn with '.' replaced by '/'>.cls
//   res/resource-table.tsv
//   res/**      (layouts, drawables, anything else)
//   assets/**
//   lib/**

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "taptrim/zip_archive.hpp"

namespace taptrim {

struct Manifest {
  std::string package_name;
  std::optional<std::string> application_class;
  std::vector<std::string> activities;
  std::optional<std::string> main_activity;
  std::vector<std::string> services;
  std::vector<std::string> receivers;
  std::vector<std::string> providers;

  // Every class name the manifest declares, in declaration order.
  std::vector<std::string> declared_classes() const;

  bool operator==(const Manifest&) const = default;
};

struct Invoke {
  std::string owner;
  std::string name;
  std::string descriptor;
  bool operator==(const Invoke&) const = default;
};
struct NewInstance {
  std::string owner;
  bool operator==(const NewInstance&) const = default;
};
struct FieldAccess {
  std::string owner;
  std::string field;
  bool operator==(const FieldAccess&) const = default;
};
struct ConstString {
  std::string value;
  bool operator==(const ConstString&) const = default;
};
struct ConstResource {
  std::uint32_t id = 0;
  bool operator==(const ConstResource&) const = default;
};

using Instruction = std::variant<Invoke, NewInstance, FieldAccess, ConstString, ConstResource>;

inline constexpr std::string_view kConstructorName = "<init>";
inline constexpr std::string_view kStaticInitName = "<clinit>";

struct MethodDef {
  std::string name;
  std::string descriptor;
  bool is_native = false;
  std::vector<Instruction> body;

  bool is_constructor() const { return name == kConstructorName; }
  bool is_static_init() const { return name == kStaticInitName; }
  bool operator==(const MethodDef&) const = default;
};

struct FieldDef {
  std::string name;
  std::string descriptor;
  bool operator==(const FieldDef&) const = default;
};

struct ClassDef {
  std::string name;
  std::string superclass;  // empty only for hierarchy roots
  std::vector<std::string> interfaces;
  std::vector<FieldDef> fields;
  std::vector<MethodDef> methods;

  const MethodDef* find_method(std::string_view name, std::string_view descriptor) const;
  bool operator==(const ClassDef&) const = default;
};

enum class ResourceType { Drawable, Layout, String, Color, Attr, Array, Other };

std::string_view to_string(ResourceType type);
std::optional<ResourceType> resource_type_from_string(std::string_view text);
// Drawable and layout entries are file-backed; the rest are value resources.
bool is_file_resource(ResourceType type);

struct ResourceEntry {
  std::uint32_t id = 0;
  ResourceType type = ResourceType::Other;
  std::string name;
  std::optional<std::string> path;
  bool operator==(const ResourceEntry&) const = default;
};

struct ResourceTable {
  std::vector<ResourceEntry> entries;

  const ResourceEntry* find(std::uint32_t id) const;
  const ResourceEntry* find(ResourceType type, std::string_view name) const;
  bool operator==(const ResourceTable&) const = default;
};

using BlobMap = std::map<std::string, Bytes>;

inline constexpr std::string_view kManifestPath = "manifest.txt";
inline constexpr std::string_view kResourceTablePath = "res/resource-table.tsv";

struct Package {
  Manifest manifest;
  std::map<std::string, ClassDef> classes;  // keyed by FQN
  ResourceTable resource_table;
  BlobMap res_files;     // "res/..." paths, excluding the resource table
  BlobMap asset_files;   // "assets/..." paths
  BlobMap native_files;  // "lib/..." paths

  bool operator==(const Package&) const = default;
};

struct ComponentSizes {
  std::uint64_t res_bytes = 0;
  std::uint64_t assets_bytes = 0;
  std::uint64_t native_bytes = 0;
  std::uint64_t code_bytes = 0;
  std::uint64_t config_bytes = 0;

  std::uint64_t total() const {
    return res_bytes + assets_bytes + native_bytes + code_bytes + config_bytes;
  }
  bool operator==(const ComponentSizes&) const = default;
};

// Class text -------------------------------------------------------------

ClassDef parse_class_text(std::string_view text, std::string_view source_path = {});
std::string serialize_class_text(const ClassDef& cls);
// Bytes contributed by one method block inside serialize_class_text output.
std::size_t method_text_size(const MethodDef& method);

std::string class_storage_path(std::string_view fqn);
// Inverse of class_storage_path; nullopt when `path` is not a class path.
std::optional<std::string> class_name_from_path(std::string_view path);

// Manifest and table ----------------------------------------------------

Manifest parse_manifest(std::string_view text);
std::string serialize_manifest(const Manifest& manifest);

ResourceTable parse_resource_table(std::string_view text);
std::string serialize_resource_table(const ResourceTable& table);
std::string serialize_resource_row(const ResourceEntry& entry);

std::string format_resource_id(std::uint32_t id);  // 0x7f020001

// Package ----------------------------------------------------------------

Package parse_package(std::span<const std::uint8_t> archive_bytes);
Bytes serialize_package(const Package& pkg);

// Throws Error{InvalidPackage} naming the first broken invariant.
void validate_package(const Package& pkg);

ComponentSizes component_sizes(const Package& pkg);

// Stable content digest used to tie analysis results to the package they
// were computed from.
std::uint64_t package_digest(const Package& pkg);

// Simple name after the last '.'.
std::string_view simple_name(std::string_view fqn);

}  // namespace taptrim
