#include <algorithm>
#include <set>

#include "taptrim/error.hpp"
#include "taptrim/package.hpp"
#include "text_util.hpp"

namespace taptrim {

namespace {

std::string_view as_text(const Bytes& data) {
  return {reinterpret_cast<const char*>(data.data()), data.size()};
}

Bytes as_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorKind::InvalidPackage, why); }

void check_blob_prefix(const BlobMap& blobs, std::string_view prefix) {
  for (const auto& [path, data] : blobs) {
    if (!path.starts_with(prefix) || path.size() == prefix.size() || path.back() == '/') {
      invalid("blob path '" + path + "' does not belong under " + std::string(prefix));
    }
  }
}

class Fnv1a {
 public:
  void feed(std::string_view s) {
    for (char c : s) {
      hash_ ^= static_cast<unsigned char>(c);
      hash_ *= 0x100000001b3ULL;
    }
    feed_size(s.size());
  }
  void feed(const Bytes& b) { feed(as_text(b)); }
  std::uint64_t value() const { return hash_; }

 private:
  void feed_size(std::size_t n) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= static_cast<unsigned char>(n >> (8 * i));
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

void validate_package(const Package& pkg) {
  const Manifest& m = pkg.manifest;
  if (!is_fqn(m.package_name)) invalid("manifest package name is missing or malformed");
  if (m.main_activity &&
      std::find(m.activities.begin(), m.activities.end(), *m.main_activity) == m.activities.end()) {
    invalid("main-activity is not among the declared activities");
  }

  for (const auto& [key, cls] : pkg.classes) {
    if (key != cls.name) invalid("class stored under '" + key + "' declares '" + cls.name + "'");
    if (!is_fqn(cls.name)) invalid("malformed class name '" + cls.name + "'");
    if (cls.superclass == cls.name) invalid("class '" + cls.name + "' extends itself");
    std::set<std::pair<std::string, std::string>> sigs;
    for (const auto& meth : cls.methods) {
      if (!sigs.emplace(meth.name, meth.descriptor).second) {
        invalid("duplicate method " + cls.name + "." + meth.name + " " + meth.descriptor);
      }
      if (meth.is_native && !meth.body.empty()) {
        invalid("native method " + cls.name + "." + meth.name + " has a body");
      }
    }
  }

  check_blob_prefix(pkg.res_files, "res/");
  check_blob_prefix(pkg.asset_files, "assets/");
  check_blob_prefix(pkg.native_files, "lib/");
  if (pkg.res_files.contains(std::string(kResourceTablePath))) {
    invalid("resource table stored as a plain res blob");
  }

  std::set<std::uint32_t> ids;
  std::set<std::string> paths;
  for (const auto& e : pkg.resource_table.entries) {
    if (!ids.insert(e.id).second) invalid("duplicate resource id " + format_resource_id(e.id));
    if (is_file_resource(e.type) && !e.path) {
      invalid("resource " + format_resource_id(e.id) + " needs a file path");
    }
    if (e.path) {
      if (!pkg.res_files.contains(*e.path)) {
        invalid("resource " + format_resource_id(e.id) + " points at missing file " + *e.path);
      }
      if (!paths.insert(*e.path).second) invalid("two resources share file " + *e.path);
    }
  }
}

Package parse_package(std::span<const std::uint8_t> archive_bytes) {
  std::vector<ZipEntry> entries = read_zip(archive_bytes);

  Package pkg;
  bool have_manifest = false;
  for (auto& entry : entries) {
    const std::string& path = entry.path;
    if (path == kManifestPath) {
      pkg.manifest = parse_manifest(as_text(entry.data));
      have_manifest = true;
    } else if (path.starts_with("classes/")) {
      auto name = class_name_from_path(path);
      if (!name) throw Error(ErrorKind::MalformedArchive, "not a class file path", path);
      ClassDef cls = parse_class_text(as_text(entry.data), path);
      if (cls.name != *name) {
        throw Error(ErrorKind::PathMismatch,
                    "declares '" + cls.name + "' but is stored as '" + *name + "'", path);
      }
      pkg.classes.emplace(cls.name, std::move(cls));
    } else if (path == kResourceTablePath) {
      pkg.resource_table = parse_resource_table(as_text(entry.data));
    } else if (path.starts_with("res/")) {
      pkg.res_files.emplace(path, std::move(entry.data));
    } else if (path.starts_with("assets/")) {
      pkg.asset_files.emplace(path, std::move(entry.data));
    } else if (path.starts_with("lib/")) {
      pkg.native_files.emplace(path, std::move(entry.data));
    } else {
      throw Error(ErrorKind::MalformedArchive, "unexpected top-level entry", path);
    }
  }
  if (!have_manifest) throw Error(ErrorKind::MissingManifest, "archive has no manifest.txt");
  validate_package(pkg);
  return pkg;
}

Bytes serialize_package(const Package& pkg) {
  validate_package(pkg);

  std::vector<ZipEntry> entries;
  entries.push_back({std::string(kManifestPath), as_bytes(serialize_manifest(pkg.manifest))});
  for (const auto& [name, cls] : pkg.classes) {
    entries.push_back({class_storage_path(name), as_bytes(serialize_class_text(cls))});
  }
  if (!pkg.resource_table.entries.empty()) {
    entries.push_back({std::string(kResourceTablePath),
                       as_bytes(serialize_resource_table(pkg.resource_table))});
  }
  for (const BlobMap* blobs : {&pkg.res_files, &pkg.asset_files, &pkg.native_files}) {
    for (const auto& [path, data] : *blobs) entries.push_back({path, data});
  }
  std::sort(entries.begin(), entries.end(),
            [](const ZipEntry& a, const ZipEntry& b) { return a.path < b.path; });
  return write_zip(entries);
}

ComponentSizes component_sizes(const Package& pkg) {
  ComponentSizes s;
  for (const auto& [path, data] : pkg.res_files) s.res_bytes += data.size();
  if (!pkg.resource_table.entries.empty()) {
    s.res_bytes += serialize_resource_table(pkg.resource_table).size();
  }
  for (const auto& [path, data] : pkg.asset_files) s.assets_bytes += data.size();
  for (const auto& [path, data] : pkg.native_files) s.native_bytes += data.size();
  for (const auto& [name, cls] : pkg.classes) s.code_bytes += serialize_class_text(cls).size();
  s.config_bytes = serialize_manifest(pkg.manifest).size();
  return s;
}

std::uint64_t package_digest(const Package& pkg) {
  Fnv1a h;
  h.feed(serialize_manifest(pkg.manifest));
  for (const auto& [name, cls] : pkg.classes) {
    h.feed(name);
    h.feed(serialize_class_text(cls));
  }
  h.feed(serialize_resource_table(pkg.resource_table));
  for (const BlobMap* blobs : {&pkg.res_files, &pkg.asset_files, &pkg.native_files}) {
    h.feed("--");
    for (const auto& [path, data] : *blobs) {
      h.feed(path);
      h.feed(data);
    }
  }
  return h.value();
}

}  // namespace taptrim
