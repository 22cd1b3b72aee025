#include <set>

#include "taptrim/refgraph.hpp"
#include "taptrim/resource_refs.hpp"
#include "taptrim/trimmer.hpp"

namespace taptrim {

VerifyReport verify_links(const Package& pkg, const TrimConfig& cfg) {
  VerifyReport report;
  ClassHierarchy h = build_hierarchy(pkg, cfg);

  auto known_class = [&](const std::string& fqn) {
    return h.is_internal(fqn) || cfg.is_platform(fqn);
  };

  for (const auto& declared : pkg.manifest.declared_classes()) {
    if (!h.is_internal(declared)) report.missing_classes.push_back({"manifest", declared});
  }

  for (const auto& [name, cls] : pkg.classes) {
    if (!cls.superclass.empty() && !known_class(cls.superclass)) {
      report.missing_classes.push_back({name + " (superclass)", cls.superclass});
    }
    for (const auto& iface : cls.interfaces) {
      if (!known_class(iface)) report.missing_classes.push_back({name + " (interface)", iface});
    }

    bool index_class = is_resource_index_class(name);
    for (const auto& m : cls.methods) {
      std::string site = to_string(MethodRef{name, m.name, m.descriptor});
      for (const auto& insn : m.body) {
        if (const auto* inv = std::get_if<Invoke>(&insn)) {
          Resolution r = resolve_method(h, pkg, inv->owner, inv->name, inv->descriptor);
          bool ok = r.kind == Resolution::Kind::Internal ||
                    (r.kind == Resolution::Kind::External && cfg.is_platform(r.owner));
          if (!ok) report.unresolved_invokes.push_back({site, inv->owner, inv->name, inv->descriptor});
        } else if (const auto* ni = std::get_if<NewInstance>(&insn)) {
          if (!known_class(ni->owner)) report.missing_classes.push_back({site, ni->owner});
        } else if (const auto* fa = std::get_if<FieldAccess>(&insn)) {
          if (!known_class(fa->owner)) report.missing_classes.push_back({site, fa->owner});
        } else if (const auto* res = std::get_if<ConstResource>(&insn)) {
          // Index classes enumerate every ID ever assigned; platform IDs
          // live outside the app's table.
          if (index_class || (res->id >> 24) != cfg.app_resource_package) continue;
          if (pkg.resource_table.find(res->id) == nullptr) {
            report.dangling_resource_ids.push_back({site, res->id});
          }
        }
      }
    }
  }

  for (const auto& [path, data] : pkg.res_files) {
    if (!is_layout_path(path)) continue;
    std::string_view xml(reinterpret_cast<const char*>(data.data()), data.size());
    for (const auto& ref : scan_resource_refs(xml)) {
      auto type = resource_type_from_string(ref.type);
      if (!type || *type == ResourceType::Other) continue;
      if (pkg.resource_table.find(*type, ref.name) == nullptr) {
        report.broken_layout_refs.push_back({path, "@" + ref.type + "/" + ref.name});
      }
    }
    for (const auto& tag : scan_widget_tags(xml)) {
      if (!known_class(tag)) report.broken_layout_refs.push_back({path, tag});
    }
  }
  return report;
}

}  // namespace taptrim
