#include "taptrim/refgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>

#include "taptrim/error.hpp"
#include "taptrim/resource_refs.hpp"

namespace taptrim {

std::string to_string(const MethodRef& ref) {
  return ref.owner + "." + ref.name + " " + ref.descriptor;
}

std::set<std::string> ClassHierarchy::supertypes(const std::string& fqn) const {
  std::set<std::string> out;
  std::vector<std::string> stack{fqn};
  while (!stack.empty()) {
    std::string cur = std::move(stack.back());
    stack.pop_back();
    auto visit = [&](const std::string& next) {
      if (is_internal(next) && out.insert(next).second) stack.push_back(next);
    };
    if (auto p = parent.find(cur); p != parent.end()) visit(p->second);
    if (auto i = interfaces.find(cur); i != interfaces.end()) {
      for (const auto& iface : i->second) visit(iface);
    }
  }
  out.erase(fqn);
  return out;
}

std::set<std::string> ClassHierarchy::subtypes(const std::string& fqn) const {
  std::set<std::string> out;
  std::vector<std::string> stack{fqn};
  while (!stack.empty()) {
    std::string cur = std::move(stack.back());
    stack.pop_back();
    for (const auto* edges : {&children, &implementors}) {
      auto it = edges->find(cur);
      if (it == edges->end()) continue;
      for (const auto& sub : it->second) {
        if (out.insert(sub).second) stack.push_back(sub);
      }
    }
  }
  out.erase(fqn);
  return out;
}

std::vector<std::string> ClassHierarchy::superclass_chain(const std::string& fqn) const {
  std::vector<std::string> chain{fqn};
  std::string cur = fqn;
  while (is_internal(cur)) {
    auto p = parent.find(cur);
    if (p == parent.end()) break;
    cur = p->second;
    chain.push_back(cur);
  }
  return chain;
}

ClassHierarchy build_hierarchy(const Package& pkg, const TrimConfig&) {
  ClassHierarchy h;
  for (const auto& [name, cls] : pkg.classes) h.internal.insert(name);
  for (const auto& [name, cls] : pkg.classes) {
    if (!cls.superclass.empty()) {
      h.parent[name] = cls.superclass;
      h.children[cls.superclass].insert(name);
    }
    if (!cls.interfaces.empty()) {
      h.interfaces[name] = cls.interfaces;
      for (const auto& iface : cls.interfaces) h.implementors[iface].insert(name);
    }
  }

  // Three-colour DFS over internal super/interface edges.
  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  std::vector<std::string> path;
  std::function<void(const std::string&)> visit = [&](const std::string& cls) {
    mark[cls] = Mark::Grey;
    path.push_back(cls);
    std::vector<std::string> next;
    if (auto p = h.parent.find(cls); p != h.parent.end()) next.push_back(p->second);
    if (auto i = h.interfaces.find(cls); i != h.interfaces.end()) {
      next.insert(next.end(), i->second.begin(), i->second.end());
    }
    for (const auto& n : next) {
      if (!h.is_internal(n)) continue;
      Mark m = mark[n];
      if (m == Mark::Grey) {
        auto start = std::find(path.begin(), path.end(), n);
        std::string cycle;
        for (auto it = start; it != path.end(); ++it) cycle += *it + " -> ";
        cycle += n;
        throw Error(ErrorKind::CyclicHierarchy, cycle);
      }
      if (m == Mark::White) visit(n);
    }
    path.pop_back();
    mark[cls] = Mark::Black;
  };
  for (const auto& name : h.internal) {
    if (mark[name] == Mark::White) visit(name);
  }
  return h;
}

Resolution resolve_method(const ClassHierarchy& h, const Package& pkg, std::string_view owner,
                          std::string_view name, std::string_view descriptor) {
  auto defines = [&](const std::string& cls) {
    auto it = pkg.classes.find(cls);
    return it != pkg.classes.end() && it->second.find_method(name, descriptor) != nullptr;
  };

  std::string start(owner);
  if (!h.is_internal(start)) return {Resolution::Kind::External, start};

  std::vector<std::string> chain = h.superclass_chain(start);
  std::string exit_class;
  for (const auto& cls : chain) {
    if (!h.is_internal(cls)) {
      exit_class = cls;
      break;
    }
    if (defines(cls)) return {Resolution::Kind::Internal, cls};
  }

  std::string external_iface;
  std::set<std::string> seen;
  std::function<std::optional<std::string>(const std::string&)> search_ifaces =
      [&](const std::string& cls) -> std::optional<std::string> {
    auto it = h.interfaces.find(cls);
    if (it == h.interfaces.end()) return std::nullopt;
    for (const auto& iface : it->second) {
      if (!seen.insert(iface).second) continue;
      if (!h.is_internal(iface)) {
        if (external_iface.empty()) external_iface = iface;
        continue;
      }
      if (defines(iface)) return iface;
      if (auto found = search_ifaces(iface)) return found;
    }
    return std::nullopt;
  };
  for (const auto& cls : chain) {
    if (!h.is_internal(cls)) break;
    if (auto found = search_ifaces(cls)) return {Resolution::Kind::Internal, *found};
  }

  if (!exit_class.empty()) return {Resolution::Kind::External, exit_class};
  if (!external_iface.empty()) return {Resolution::Kind::External, external_iface};
  return {Resolution::Kind::Missing, {}};
}

std::set<std::string> collect_seeds(const Package& pkg, const ClassHierarchy& h,
                                    const TrimConfig& cfg) {
  std::set<std::string> seeds;
  const Manifest& m = pkg.manifest;
  if (!m.main_activity) {
    throw Error(ErrorKind::MissingSeed, "manifest declares no main-activity");
  }
  for (const auto& declared : m.declared_classes()) {
    if (!h.is_internal(declared)) {
      throw Error(ErrorKind::MissingSeed, "manifest class '" + declared + "' is not in the package");
    }
    seeds.insert(declared);
  }

  for (const auto& name : h.internal) {
    for (const auto& ancestor : h.superclass_chain(name)) {
      bool entry = std::find(cfg.entry_bases.begin(), cfg.entry_bases.end(), ancestor) !=
                   cfg.entry_bases.end();
      if (entry || ancestor == cfg.enum_base) {
        seeds.insert(name);
        break;
      }
    }
    if (cfg.is_extra_keep(name)) seeds.insert(name);
  }

  for (const auto& [path, data] : pkg.res_files) {
    if (!is_layout_path(path)) continue;
    std::string_view xml(reinterpret_cast<const char*>(data.data()), data.size());
    for (const auto& tag : scan_widget_tags(xml)) {
      if (h.is_internal(tag)) seeds.insert(tag);
    }
  }
  return seeds;
}

namespace {

class ReachSolver {
 public:
  ReachSolver(const Package& pkg, const TrimConfig& cfg)
      : pkg_(pkg), cfg_(cfg), h_(build_hierarchy(pkg, cfg)) {}

  ReachabilityResult run() {
    out_.package_digest = package_digest(pkg_);
    out_.seeds = collect_seeds(pkg_, h_, cfg_);

    for (const auto& seed : out_.seeds) {
      keep_class(seed);
      mark_receiver(seed);
      for (const auto& m : cls(seed).methods) {
        if (m.is_constructor() || m.is_static_init() || m.is_native || cfg_.is_callback(m.name)) {
          keep_method(seed, m);
        }
      }
    }
    while (!pending_.empty()) {
      MethodRef ref = std::move(pending_.front());
      pending_.pop_front();
      process_body(ref);
    }

    scan_constants();
    return std::move(out_);
  }

 private:
  const ClassDef& cls(const std::string& name) const { return pkg_.classes.at(name); }

  void keep_class(const std::string& name) {
    if (!h_.is_internal(name) || !out_.kept_classes.insert(name).second) return;
    const ClassDef& c = cls(name);
    if (!c.superclass.empty()) keep_class(c.superclass);
    for (const auto& iface : c.interfaces) keep_class(iface);
    for (const auto& m : c.methods) {
      if (m.is_native || m.is_static_init()) keep_method(name, m);
    }
  }

  void keep_method(const std::string& owner, const MethodDef& m) {
    MethodRef ref{owner, m.name, m.descriptor};
    if (!out_.kept_methods.insert(ref).second) return;
    keep_class(owner);
    pending_.push_back(ref);
    for (const auto& sub : h_.subtypes(owner)) {
      if (!receivers_.contains(sub)) continue;
      if (const MethodDef* o = cls(sub).find_method(m.name, m.descriptor)) keep_method(sub, *o);
    }
  }

  // `name` may now be the runtime class of a receiver.
  void mark_receiver(const std::string& name) {
    if (!receivers_.insert(name).second) return;
    const ClassDef& c = cls(name);
    for (const auto& super : h_.supertypes(name)) {
      for (const auto& m : c.methods) {
        if (out_.kept_methods.contains({super, m.name, m.descriptor})) keep_method(name, m);
      }
    }
  }

  void keep_constructors(const std::string& name) {
    for (const auto& m : cls(name).methods) {
      if (m.is_constructor() || m.is_static_init()) keep_method(name, m);
    }
  }

  void keep_static_init(const std::string& name) {
    for (const auto& m : cls(name).methods) {
      if (m.is_static_init()) keep_method(name, m);
    }
  }

  void process_body(const MethodRef& ref) {
    const MethodDef* m = cls(ref.owner).find_method(ref.name, ref.descriptor);
    for (const auto& insn : m->body) {
      if (const auto* inv = std::get_if<Invoke>(&insn)) {
        if (h_.is_internal(inv->owner)) keep_class(inv->owner);
        Resolution r = resolve_method(h_, pkg_, inv->owner, inv->name, inv->descriptor);
        MethodRef target{inv->owner, inv->name, inv->descriptor};
        switch (r.kind) {
          case Resolution::Kind::Internal:
            keep_method(r.owner, *cls(r.owner).find_method(inv->name, inv->descriptor));
            break;
          case Resolution::Kind::External:
            out_.external_refs.insert(std::move(target));
            break;
          case Resolution::Kind::Missing:
            out_.missing_refs.insert(std::move(target));
            break;
        }
      } else if (const auto* ni = std::get_if<NewInstance>(&insn)) {
        if (!h_.is_internal(ni->owner)) continue;
        out_.instantiated.insert(ni->owner);
        keep_class(ni->owner);
        mark_receiver(ni->owner);
        keep_constructors(ni->owner);
      } else if (const auto* fa = std::get_if<FieldAccess>(&insn)) {
        if (!h_.is_internal(fa->owner)) continue;
        keep_class(fa->owner);
        keep_static_init(fa->owner);
      }
    }
  }

  // Resource IDs and strings are gathered from every method, live or not.
  void scan_constants() {
    for (const auto& [name, c] : pkg_.classes) {
      bool index_class = is_resource_index_class(name);
      for (const auto& m : c.methods) {
        for (const auto& insn : m.body) {
          if (const auto* res = std::get_if<ConstResource>(&insn)) {
            if (!index_class) out_.used_resource_ids.insert(res->id);
          } else if (const auto* str = std::get_if<ConstString>(&insn)) {
            out_.asset_strings.insert(str->value);
          }
        }
      }
    }
  }

  const Package& pkg_;
  const TrimConfig& cfg_;
  ClassHierarchy h_;
  ReachabilityResult out_;
  std::set<std::string> receivers_;  // instantiated classes and seeds
  std::deque<MethodRef> pending_;
};

}  // namespace

ReachabilityResult reach(const Package& pkg, const TrimConfig& cfg) {
  return ReachSolver(pkg, cfg).run();
}

}  // namespace taptrim
