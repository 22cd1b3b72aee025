#include "taptrim/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "taptrim/error.hpp"
#include "taptrim/refgraph.hpp"
#include "text_util.hpp"

namespace taptrim {

namespace {

constexpr std::string_view kObject = "java.lang.Object";
constexpr std::string_view kLogCall = "android.util.Log";

// Only the raw engine output is used: distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }
  Bytes bytes(std::size_t n) {
    Bytes out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(engine_() >> 56);
    return out;
  }

 private:
  std::mt19937_64 engine_;
};


Bytes text_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

enum class Role { Seed, Worker, FieldHolder, Listener, ResourceIndex, Dead, Library };

struct ResourcePlan {
  std::uint32_t id = 0;
  ResourceType type = ResourceType::Drawable;
  std::string name;
  std::string path;
  bool live = false;
  bool xml = false;
  std::vector<std::string> refs;  // "@drawable/x" tokens written into the file
  std::vector<std::string> tags;  // widget element tags
};

class PackageBuilder {
 public:
  PackageBuilder(std::uint64_t seed, std::string name, const GeneratorOptions& options)
      : rng_(seed), name_(std::move(name)), options_(options) {
    std::string stem;
    for (char c : name_) {
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) stem.push_back(c);
    }
    if (stem.empty() || (stem[0] >= '0' && stem[0] <= '9')) stem = "p" + stem;
    prefix_ = "gen." + stem;
  }

  GeneratedPackage build() {
    build_entry_classes();
    build_listener();
    build_workers();
    build_field_holders();
    invoke_through_subclasses();
    build_resources();
    build_assets();
    build_resource_index();
    build_natives();
    build_dead_classes();
    add_dead_methods_to_live_classes();
    sprinkle_live_sites();
    fill_dead_bodies();
    finish_listener();
    write_layouts();

    GeneratedPackage out;
    out.name = name_;
    if (options_.library_heavy) out.library_ratio = add_library_classes();
    out.package = std::move(pkg_);
    out.ledger = make_ledger(out.package);
    validate_package(out.package);
    return out;
  }

 private:
  // -- class scaffolding ---------------------------------------------------

  ClassDef& add_class(const std::string& fqn, std::string superclass, Role role, bool live) {
    ClassDef cls;
    cls.name = fqn;
    cls.superclass = std::move(superclass);
    roles_[fqn] = role;
    if (live) live_classes_.insert(fqn);
    return pkg_.classes.emplace(fqn, std::move(cls)).first->second;
  }

  MethodRef add_method(const std::string& owner, const std::string& name,
                       const std::string& descriptor, bool live, bool native = false) {
    MethodDef m;
    m.name = name;
    m.descriptor = descriptor;
    m.is_native = native;
    pkg_.classes.at(owner).methods.push_back(std::move(m));
    MethodRef ref{owner, name, descriptor};
    method_live_[ref] = live;
    if (!live && !native) dead_bodies_.push_back(ref);
    return ref;
  }

  MethodDef& method(const MethodRef& ref) {
    for (auto& m : pkg_.classes.at(ref.owner).methods) {
      if (m.name == ref.name && m.descriptor == ref.descriptor) return m;
    }
    throw Error(ErrorKind::InvalidPackage, "generator lost method " + to_string(ref));
  }

  void append(const MethodRef& ref, Instruction insn) { method(ref).body.push_back(std::move(insn)); }

  // Appends to a method already known to be live; that is what makes the
  // instruction's target live.
  void append_to_live_site(Instruction insn) { append(rng_.pick(sites_), std::move(insn)); }

  void add_site(const MethodRef& ref) { sites_.push_back(ref); }

  std::string noise() { return "msg_" + std::to_string(rng_.below(100000)); }

  void add_constructor(const std::string& owner, const std::string& superclass, bool live,
                       const std::string& descriptor = "()V") {
    MethodRef ctor = add_method(owner, std::string(kConstructorName), descriptor, live);
    append(ctor, Invoke{superclass, std::string(kConstructorName), descriptor});
  }

  // -- live structure ------------------------------------------------------

  void build_entry_classes() {
    main_ = prefix_ + ".MainActivity";
    add_class(main_, "android.app.Activity", Role::Seed, true);
    add_constructor(main_, "android.app.Activity", true);
    MethodRef on_create = add_method(main_, "onCreate", "(Landroid/os/Bundle;)V", true);
    append(on_create, Invoke{"android.app.Activity", "onCreate", "(Landroid/os/Bundle;)V"});
    on_create_ = on_create;
    add_site(on_create);
    MethodRef on_pause = add_method(main_, "onPause", "()V", true);
    append(on_pause, Invoke{"android.app.Activity", "onPause", "()V"});
    add_site(on_pause);
    pkg_.manifest.package_name = prefix_;
    pkg_.manifest.activities.push_back(main_);
    pkg_.manifest.main_activity = main_;
    seed_classes_.push_back(main_);

    if (rng_.chance(70)) {
      std::string svc = prefix_ + ".SyncService";
      add_class(svc, "android.app.Service", Role::Seed, true);
      add_constructor(svc, "android.app.Service", true);
      add_site(add_method(svc, "onStartCommand", "(Landroid/content/Intent;II)I", true));
      // Undeclared services are still seeds through their base class.
      if (rng_.chance(50)) pkg_.manifest.services.push_back(svc);
      seed_classes_.push_back(svc);
    }
    if (rng_.chance(30)) {
      std::string app = prefix_ + ".App";
      add_class(app, "android.app.Application", Role::Seed, true);
      add_constructor(app, "android.app.Application", true);
      add_site(add_method(app, "onCreate", "()V", true));
      pkg_.manifest.application_class = app;
      seed_classes_.push_back(app);
    }
    std::uint64_t widgets = rng_.below(3);
    for (std::uint64_t k = 0; k < widgets; ++k) {
      std::string w = prefix_ + ".ui.Widget" + std::to_string(k);
      add_class(w, "android.view.View", Role::Seed, true);
      add_constructor(w, "android.view.View", true, "(Landroid/content/Context;)V");
      add_site(add_method(w, "onDraw", "(Landroid/graphics/Canvas;)V", true));
      widgets_.push_back(w);
      seed_classes_.push_back(w);
    }
    if (rng_.chance(40)) {
      std::string e = prefix_ + ".Mode";
      add_class(e, "java.lang.Enum", Role::Seed, true);
      add_constructor(e, "java.lang.Enum", true, "(Ljava/lang/String;I)V");
      MethodRef clinit = add_method(e, std::string(kStaticInitName), "()V", true);
      append(clinit, NewInstance{e});
      append(clinit, ConstString{"MODE_A"});
      add_site(clinit);
      add_method(e, "values", "()[Ljava/lang/Object;", false);
      seed_classes_.push_back(e);
    }
  }

  void build_listener() {
    if (!rng_.chance(50)) return;
    listener_ = prefix_ + ".Listener";
    add_class(*listener_, std::string(kObject), Role::Listener, false);
    listener_invoked_ = rng_.chance(70);
    add_method(*listener_, "handle", "(I)V", listener_invoked_);
    if (listener_invoked_) append_to_live_site(Invoke{*listener_, "handle", "(I)V"});
  }

  // Methods a subclass may override: plain bodies, no constructors,
  // initializers, natives or listener callbacks.
  std::vector<MethodRef> overridable(const std::string& cls) {
    std::vector<MethodRef> out;
    for (const auto& m : pkg_.classes.at(cls).methods) {
      if (m.is_constructor() || m.is_static_init() || m.is_native || m.name == "handle") continue;
      out.push_back({cls, m.name, m.descriptor});
    }
    return out;
  }

  void implement_listener(const std::string& cls, bool receiver) {
    if (!listener_) return;
    pkg_.classes.at(cls).interfaces.push_back(*listener_);
    bool live = receiver && listener_invoked_;
    MethodRef h = add_method(cls, "handle", "(I)V", live);
    if (live) add_site(h);
  }

  void build_workers() {
    static const std::vector<std::string> kDescriptors{"()V", "(I)I", "(Ljava/lang/String;)V",
                                                       "(II)I"};
    auto count = static_cast<int>(rng_.between(2, static_cast<std::uint64_t>(
                                                      std::max(2, options_.max_workers))));
    for (int i = 0; i < count; ++i) {
      std::string w = prefix_ + ".core.Worker" + std::to_string(i);
      std::string super = std::string(kObject);
      if (!workers_.empty() && rng_.chance(35)) super = rng_.pick(workers_);
      add_class(w, super, Role::Worker, true);
      add_constructor(w, super, true);
      append_to_live_site(NewInstance{w});
      append_to_live_site(Invoke{w, std::string(kConstructorName), "()V"});

      if (rng_.chance(25)) {
        MethodRef clinit = add_method(w, std::string(kStaticInitName), "()V", true);
        append(clinit, ConstString{noise()});
        add_site(clinit);
      }
      if (rng_.chance(20)) add_method(w, "nat" + std::to_string(i), "()V", true, true);

      auto own = rng_.between(1, 3);
      for (std::uint64_t j = 0; j < own; ++j) {
        std::string name = "w" + std::to_string(i) + "m" + std::to_string(j);
        const std::string& desc = rng_.pick(kDescriptors);
        bool live = rng_.chance(60);
        if (live) append_to_live_site(Invoke{w, name, desc});
        MethodRef ref = add_method(w, name, desc, live);
        if (live) {
          add_site(ref);
          direct_targets_.push_back(ref);
        }
      }

      if (super != kObject && rng_.chance(50)) {
        auto candidates = overridable(super);
        if (!candidates.empty()) {
          const MethodRef& base = rng_.pick(candidates);
          overridden_.insert(base);
          bool live = method_live_.at(base);
          MethodRef ref = add_method(w, base.name, base.descriptor, live);
          overrides_.insert(ref);
          if (live) add_site(ref);
        }
      }
      if (rng_.chance(40)) implement_listener(w, true);
      workers_.push_back(w);
    }
  }

  // Classes kept through a static field access but never instantiated: their
  // constructors and overrides stay dead.
  void build_field_holders() {
    auto count = rng_.below(4);
    for (std::uint64_t t = 0; t < count; ++t) {
      std::string k = prefix_ + ".data.Holder" + std::to_string(t);
      std::string super = rng_.chance(50) ? rng_.pick(workers_) : std::string(kObject);
      ClassDef& cls = add_class(k, super, Role::FieldHolder, true);
      cls.fields.push_back({"count", "I"});
      // Placed before the initializer joins the live sites so that it
      // cannot land inside it.
      append_to_live_site(FieldAccess{k, "count"});
      MethodRef clinit = add_method(k, std::string(kStaticInitName), "()V", true);
      append(clinit, ConstString{noise()});
      add_site(clinit);
      add_constructor(k, super, false);
      add_method(k, "k" + std::to_string(t) + "m0", "()V", false);
      if (super != kObject && rng_.chance(50)) {
        auto candidates = overridable(super);
        if (!candidates.empty()) {
          const MethodRef& base = rng_.pick(candidates);
          overridden_.insert(base);
          overrides_.insert(add_method(k, base.name, base.descriptor, false));
        }
      }
      if (rng_.chance(30)) implement_listener(k, false);
    }
  }

  // `invoke Sub.m` where m is inherited from a worker ancestor and nothing
  // in between redefines it.
  void invoke_through_subclasses() {
    for (const auto& w : workers_) {
      if (!rng_.chance(30)) continue;
      std::vector<MethodRef> candidates;
      std::set<std::pair<std::string, std::string>> shadowed;
      for (const auto& m : pkg_.classes.at(w).methods) shadowed.emplace(m.name, m.descriptor);
      for (std::string cur = pkg_.classes.at(w).superclass; roles_.contains(cur);
           cur = pkg_.classes.at(cur).superclass) {
        for (const auto& m : pkg_.classes.at(cur).methods) {
          MethodRef ref{cur, m.name, m.descriptor};
          bool eligible = !m.is_constructor() && !m.is_static_init() && m.name != "handle" &&
                          method_live_.at(ref) && !overrides_.contains(ref) &&
                          !shadowed.contains({m.name, m.descriptor});
          if (eligible) candidates.push_back(ref);
          shadowed.emplace(m.name, m.descriptor);
        }
      }
      if (candidates.empty()) continue;
      const MethodRef& target = rng_.pick(candidates);
      append_to_live_site(Invoke{w, target.name, target.descriptor});
    }
  }

  // -- resources -------------------------------------------------------------

  void build_resources() {
    auto drawables = rng_.between(2, 6);
    auto layouts = rng_.between(1, 4);
    for (std::uint64_t i = 0; i < drawables; ++i) {
      ResourcePlan r;
      r.id = 0x7f020000u + static_cast<std::uint32_t>(i);
      r.type = ResourceType::Drawable;
      r.name = "img" + std::to_string(i);
      r.xml = rng_.chance(25);
      r.path = "res/drawable/" + r.name + (r.xml ? ".xml" : ".png");
      r.live = rng_.chance(60);
      resources_.push_back(r);
    }
    for (std::uint64_t i = 0; i < layouts; ++i) {
      ResourcePlan r;
      r.id = 0x7f030000u + static_cast<std::uint32_t>(i);
      r.type = ResourceType::Layout;
      r.name = i == 0 ? "activity_main" : "screen" + std::to_string(i);
      r.path = "res/layout/" + r.name + ".xml";
      r.xml = true;
      r.live = i == 0 || rng_.chance(60);
      resources_.push_back(r);
    }
    auto strings = rng_.between(1, 3);
    for (std::uint64_t i = 0; i < strings; ++i) {
      string_names_.push_back(i == 0 ? "app_name" : "label" + std::to_string(i));
    }

    std::vector<std::size_t> live_layouts;
    std::vector<std::size_t> dead_files;
    for (std::size_t i = 0; i < resources_.size(); ++i) {
      const auto& r = resources_[i];
      if (r.type == ResourceType::Layout && r.live) live_layouts.push_back(i);
      if (!r.live) dead_files.push_back(i);
    }

    std::size_t main_layout = live_layouts.front();
    append(on_create_, ConstResource{resources_[main_layout].id});
    append(on_create_, Invoke{main_, "setContentView", "(I)V"});
    for (const auto& w : widgets_) resources_[main_layout].tags.push_back(w);
    live_res_ids_.push_back(resources_[main_layout].id);

    for (std::size_t i = 0; i < resources_.size(); ++i) {
      auto& r = resources_[i];
      if (i == main_layout) continue;
      std::string token = "@" + std::string(to_string(r.type)) + "/" + r.name;
      if (r.live) {
        live_res_ids_.push_back(r.id);
        // Through code, or through a live layout that is already reachable.
        std::vector<std::size_t> parents;
        for (auto l : live_layouts) {
          if (l < i || r.type == ResourceType::Drawable) parents.push_back(l);
        }
        if (parents.empty() || rng_.chance(50)) {
          append_to_live_site(ConstResource{r.id});
        } else {
          resources_[rng_.pick(parents)].refs.push_back(token);
        }
      } else if (!dead_files.empty() && rng_.chance(50)) {
        std::size_t holder = rng_.pick(dead_files);
        if (holder != i && resources_[holder].xml) resources_[holder].refs.push_back(token);
      }
    }
    // Live resources may also be mentioned from dead files.
    for (auto d : dead_files) {
      if (resources_[d].xml && rng_.chance(50)) {
        std::size_t target = rng_.below(resources_.size());
        if (resources_[target].live) {
          resources_[d].refs.push_back("@" + std::string(to_string(resources_[target].type)) +
                                       "/" + resources_[target].name);
        }
      }
    }

    for (const auto& r : resources_) {
      pkg_.resource_table.entries.push_back({r.id, r.type, r.name, r.path});
    }
    for (std::size_t i = 0; i < string_names_.size(); ++i) {
      pkg_.resource_table.entries.push_back(
          {0x7f040000u + static_cast<std::uint32_t>(i), ResourceType::String, string_names_[i], {}});
    }
    if (rng_.chance(50)) {
      // Value resources referenced from code are never trimmed.
      append_to_live_site(ConstResource{0x7f040000u});
    }
  }

  void write_layouts() {
    for (const auto& r : resources_) {
      if (!r.xml) {
        Bytes png = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
        Bytes body = rng_.bytes(rng_.between(40, 400));
        png.insert(png.end(), body.begin(), body.end());
        pkg_.res_files[r.path] = std::move(png);
        continue;
      }
      std::ostringstream xml;
      xml << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n";
      if (r.type == ResourceType::Drawable) {
        xml << "<selector xmlns:android=\"http://schemas.android.com/apk/res/android\">\n";
        for (const auto& ref : r.refs) xml << "  <item android:drawable=\"" << ref << "\"/>\n";
        xml << "</selector>\n";
      } else {
        xml << "<LinearLayout xmlns:android=\"http://schemas.android.com/apk/res/android\"\n"
            << "    android:id=\"@+id/root_" << r.name << "\">\n"
            << "  <android.widget.TextView android:text=\"@string/"
            << string_names_[r.id % string_names_.size()] << "\""
            << " android:textColor=\"@android:color/black\"/>\n";
        for (const auto& ref : r.refs) {
          if (ref.starts_with("@layout/")) {
            xml << "  <include layout=\"" << ref << "\"/>\n";
          } else {
            xml << "  <ImageView android:src=\"" << ref << "\"/>\n";
          }
        }
        for (const auto& tag : r.tags) xml << "  <" << tag << " android:id=\"@+id/w\"/>\n";
        xml << "</LinearLayout>\n";
      }
      pkg_.res_files[r.path] = text_bytes(xml.str());
    }
  }

  void build_assets() {
    auto dirs = rng_.between(1, 3);
    for (std::uint64_t k = 0; k < dirs; ++k) {
      std::string dir = "dir" + std::to_string(k);
      auto mode = rng_.below(3);  // 0 directory string, 1 per-file strings, 2 none
      auto files = rng_.between(1, 3);
      if (mode == 0) {
        static const std::vector<std::string> kForms{"", "/", "assets/|/"};
        const std::string& form = rng_.pick(kForms);
        std::string s = form == "" ? dir : form == "/" ? dir + "/" : "assets/" + dir + "/";
        live_strings_.push_back(s);
        append_to_live_site(ConstString{s});
      }
      for (std::uint64_t j = 0; j < files; ++j) {
        std::string rel = dir + "/f" + std::to_string(j) + ".bin";
        std::string path = "assets/" + rel;
        bool live = mode == 0;
        if (mode == 1 && rng_.chance(50)) {
          live = true;
          std::string s = rng_.chance(50) ? rel : path;
          live_strings_.push_back(s);
          append_to_live_site(ConstString{s});
        }
        asset_live_[path] = live;
        pkg_.asset_files[path] = rng_.bytes(rng_.between(16, 600));
      }
    }
    auto tops = rng_.below(3);
    for (std::uint64_t k = 0; k < tops; ++k) {
      std::string rel = "cfg" + std::to_string(k) + ".json";
      std::string path = "assets/" + rel;
      bool live = rng_.chance(50);
      if (live) {
        live_strings_.push_back(rel);
        append_to_live_site(ConstString{rel});
      }
      asset_live_[path] = live;
      pkg_.asset_files[path] = text_bytes("{\"k\":" + std::to_string(rng_.below(1000)) + "}");
    }
  }

  void build_resource_index() {
    if (!rng_.chance(60)) return;
    std::string r = prefix_ + ".R$drawable";
    bool live = rng_.chance(50);
    ClassDef& cls = add_class(r, std::string(kObject), Role::ResourceIndex, live);
    cls.fields.push_back({"icon", "I"});
    MethodRef clinit = add_method(r, std::string(kStaticInitName), "()V", live);
    for (const auto& res : resources_) {
      if (res.type == ResourceType::Drawable) append(clinit, ConstResource{res.id});
    }
    if (live) append_to_live_site(FieldAccess{r, "icon"});
  }

  void build_natives() {
    auto libs = rng_.below(3);
    for (std::uint64_t k = 0; k < libs; ++k) {
      pkg_.native_files["lib/armeabi-v7a/libgen" + std::to_string(k) + ".so"] =
          rng_.bytes(rng_.between(32, 256));
    }
  }

  // -- dead structure --------------------------------------------------------

  void build_dead_classes() {
    auto count = rng_.between(1, static_cast<std::uint64_t>(std::max(1, options_.max_dead_classes)));
    for (std::uint64_t i = 0; i < count; ++i) {
      std::string d = prefix_ + ".legacy.Unused" + std::to_string(i);
      std::string super = std::string(kObject);
      auto roll = rng_.below(4);
      if (roll == 1 && !dead_classes_.empty()) super = rng_.pick(dead_classes_);
      if (roll == 2) super = rng_.pick(workers_);
      add_class(d, super, Role::Dead, false);
      if (rng_.chance(50)) add_constructor(d, super, false);
      auto own = rng_.between(1, 3);
      for (std::uint64_t j = 0; j < own; ++j) {
        add_method(d, "d" + std::to_string(i) + "m" + std::to_string(j), "(I)V", false);
      }
      if (rng_.chance(10)) add_method(d, "natd" + std::to_string(i), "()V", false, true);
      if (roles_.contains(super) && roles_.at(super) == Role::Worker && rng_.chance(30)) {
        auto candidates = overridable(super);
        if (!candidates.empty()) {
          const MethodRef& base = rng_.pick(candidates);
          add_method(d, base.name, base.descriptor, false);
        }
      }
      if (listener_ && rng_.chance(20)) implement_listener(d, false);
      dead_classes_.push_back(d);
    }
  }

  void add_dead_methods_to_live_classes() {
    for (const auto& s : seed_classes_) {
      auto n = rng_.below(2);
      for (std::uint64_t j = 0; j < n; ++j) add_method(s, "unusedHelper" + std::to_string(j), "(I)I", false);
    }
  }

  void sprinkle_live_sites() {
    auto extra = rng_.between(1, 6);
    for (std::uint64_t i = 0; i < extra; ++i) {
      switch (rng_.below(4)) {
        case 0:
          append_to_live_site(Invoke{std::string(kLogCall), "d",
                                     "(Ljava/lang/String;Ljava/lang/String;)I"});
          break;
        case 1: append_to_live_site(ConstString{noise()}); break;
        case 2: append_to_live_site(ConstResource{rng_.pick(live_res_ids_)}); break;
        default:
          if (!direct_targets_.empty()) {
            const MethodRef& t = rng_.pick(direct_targets_);
            append_to_live_site(Invoke{t.owner, t.name, t.descriptor});
          }
      }
    }
  }

  // Dead bodies may reference anything in the package, but only resources
  // and asset strings that are live anyway.
  void fill_dead_bodies() {
    std::vector<std::string> classes;
    for (const auto& [name, cls] : pkg_.classes) classes.push_back(name);
    for (const auto& ref : dead_bodies_) {
      auto n = rng_.below(5);
      for (std::uint64_t i = 0; i < n; ++i) {
        const std::string& target = rng_.pick(classes);
        const ClassDef& tcls = pkg_.classes.at(target);
        switch (rng_.below(5)) {
          case 0:
            if (!tcls.methods.empty()) {
              const MethodDef& m = rng_.pick(tcls.methods);
              append(ref, Invoke{target, m.name, m.descriptor});
            }
            break;
          case 1: append(ref, NewInstance{target}); break;
          case 2: append(ref, FieldAccess{target, "count"}); break;
          case 3: append(ref, ConstResource{rng_.pick(live_res_ids_)}); break;
          default:
            append(ref, ConstString{!live_strings_.empty() && rng_.chance(50)
                                        ? rng_.pick(live_strings_)
                                        : noise()});
        }
      }
    }
  }

  void finish_listener() {
    if (!listener_) return;
    bool implemented_live = false;
    for (const auto& name : live_classes_) {
      const auto& ifaces = pkg_.classes.at(name).interfaces;
      if (std::find(ifaces.begin(), ifaces.end(), *listener_) != ifaces.end()) implemented_live = true;
    }
    if (listener_invoked_ || implemented_live) live_classes_.insert(*listener_);
  }

  // Returns the configured share.
  double add_library_classes() {
    double target = 0.50 + static_cast<double>(rng_.below(4501)) / 10000.0;
    std::uint64_t app = 0;
    for (const auto& [name, cls] : pkg_.classes) app += serialize_class_text(cls).size();
    auto library = static_cast<std::uint64_t>(std::llround(target * static_cast<double>(app) /
                                                           (1.0 - target)));
    constexpr std::uint64_t kMinPiece = 1500;
    constexpr std::uint64_t kMaxPiece = 6000;
    int index = 0;
    while (library > 0) {
      std::uint64_t piece = library <= 2 * kMaxPiece ? library : rng_.between(kMinPiece, kMaxPiece);
      std::string name = "android.support.v4.gen.Lib" + std::to_string(index++);
      pkg_.classes.emplace(name, make_padded_class(name, std::string(kObject), piece));
      roles_[name] = Role::Library;
      library -= piece;
    }
    return target;
  }

  std::vector<LedgerRow> make_ledger(const Package& pkg) const {
    std::vector<LedgerRow> rows;
    for (const auto& [name, cls] : pkg.classes) {
      bool live = live_classes_.contains(name);
      rows.push_back({name_, "class", name, live, serialize_class_text(cls).size()});
      if (!live) continue;
      for (const auto& m : cls.methods) {
        MethodRef ref{name, m.name, m.descriptor};
        rows.push_back({name_, "method", to_string(ref), method_live_.at(ref), method_text_size(m)});
      }
    }
    for (const auto& e : pkg.resource_table.entries) {
      if (!is_file_resource(e.type)) continue;
      bool live = std::find_if(resources_.begin(), resources_.end(), [&](const ResourcePlan& r) {
                    return r.id == e.id;
                  })->live;
      rows.push_back({name_, std::string(to_string(e.type)),
                      std::string(to_string(e.type)) + "/" + e.name, live,
                      pkg.res_files.at(*e.path).size() + serialize_resource_row(e).size()});
    }
    for (const auto& [path, data] : pkg.asset_files) {
      rows.push_back({name_, "asset", path, asset_live_.at(path), data.size()});
    }
    return rows;
  }

  Rng rng_;
  std::string name_;
  GeneratorOptions options_;
  std::string prefix_;
  Package pkg_;

  std::string main_;
  MethodRef on_create_;
  std::map<std::string, Role> roles_;
  std::set<std::string> live_classes_;
  std::map<MethodRef, bool> method_live_;
  std::vector<MethodRef> sites_;
  std::vector<MethodRef> direct_targets_;
  std::set<MethodRef> overrides_;
  std::set<MethodRef> overridden_;
  std::vector<MethodRef> dead_bodies_;
  std::vector<std::string> seed_classes_;
  std::vector<std::string> widgets_;
  std::vector<std::string> workers_;
  std::vector<std::string> dead_classes_;
  std::optional<std::string> listener_;
  bool listener_invoked_ = false;

  std::vector<ResourcePlan> resources_;
  std::vector<std::string> string_names_;
  std::vector<std::uint32_t> live_res_ids_;
  std::vector<std::string> live_strings_;
  std::map<std::string, bool> asset_live_;
};

}  // namespace

ClassDef make_padded_class(const std::string& name, const std::string& superclass,
                           std::uint64_t bytes) {
  ClassDef cls;
  cls.name = name;
  cls.superclass = superclass;
  MethodDef clinit;
  clinit.name = std::string(kStaticInitName);
  clinit.descriptor = "()V";
  cls.methods.push_back(clinit);

  // Each `    const-string "<n chars>"` line costs n + 20 bytes.
  constexpr std::uint64_t kLineOverhead = 20;
  constexpr std::uint64_t kChunk = 1000;
  std::uint64_t base = serialize_class_text(cls).size();
  if (bytes < base || (bytes > base && bytes - base < kLineOverhead)) {
    throw Error(ErrorKind::InvalidPackage,
                "cannot pad class " + name + " to " + std::to_string(bytes) + " bytes");
  }
  std::uint64_t remaining = bytes - base;
  char fill = 'a';
  while (remaining > 0) {
    std::uint64_t n;
    if (remaining <= kChunk + kLineOverhead) {
      n = remaining - kLineOverhead;
    } else {
      n = remaining - (kChunk + kLineOverhead) < kLineOverhead ? kChunk / 2 : kChunk;
    }
    cls.methods.front().body.push_back(ConstString{std::string(n, fill)});
    fill = fill == 'z' ? 'a' : static_cast<char>(fill + 1);
    remaining -= n + kLineOverhead;
  }
  return cls;
}

GeneratedPackage generate_package(std::uint64_t seed, const std::string& name,
                                  const GeneratorOptions& options) {
  return PackageBuilder(seed, name, options).build();
}

std::uint64_t corpus_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string corpus_package_name(std::size_t index) {
  std::string digits = std::to_string(index);
  return "pkg-" + std::string(digits.size() < 4 ? 4 - digits.size() : 0, '0') + digits;
}

std::vector<GeneratedPackage> generate_corpus(std::uint64_t seed, std::size_t count,
                                              const GeneratorOptions& options) {
  std::vector<GeneratedPackage> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    corpus.push_back(generate_package(corpus_seed(seed, i), corpus_package_name(i), options));
  }
  return corpus;
}

std::string serialize_ledger(const std::vector<LedgerRow>& rows) {
  std::string out = "package\tkind\tidentifier\tstatus\tbytes\n";
  for (const auto& r : rows) {
    out += r.package + "\t" + r.kind + "\t" + r.identifier + "\t" + (r.live ? "live" : "dead") +
           "\t" + std::to_string(r.bytes) + "\n";
  }
  return out;
}

std::vector<LedgerRow> parse_ledger(std::string_view text) {
  std::vector<LedgerRow> rows;
  std::size_t line_no = 0;
  for_each_line(text, [&](std::string_view line) {
    ++line_no;
    if (line.empty() || line_no == 1) return;
    std::vector<std::string_view> cols;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string_view::npos; start = tab + 1) {
      cols.push_back(line.substr(start, tab - start));
    }
    cols.push_back(line.substr(start));
    if (cols.size() != 5 || (cols[3] != "live" && cols[3] != "dead")) {
      throw Error(ErrorKind::TableParseError, "malformed ledger row", "ledger.tsv", line_no);
    }
    LedgerRow r{std::string(cols[0]), std::string(cols[1]), std::string(cols[2]),
                cols[3] == "live", 0};
    auto [ptr, ec] = std::from_chars(cols[4].data(), cols[4].data() + cols[4].size(), r.bytes);
    if (ec != std::errc{} || ptr != cols[4].data() + cols[4].size()) {
      throw Error(ErrorKind::TableParseError, "bad byte count", "ledger.tsv", line_no);
    }
    rows.push_back(std::move(r));
  });
  return rows;
}

}  // namespace taptrim
