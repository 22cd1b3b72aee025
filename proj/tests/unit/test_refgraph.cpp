#include <doctest.h>

#include <algorithm>
#include <random>

#include "builders.hpp"
#include "chaos.hpp"
#include "oracle.hpp"
#include "taptrim/error.hpp"
#include "taptrim/fixtures.hpp"
#include "taptrim/generator.hpp"
#include "taptrim/refgraph.hpp"

using namespace taptrim;

namespace {

std::set<oracle::Method> as_tuples(const std::set<MethodRef>& refs) {
  std::set<oracle::Method> out;
  for (const auto& r : refs) out.emplace(r.owner, r.name, r.descriptor);
  return out;
}

void check_against_oracle(const Package& pkg, const TrimConfig& cfg = {}) {
  ReachabilityResult r = reach(pkg, cfg);
  oracle::Reach o = oracle::naive_reach(pkg, cfg);
  CHECK(r.seeds == o.seeds);
  CHECK(r.kept_classes == o.kept_classes);
  CHECK(as_tuples(r.kept_methods) == o.kept_methods);
  CHECK(r.instantiated == o.instantiated);
  CHECK(r.used_resource_ids == o.used_resource_ids);
  CHECK(r.asset_strings == o.asset_strings);
}

const char* kObjectRoot = ".class a.Base\n.super java.lang.Object\n";

}  // namespace

TEST_SUITE("hierarchy") {
  TEST_CASE("single class has one external parent edge") {
    Package pkg = testkit::package_of("a.Main", {".class a.Main\n.super java.lang.Object\n"});
    ClassHierarchy h = build_hierarchy(pkg, {});
    CHECK(h.parent.size() == 1);
    CHECK(h.parent.at("a.Main") == "java.lang.Object");
    CHECK(h.is_external("java.lang.Object"));
    CHECK(h.children.at("java.lang.Object") == std::set<std::string>{"a.Main"});
  }

  TEST_CASE("two-class cycle") {
    Package pkg = testkit::package_of("a.A", {".class a.A\n.super a.B\n", ".class a.B\n.super a.A\n"});
    try {
      build_hierarchy(pkg, {});
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CyclicHierarchy);
      CHECK(std::string(e.what()).find("a.A") != std::string::npos);
      CHECK(std::string(e.what()).find("a.B") != std::string::npos);
    }
  }

  TEST_CASE("cycle through an interface") {
    Package pkg = testkit::package_of(
        "a.A", {".class a.A\n.super java.lang.Object\n.implements a.I\n", ".class a.I\n.implements a.A\n"});
    CHECK_THROWS_AS(build_hierarchy(pkg, {}), Error);
  }

  TEST_CASE("children match a pairwise scan on random trees") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 20; ++round) {
      Package pkg;
      pkg.manifest.package_name = "t";
      for (int i = 0; i < 20; ++i) {
        ClassDef c;
        c.name = "t.C" + std::to_string(i);
        c.superclass = i == 0 || rng() % 4 == 0 ? "java.lang.Object"
                                                 : "t.C" + std::to_string(rng() % static_cast<unsigned>(i));
        pkg.classes.emplace(c.name, c);
      }
      ClassHierarchy h = build_hierarchy(pkg, {});
      for (const auto& [x, cx] : pkg.classes) {
        std::set<std::string> expected;
        for (const auto& [y, cy] : pkg.classes) {
          if (cy.superclass == x) expected.insert(y);
        }
        auto it = h.children.find(x);
        CHECK((it == h.children.end() ? std::set<std::string>{} : it->second) == expected);
      }
    }
  }

  TEST_CASE("supertypes and subtypes are transitive") {
    Package pkg = testkit::package_of(
        "a.C", {kObjectRoot, ".class a.I\n", ".class a.B\n.super a.Base\n.implements a.I\n",
                ".class a.C\n.super a.B\n"});
    ClassHierarchy h = build_hierarchy(pkg, {});
    CHECK(h.supertypes("a.C") == std::set<std::string>{"a.B", "a.Base", "a.I"});
    CHECK(h.subtypes("a.Base") == std::set<std::string>{"a.B", "a.C"});
    CHECK(h.subtypes("a.I") == std::set<std::string>{"a.B", "a.C"});
    CHECK(h.superclass_chain("a.C") ==
          std::vector<std::string>{"a.C", "a.B", "a.Base", "java.lang.Object"});
  }
}

TEST_SUITE("resolution") {
  TEST_CASE("listing: sum is defined on the activity itself") {
    Package pkg = listing1_package();
    ClassHierarchy h = build_hierarchy(pkg, {});
    Resolution r = resolve_method(h, pkg, "com.example.MainActivity", "sum", "(II)I");
    CHECK(r == Resolution{Resolution::Kind::Internal, "com.example.MainActivity"});
  }

  TEST_CASE("listing: onStart exits to the platform activity") {
    Package pkg = listing1_package();
    ClassHierarchy h = build_hierarchy(pkg, {});
    Resolution r = resolve_method(h, pkg, "com.example.MainActivity", "onStart", "()V");
    CHECK(r == Resolution{Resolution::Kind::External, "android.app.Activity"});
  }

  TEST_CASE("nearest definition wins, interfaces after the superclass chain") {
    Package pkg = testkit::package_of(
        "a.C", {".class a.Base\n.super java.lang.Object\n.method f ()V\n.end method\n",
                ".class a.I\n.method f ()V\n.end method\n.method g ()V\n.end method\n",
                ".class a.B\n.super a.Base\n.implements a.I\n", ".class a.C\n.super a.B\n"});
    ClassHierarchy h = build_hierarchy(pkg, {});
    CHECK(resolve_method(h, pkg, "a.C", "f", "()V") == Resolution{Resolution::Kind::Internal, "a.Base"});
    CHECK(resolve_method(h, pkg, "a.C", "g", "()V") == Resolution{Resolution::Kind::Internal, "a.I"});
    CHECK(resolve_method(h, pkg, "a.C", "h", "()V") ==
          Resolution{Resolution::Kind::External, "java.lang.Object"});
  }

  TEST_CASE("root without a definition is missing") {
    Package pkg = testkit::package_of("a.Main", {".class a.Root\n", ".class a.Main\n.super a.Root\n"});
    ClassHierarchy h = build_hierarchy(pkg, {});
    CHECK(resolve_method(h, pkg, "a.Main", "gone", "()V").kind == Resolution::Kind::Missing);
    CHECK(resolve_method(h, pkg, "x.Y", "any", "()V") == Resolution{Resolution::Kind::External, "x.Y"});
  }

  TEST_CASE("random hierarchies: nearest definer by a plain chain walk") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Package pkg = chaos::make_package(seed);
      ClassHierarchy h = build_hierarchy(pkg, {});
      for (const auto& [name, cls] : pkg.classes) {
        for (std::string m : {"run", "get", "onClick"}) {
          Resolution r = resolve_method(h, pkg, name, m, "()V");
          std::string cur = name;
          std::string expected;
          while (pkg.classes.contains(cur)) {
            if (pkg.classes.at(cur).find_method(m, "()V") != nullptr) {
              expected = cur;
              break;
            }
            cur = pkg.classes.at(cur).superclass;
          }
          if (!expected.empty()) {
            CHECK(r == Resolution{Resolution::Kind::Internal, expected});
          } else if (r.kind == Resolution::Kind::Internal) {
            // Found through an interface.
            CHECK(pkg.classes.at(r.owner).find_method(m, "()V") != nullptr);
            CHECK(h.supertypes(name).contains(r.owner));
          }
        }
      }
    }
  }
}

TEST_SUITE("seeds") {
  TEST_CASE("listing seeds the main activity only") {
    Package pkg = listing1_package();
    CHECK(collect_seeds(pkg, build_hierarchy(pkg, {}), {}) ==
          std::set<std::string>{"com.example.MainActivity"});
  }

  TEST_CASE("widget named in a layout") {
    Package pkg = testkit::package_of(
        "com.example.Main", {".class com.example.Main\n.super android.app.Activity\n",
                             ".class com.example.FancyView\n.super android.view.View\n"});
    testkit::add_file_resource(pkg, 0x7f030000u, ResourceType::Layout, "main",
                               "res/layout/main.xml", "<LinearLayout>\n  <com.example.FancyView/>\n</LinearLayout>\n");
    auto seeds = collect_seeds(pkg, build_hierarchy(pkg, {}), {});
    CHECK(seeds.contains("com.example.FancyView"));
  }

  TEST_CASE("framework subclasses, enums and keep globs") {
    Package pkg = testkit::package_of(
        "a.Main", {".class a.Main\n.super android.app.Activity\n",
                   ".class a.Base\n.super android.app.Service\n", ".class a.Sync\n.super a.Base\n",
                   ".class a.Color\n.super java.lang.Enum\n", ".class a.Model\n.super java.lang.Object\n",
                   ".class a.Plain\n.super java.lang.Object\n"});
    TrimConfig cfg;
    cfg.extra_keep = {"*Model"};
    auto seeds = collect_seeds(pkg, build_hierarchy(pkg, cfg), cfg);
    CHECK(seeds == std::set<std::string>{"a.Base", "a.Color", "a.Main", "a.Model", "a.Sync"});
  }

  TEST_CASE("no main activity") {
    Package pkg;
    pkg.manifest.package_name = "a";
    pkg.classes.emplace("a.X", parse_class_text(".class a.X\n"));
    try {
      collect_seeds(pkg, build_hierarchy(pkg, {}), {});
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingSeed);
    }
  }

  TEST_CASE("declared class absent") {
    Package pkg = testkit::package_of("a.Main", {".class a.Main\n.super android.app.Activity\n"});
    pkg.manifest.services.push_back("a.Gone");
    CHECK_THROWS_AS(collect_seeds(pkg, build_hierarchy(pkg, {}), {}), Error);
  }
}

TEST_SUITE("reach") {
  TEST_CASE("listing keeps init, onCreate and sum but not sub") {
    ReachabilityResult r = reach(listing1_package(), {});
    const std::string m = "com.example.MainActivity";
    CHECK(r.kept_methods.contains({m, "<init>", "()V"}));
    CHECK(r.kept_methods.contains({m, "onCreate", "(Landroid/os/Bundle;)V"}));
    CHECK(r.kept_methods.contains({m, "sum", "(II)I"}));
    CHECK_FALSE(r.kept_methods.contains({m, "sub", "(II)I"}));
    CHECK(r.used_resource_ids == std::set<std::uint32_t>{0x7f09001bu});
    CHECK(r.external_refs.contains({"android.app.Activity", "onCreate", "(Landroid/os/Bundle;)V"}));
  }

  TEST_CASE("everything invoked from onCreate is kept") {
    Package pkg = testkit::package_of(
        "a.Main",
        {".class a.Main\n.super android.app.Activity\n"
         ".method onCreate (Landroid/os/Bundle;)V\n  invoke a.Main.f ()V\n  new-instance a.W\n.end method\n"
         ".method f ()V\n  invoke a.W.g (I)I\n.end method\n",
         ".class a.W\n.super java.lang.Object\n.method <init> ()V\n.end method\n"
         ".method g (I)I\n  invoke a.W.h ()V\n.end method\n.method h ()V\n.end method\n"});
    ReachabilityResult r = reach(pkg, {});
    std::size_t all = 0;
    for (const auto& [n, c] : pkg.classes) all += c.methods.size();
    CHECK(r.kept_methods.size() == all);
  }

  TEST_CASE("overrides count only in receivers") {
    Package pkg = testkit::package_of(
        "a.Main",
        {".class a.Main\n.super android.app.Activity\n"
         ".method onCreate (Landroid/os/Bundle;)V\n  new-instance a.Live\n  invoke a.Base.run ()V\n.end method\n",
         ".class a.Base\n.super java.lang.Object\n.method run ()V\n.end method\n",
         ".class a.Live\n.super a.Base\n.method run ()V\n.end method\n",
         ".class a.Never\n.super a.Base\n.method run ()V\n.end method\n"});
    ReachabilityResult r = reach(pkg, {});
    CHECK(r.kept_methods.contains({"a.Live", "run", "()V"}));
    CHECK_FALSE(r.kept_methods.contains({"a.Never", "run", "()V"}));
    CHECK_FALSE(r.kept_classes.contains("a.Never"));
  }

  TEST_CASE("field access keeps the static initializer only") {
    Package pkg = testkit::package_of(
        "a.Main",
        {".class a.Main\n.super android.app.Activity\n"
         ".method onCreate (Landroid/os/Bundle;)V\n  field-access a.K.count\n.end method\n",
         ".class a.K\n.super java.lang.Object\n.field count I\n.method <init> ()V\n.end method\n"
         ".method <clinit> ()V\n.end method\n.method native n ()V\n.end method\n"});
    ReachabilityResult r = reach(pkg, {});
    CHECK(r.kept_classes.contains("a.K"));
    CHECK(r.kept_methods.contains({"a.K", "<clinit>", "()V"}));
    CHECK(r.kept_methods.contains({"a.K", "n", "()V"}));
    CHECK_FALSE(r.kept_methods.contains({"a.K", "<init>", "()V"}));
    CHECK(r.instantiated.empty());
  }

  TEST_CASE("resource-index classes do not count as usage") {
    Package pkg = listing1_package();
    auto base = reach(pkg, {}).used_resource_ids;
    pkg.classes.emplace("com.example.R$drawable",
                        parse_class_text(".class com.example.R$drawable\n.method <clinit> ()V\n"
                                         "  const-resource 0x7f020001\n.end method\n"));
    pkg.classes.emplace("com.example.R", parse_class_text(".class com.example.R\n.method f ()V\n"
                                                          "  const-resource 0x7f020002\n.end method\n"));
    CHECK(reach(pkg, {}).used_resource_ids == base);
  }

  TEST_CASE("constants are gathered from dead code too") {
    Package pkg = listing1_package();
    pkg.classes.emplace("com.example.Dead",
                        parse_class_text(".class com.example.Dead\n.method f ()V\n"
                                         "  const-resource 0x7f020009\n  const-string \"x.bin\"\n.end method\n"));
    ReachabilityResult r = reach(pkg, {});
    CHECK_FALSE(r.kept_classes.contains("com.example.Dead"));
    CHECK(r.used_resource_ids.contains(0x7f020009u));
    CHECK(r.asset_strings.contains("x.bin"));
  }

  TEST_CASE("oracle equivalence on generated packages") {
    for (const auto& g : generate_corpus(21, 120)) {
      CAPTURE(g.name);
      check_against_oracle(g.package);
    }
  }

  TEST_CASE("oracle equivalence on chaos packages") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      CAPTURE(seed);
      check_against_oracle(chaos::make_package(seed));
    }
  }

  TEST_CASE("closure: kept bodies only point at kept targets") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Package pkg = chaos::make_package(seed);
      ClassHierarchy h = build_hierarchy(pkg, {});
      ReachabilityResult r = reach(pkg, {});
      for (const auto& s : r.seeds) CHECK(r.kept_classes.contains(s));
      for (const auto& ref : r.kept_methods) {
        CHECK(r.kept_classes.contains(ref.owner));
        for (const auto& insn : pkg.classes.at(ref.owner).find_method(ref.name, ref.descriptor)->body) {
          if (const auto* inv = std::get_if<Invoke>(&insn)) {
            Resolution res = resolve_method(h, pkg, inv->owner, inv->name, inv->descriptor);
            if (res.kind == Resolution::Kind::Internal) {
              CHECK(r.kept_methods.contains({res.owner, inv->name, inv->descriptor}));
            }
          } else if (const auto* ni = std::get_if<NewInstance>(&insn)) {
            if (h.is_internal(ni->owner)) CHECK(r.kept_classes.contains(ni->owner));
          }
        }
      }
    }
  }

  TEST_CASE("monotone under appended instructions") {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Package pkg = chaos::make_package(seed);
      ReachabilityResult before = reach(pkg, {});
      const MethodRef& site = *std::next(before.kept_methods.begin(),
                                         static_cast<std::ptrdiff_t>(rng() % before.kept_methods.size()));
      auto& method = const_cast<MethodDef&>(*pkg.classes.at(site.owner).find_method(site.name, site.descriptor));
      auto target = std::next(pkg.classes.begin(), static_cast<std::ptrdiff_t>(rng() % pkg.classes.size()));
      method.body.push_back(NewInstance{target->first});
      if (!target->second.methods.empty()) {
        method.body.push_back(Invoke{target->first, target->second.methods[0].name,
                                     target->second.methods[0].descriptor});
      }
      ReachabilityResult after = reach(pkg, {});
      CHECK(std::includes(after.kept_classes.begin(), after.kept_classes.end(),
                          before.kept_classes.begin(), before.kept_classes.end()));
      CHECK(std::includes(after.kept_methods.begin(), after.kept_methods.end(),
                          before.kept_methods.begin(), before.kept_methods.end()));
    }
  }

  TEST_CASE("independent of method and interface order inside classes") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Package pkg = chaos::make_package(seed);
      Package shuffled = pkg;
      std::mt19937_64 rng(seed);
      for (auto& [name, cls] : shuffled.classes) std::shuffle(cls.methods.begin(), cls.methods.end(), rng);
      ReachabilityResult a = reach(pkg, {});
      ReachabilityResult b = reach(shuffled, {});
      CHECK(a.kept_classes == b.kept_classes);
      CHECK(a.kept_methods == b.kept_methods);
      CHECK(a.instantiated == b.instantiated);
    }
  }
}
