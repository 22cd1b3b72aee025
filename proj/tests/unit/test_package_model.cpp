#include <doctest.h>

#include <algorithm>

#include "builders.hpp"
#include "chaos.hpp"
#include "oracle.hpp"
#include "taptrim/error.hpp"
#include "taptrim/fixtures.hpp"
#include "taptrim/generator.hpp"
#include "taptrim/package.hpp"

using namespace taptrim;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

constexpr std::string_view kListingClass = R"(.class com.example.MainActivity
.super android.app.Activity

.method <init> ()V
    invoke android.app.Activity.<init> ()V
.end method

.method onCreate (Landroid/os/Bundle;)V
    invoke android.app.Activity.onCreate (Landroid/os/Bundle;)V
    const-resource 0x7f09001b
    invoke com.example.MainActivity.setContentView (I)V
    invoke com.example.MainActivity.sum (II)I
.end method

.method sum (II)I
.end method

.method sub (II)I
.end method
)";

}  // namespace

TEST_SUITE("zip") {
  TEST_CASE("entries survive a write/read cycle") {
    std::vector<ZipEntry> in{{"a.txt", testkit::bytes("hello")},
                             {"dir/b.bin", Bytes(5000, 7)},
                             {"empty", {}}};
    auto out = read_zip(write_zip(in));
    REQUIRE(out.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(out[i].path == in[i].path);
      CHECK(out[i].data == in[i].data);
    }
  }

  TEST_CASE("garbage and truncated input are malformed") {
    CHECK(kind_of([] { read_zip(testkit::bytes("not a zip at all")); }) == ErrorKind::MalformedArchive);
    Bytes archive = write_zip({{"a", testkit::bytes("abc")}});
    archive.resize(archive.size() - 5);
    CHECK(kind_of([&] { read_zip(archive); }) == ErrorKind::MalformedArchive);
  }

  TEST_CASE("a flipped payload byte fails the checksum") {
    Bytes archive = write_zip({{"a", Bytes(100, 'x')}});
    // Local header is 30 bytes plus the 1-byte name; the payload follows.
    archive[31] ^= 0xff;
    CHECK(kind_of([&] { read_zip(archive); }) == ErrorKind::MalformedArchive);
  }

  TEST_CASE("writing is deterministic") {
    std::vector<ZipEntry> in{{"x", Bytes(300, 1)}, {"y", testkit::bytes("z")}};
    CHECK(write_zip(in) == write_zip(in));
  }
}

TEST_SUITE("class text") {
  TEST_CASE("empty class") {
    ClassDef c = parse_class_text(".class a.B\n.super java.lang.Object\n");
    CHECK(c.name == "a.B");
    CHECK(c.superclass == "java.lang.Object");
    CHECK(c.methods.empty());
  }

  TEST_CASE("transcribed activity has four methods") {
    ClassDef c = parse_class_text(kListingClass);
    CHECK(c.name == "com.example.MainActivity");
    CHECK(c.superclass == "android.app.Activity");
    REQUIRE(c.methods.size() == 4);
    CHECK(c.methods[0].is_constructor());
    const MethodDef* on_create = c.find_method("onCreate", "(Landroid/os/Bundle;)V");
    REQUIRE(on_create != nullptr);
    CHECK(on_create->body.size() == 4);
    CHECK(std::get<ConstResource>(on_create->body[1]).id == 2131296283u);
    CHECK(std::get<Invoke>(on_create->body[3]) == Invoke{"com.example.MainActivity", "sum", "(II)I"});
  }

  TEST_CASE("canonical text is reproduced exactly") {
    CHECK(serialize_class_text(parse_class_text(kListingClass)) == kListingClass);
  }

  TEST_CASE("duplicate methods are rejected") {
    auto text = ".class a.B\n.super java.lang.Object\n.method sum (II)I\n.end method\n"
                ".method sum (II)I\n.end method\n";
    CHECK(kind_of([&] { parse_class_text(text); }) == ErrorKind::DuplicateMethod);
  }

  TEST_CASE("overloads are distinct methods") {
    auto text = ".class a.B\n.method f (I)V\n.end method\n.method f (J)V\n.end method\n";
    CHECK(parse_class_text(text).methods.size() == 2);
  }

  TEST_CASE("syntax errors carry the line") {
    struct Case {
      std::string text;
      std::size_t line;
    };
    std::vector<Case> cases{
        {".super a.B\n", 1},
        {".class a.B\n.super a.B\n", 2},
        {".class a.B\n.method f ()V\n  bogus a.b\n.end method\n", 3},
        {".class a.B\n.method f ()V\n", 2},
        {".class a.B\n.method native f ()V\n  new-instance a.C\n.end method\n", 3},
        {".class a.B\n.method f ()V\n  const-resource 0x7f01\n.end method\n", 3},
        {".class a.B\n.method f ()V\n  const-string \"open\n.end method\n", 3},
        {".class a.B\n.super x.Y\n.super x.Z\n", 3},
    };
    for (const auto& c : cases) {
      CAPTURE(c.text);
      try {
        parse_class_text(c.text, "classes/a/B.cls");
        FAIL("accepted");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ClassParseError);
        CHECK(e.line() == c.line);
        CHECK(e.path() == "classes/a/B.cls");
      }
    }
  }

  TEST_CASE("string escapes round-trip") {
    ClassDef c;
    c.name = "a.B";
    c.superclass = "java.lang.Object";
    std::string nasty = "quote\" back\\ nl\n tab\t cr\r ctl\x01 hi\xc3\xa9";
    c.methods.push_back({"f", "()V", false, {ConstString{nasty}}});
    CHECK(parse_class_text(serialize_class_text(c)) == c);
  }

  TEST_CASE("comments and blank lines are ignored") {
    auto text = "# header\n\n.class a.B\n  # inside\n.super java.lang.Object\n";
    CHECK(parse_class_text(text).name == "a.B");
  }

  TEST_CASE("method block size is what removal saves") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Package pkg = chaos::make_package(seed);
      for (const auto& [name, cls] : pkg.classes) {
        std::size_t full = serialize_class_text(cls).size();
        for (std::size_t k = 0; k < cls.methods.size(); ++k) {
          ClassDef without = cls;
          without.methods.erase(without.methods.begin() + static_cast<std::ptrdiff_t>(k));
          CHECK(full - serialize_class_text(without).size() == method_text_size(cls.methods[k]));
        }
      }
    }
  }

  TEST_CASE("storage paths map both ways") {
    CHECK(class_storage_path("com.example.R$drawable") == "classes/com/example/R$drawable.cls");
    CHECK(class_name_from_path("classes/com/example/Main.cls") == "com.example.Main");
    CHECK_FALSE(class_name_from_path("classes/com/example/Main.txt"));
    CHECK_FALSE(class_name_from_path("res/x.cls"));
  }
}

TEST_SUITE("manifest and table") {
  TEST_CASE("manifest keys") {
    Manifest m = parse_manifest(
        "# app\npackage: com.example\napplication: com.example.App\nactivity: com.example.A\n"
        "activity: com.example.B\nmain-activity: com.example.B\nservice: com.example.S\n"
        "receiver: other.R\nprovider: com.example.P\n");
    CHECK(m.package_name == "com.example");
    CHECK(m.application_class == "com.example.App");
    CHECK(m.activities == std::vector<std::string>{"com.example.A", "com.example.B"});
    CHECK(m.main_activity == "com.example.B");
    CHECK(m.declared_classes().size() == 6);
    CHECK(parse_manifest(serialize_manifest(m)) == m);
  }

  TEST_CASE("manifest errors") {
    for (std::string text : {"activity: a.B\n", "package: a\nmain-activity: a.B\n",
                             "package: a\ncolour: red\n", "package a\n", "package: a\npackage: b\n"}) {
      CAPTURE(text);
      CHECK(kind_of([&] { parse_manifest(text); }) == ErrorKind::ManifestParseError);
    }
  }

  TEST_CASE("table rows") {
    ResourceTable t = parse_resource_table(
        "0x7f020000\tdrawable\ticon\tres/drawable/icon.png\n0x7f040000\tstring\tapp_name\t\n");
    REQUIRE(t.entries.size() == 2);
    CHECK(t.find(0x7f020000u)->path == "res/drawable/icon.png");
    CHECK(t.find(ResourceType::String, "app_name")->id == 0x7f040000u);
    CHECK_FALSE(t.entries[1].path);
    CHECK(parse_resource_table(serialize_resource_table(t)) == t);
  }

  TEST_CASE("table errors carry the line") {
    std::vector<std::string> bad{
        "0x7f020000\tdrawable\ticon\n",
        "0x7f020000\tdrawable\ticon\t\n",
        "0x7f040000\tstring\tname\tres/values/x.xml\n",
        "0x7f02\tdrawable\ticon\tres/drawable/icon.png\n",
        "0x7f020000\tsprite\ticon\tres/drawable/icon.png\n",
        "0x7f020000\tdrawable\ticon\tres/drawable/icon.png\n"
        "0x7f020000\tdrawable\tother\tres/drawable/other.png\n",
    };
    for (const auto& text : bad) {
      CAPTURE(text);
      try {
        parse_resource_table(text);
        FAIL("accepted");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TableParseError);
        CHECK(e.line() >= 1);
      }
    }
  }
}

TEST_SUITE("package") {
  TEST_CASE("minimal package: one empty activity") {
    Package pkg = testkit::package_of("a.Main", {".class a.Main\n.super android.app.Activity\n"});
    Package back = parse_package(serialize_package(pkg));
    CHECK(back.classes.size() == 1);
    CHECK(back.resource_table.entries.empty());
    CHECK(back.res_files.empty());
    CHECK(back == pkg);
  }

  TEST_CASE("missing manifest") {
    Bytes archive = write_zip({{"classes/a/B.cls", testkit::bytes(".class a.B\n")}});
    CHECK(kind_of([&] { parse_package(archive); }) == ErrorKind::MissingManifest);
  }

  TEST_CASE("class stored under the wrong path") {
    Bytes archive = write_zip({{"manifest.txt", testkit::bytes("package: a\n")},
                               {"classes/a/C.cls", testkit::bytes(".class a.B\n")}});
    CHECK(kind_of([&] { parse_package(archive); }) == ErrorKind::PathMismatch);
  }

  TEST_CASE("bad class text reports its path and line") {
    Bytes archive = write_zip({{"manifest.txt", testkit::bytes("package: a\n")},
                               {"classes/a/B.cls", testkit::bytes(".class a.B\nwhat\n")}});
    try {
      parse_package(archive);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ClassParseError);
      CHECK(e.path() == "classes/a/B.cls");
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("not an archive") {
    CHECK(kind_of([] { parse_package(testkit::bytes("PK")); }) == ErrorKind::MalformedArchive);
  }

  TEST_CASE("invariant violations are caught before writing") {
    Package pkg = testkit::package_of("a.Main", {".class a.Main\n.super android.app.Activity\n"});
    pkg.resource_table.entries.push_back({0x7f020000u, ResourceType::Drawable, "x", "res/drawable/x.png"});
    CHECK(kind_of([&] { serialize_package(pkg); }) == ErrorKind::InvalidPackage);

    Package dup = testkit::package_of("a.Main", {".class a.Main\n.super android.app.Activity\n"});
    testkit::add_file_resource(dup, 0x7f020000u, ResourceType::Drawable, "x", "res/drawable/x.png", "1");
    dup.resource_table.entries.push_back({0x7f020000u, ResourceType::String, "y", {}});
    CHECK(kind_of([&] { serialize_package(dup); }) == ErrorKind::InvalidPackage);

    Package renamed = testkit::package_of("a.Main", {".class a.Main\n.super android.app.Activity\n"});
    renamed.classes["a.Other"] = renamed.classes.at("a.Main");
    CHECK(kind_of([&] { serialize_package(renamed); }) == ErrorKind::InvalidPackage);
  }

  TEST_CASE("insertion order does not change the archive") {
    Package a = chaos::make_package(3);
    Package b;
    b.manifest = a.manifest;
    b.resource_table = a.resource_table;
    for (auto it = a.classes.rbegin(); it != a.classes.rend(); ++it) b.classes.insert(*it);
    for (auto it = a.res_files.rbegin(); it != a.res_files.rend(); ++it) b.res_files.insert(*it);
    for (auto it = a.asset_files.rbegin(); it != a.asset_files.rend(); ++it) b.asset_files.insert(*it);
    CHECK(serialize_package(a) == serialize_package(b));
  }

  TEST_CASE("round trip on 50 generated packages") {
    for (const auto& g : generate_corpus(11, 50)) {
      Bytes archive = serialize_package(g.package);
      Package back = parse_package(archive);
      CHECK(back == g.package);
      CHECK(serialize_package(back) == archive);
    }
  }

  TEST_CASE("round trip on chaos packages") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Package pkg = chaos::make_package(seed);
      CHECK(parse_package(serialize_package(pkg)) == pkg);
    }
  }
}

TEST_SUITE("component sizes") {
  TEST_CASE("manifest-only package") {
    Package pkg;
    pkg.manifest.package_name = "a";
    ComponentSizes s = component_sizes(pkg);
    CHECK(s.res_bytes == 0);
    CHECK(s.assets_bytes == 0);
    CHECK(s.native_bytes == 0);
    CHECK(s.code_bytes == 0);
    CHECK(s.config_bytes == serialize_manifest(pkg.manifest).size());
  }

  TEST_CASE("weather fixture components") {
    ComponentSizes s = component_sizes(weather_package());
    // 65.63 KB images + 6.80 KB layouts + 15606 bytes of table and values.
    CHECK(s.res_bytes == 67205 + 6963 + 15606);
    CHECK(s.assets_bytes == 0);
    CHECK(s.native_bytes == 0);
    CHECK(s.code_bytes == 1394606);
    CHECK(s.config_bytes == 2478);
    CHECK(s.total() == 1486858);
  }

  TEST_CASE("total equals the archive's own entry sizes") {
    for (const auto& g : generate_corpus(5, 40)) {
      Bytes archive = serialize_package(g.package);
      CHECK(component_sizes(g.package).total() == oracle::archive_uncompressed_total(archive));
    }
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Package pkg = chaos::make_package(seed);
      CHECK(component_sizes(pkg).total() ==
            oracle::archive_uncompressed_total(serialize_package(pkg)));
    }
  }

  TEST_CASE("digest follows content") {
    Package a = chaos::make_package(1);
    Package b = a;
    CHECK(package_digest(a) == package_digest(b));
    b.asset_files["assets/extra"] = Bytes{1};
    CHECK(package_digest(a) != package_digest(b));
  }
}
