#include <doctest.h>

#include <map>

#include "taptrim/error.hpp"
#include "taptrim/generator.hpp"

using namespace taptrim;

TEST_SUITE("generator") {
  TEST_CASE("same seed, same bytes") {
    auto a = generate_corpus(7, 10);
    auto b = generate_corpus(7, 10);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].name == corpus_package_name(i));
      CHECK(serialize_package(a[i].package) == serialize_package(b[i].package));
      CHECK(a[i].ledger == b[i].ledger);
    }
    CHECK(serialize_package(generate_corpus(8, 1)[0].package) !=
          serialize_package(a[0].package));
  }

  TEST_CASE("corpus members match single generation") {
    auto corpus = generate_corpus(11, 4);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      GeneratedPackage g = generate_package(corpus_seed(11, i), corpus_package_name(i));
      CHECK(serialize_package(g.package) == serialize_package(corpus[i].package));
    }
    CHECK(corpus_package_name(7) == "pkg-0007");
    CHECK(corpus_seed(1, 0) != corpus_seed(1, 1));
  }

  TEST_CASE("generated packages are valid and round-trip") {
    for (const auto& g : generate_corpus(17, 30)) {
      CHECK_NOTHROW(validate_package(g.package));
      Package back = parse_package(serialize_package(g.package));
      CHECK(serialize_package(back) == serialize_package(g.package));
    }
  }

  TEST_CASE("ledger round trip") {
    std::vector<LedgerRow> rows;
    for (const auto& g : generate_corpus(19, 5)) rows.insert(rows.end(), g.ledger.begin(), g.ledger.end());
    REQUIRE_FALSE(rows.empty());
    std::string text = serialize_ledger(rows);
    CHECK(text.starts_with("package\tkind\tidentifier\tstatus\tbytes\n"));
    CHECK(parse_ledger(text) == rows);
  }

  TEST_CASE("ledger rejects malformed rows") {
    std::string header = "package\tkind\tidentifier\tstatus\tbytes\n";
    CHECK_THROWS_AS(parse_ledger(header + "p\tclass\ta.B\tdead\n"), Error);
    CHECK_THROWS_AS(parse_ledger(header + "p\tclass\ta.B\tdead\tmany\n"), Error);
  }

  TEST_CASE("ledger has both live and dead items of every kind") {
    std::map<std::string, std::pair<int, int>> seen;
    for (const auto& g : generate_corpus(23, 30)) {
      for (const auto& row : g.ledger) (row.live ? seen[row.kind].first : seen[row.kind].second)++;
    }
    for (const char* kind : {"class", "method", "drawable", "layout", "asset"}) {
      CAPTURE(kind);
      CHECK(seen[kind].first > 0);
      CHECK(seen[kind].second > 0);
    }
  }

  TEST_CASE("padded classes hit the requested size") {
    for (std::uint64_t n : {100ull, 300ull, 700ull, 1019ull, 1020ull, 1021ull, 1040ull, 1041ull,
                            2041ull, 2060ull, 65536ull, 123457ull}) {
      CAPTURE(n);
      ClassDef cls = make_padded_class("a.Pad", "java.lang.Object", n);
      CHECK(serialize_class_text(cls).size() == n);
      CHECK(serialize_class_text(parse_class_text(serialize_class_text(cls))) ==
            serialize_class_text(cls));
    }
  }

  TEST_CASE("padding below the minimum") {
    ClassDef bare;
    bare.name = "a.Pad";
    bare.superclass = "java.lang.Object";
    bare.methods.push_back(MethodDef{"<clinit>", "()V", false, {}});
    std::uint64_t base = serialize_class_text(bare).size();
    CHECK(serialize_class_text(make_padded_class("a.Pad", "java.lang.Object", base)).size() == base);
    CHECK_THROWS_AS(make_padded_class("a.Pad", "java.lang.Object", base - 1), Error);
    CHECK_THROWS_AS(make_padded_class("a.Pad", "java.lang.Object", base + 19), Error);
    CHECK(serialize_class_text(make_padded_class("a.Pad", "java.lang.Object", base + 20)).size() ==
          base + 20);
  }

  TEST_CASE("library-heavy corpus records its target ratio") {
    for (const auto& g : generate_corpus(29, 10, GeneratorOptions{.library_heavy = true})) {
      REQUIRE(g.library_ratio);
      CHECK(*g.library_ratio >= 0.50);
      CHECK(*g.library_ratio <= 0.95);
    }
    CHECK_FALSE(generate_corpus(29, 1)[0].library_ratio);
  }
}
