#pragma once

// Deterministic synthetic package corpus with a planted-bloat ledger. Every
// generated item is live or dead by construction, so the ledger is ground
// truth for the trimmer.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taptrim/package.hpp"

namespace taptrim {

struct LedgerRow {
  std::string package;
  std::string kind;  // class, method, drawable, layout, asset
  std::string identifier;
  bool live = true;
  std::uint64_t bytes = 0;
  bool operator==(const LedgerRow&) const = default;
};

// TSV with a header line: package, kind, identifier, live|dead, bytes.
std::string serialize_ledger(const std::vector<LedgerRow>& rows);
std::vector<LedgerRow> parse_ledger(std::string_view text);

struct GeneratorOptions {
  int max_workers = 10;
  int max_dead_classes = 8;
  // Adds dead library classes so that they hold a seeded share of the code
  // bytes drawn from [0.50, 0.95].
  bool library_heavy = false;
};

struct GeneratedPackage {
  std::string name;  // corpus file stem, e.g. "pkg-0007"
  Package package;
  std::vector<LedgerRow> ledger;
  std::optional<double> library_ratio;  // configured target, library_heavy only
};

GeneratedPackage generate_package(std::uint64_t seed, const std::string& name,
                                  const GeneratorOptions& options = {});

// Package i of a corpus is generated from corpus_seed(seed, i) and named
// corpus_package_name(i).
std::uint64_t corpus_seed(std::uint64_t seed, std::size_t index);
std::string corpus_package_name(std::size_t index);  // "pkg-0007"
std::vector<GeneratedPackage> generate_corpus(std::uint64_t seed, std::size_t count,
                                              const GeneratorOptions& options = {});

// A class named `name` whose serialized text is exactly `bytes` long,
// padded through string constants in its static initializer. Throws
// Error{InvalidPackage} when `bytes` is below the smallest such class.
ClassDef make_padded_class(const std::string& name, const std::string& superclass,
                           std::uint64_t bytes);

}  // namespace taptrim
