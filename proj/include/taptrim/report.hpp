#pragma once

// JSON and TSV renderings of every report. JSON is the default machine
// format; each TSV starts with a header row.

#include <optional>
#include <string>
#include <vector>

#include "taptrim/analyzer.hpp"
#include "taptrim/bloat.hpp"
#include "taptrim/trimmer.hpp"

namespace taptrim {

enum class Format { Json, Tsv };

// Throws Error{ConfigError} for anything but "json" or "tsv".
Format parse_format(std::string_view text);

struct AnalyzeRow {
  std::string package;  // file name or fixture name
  CompositionReport composition;
  std::optional<double> library_ratio;  // absent when the package has no code
};

// One row per package in corpus mode.
std::string render_analyze(const std::vector<AnalyzeRow>& rows, Format format);

struct BloatReports {
  CodeBloatReport code;
  ResBloatReport res;
  AssetBloatReport assets;
};

// `pkg` supplies resource names for the res report.
std::string render_bloat(const Package& pkg, const BloatReports& bloat, Format format);
std::string render_trim(const TrimReport& report, Format format);
// Fixed-width summary for a terminal.
std::string render_trim_table(const TrimReport& report);
std::string render_verify(const VerifyReport& report, Format format);
std::string render_compare(const std::string& first_name, const std::string& second_name,
                           const PairReport& report, Format format);

// Six decimal places, used for ratios in TSV output.
std::string format_fraction(double value);

}  // namespace taptrim
