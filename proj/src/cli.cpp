#include "taptrim/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "taptrim/analyzer.hpp"
#include "taptrim/bloat.hpp"
#include "taptrim/error.hpp"
#include "taptrim/fixtures.hpp"
#include "taptrim/generator.hpp"
#include "taptrim/report.hpp"
#include "taptrim/trimmer.hpp"

namespace taptrim {

namespace fs = std::filesystem;

namespace {

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open for reading", path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open for writing", path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed", path.string());
}

void write_file(const fs::path& path, const Bytes& data) {
  write_file(path, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

Package load_package(const std::string& path) {
  try {
    return parse_package(read_file(path));
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw Error(e.kind(), e.what(), path);
  }
}

struct Common {
  std::string config_path;
  std::string format = "json";
  bool paper_strict = false;
  std::vector<std::string> platform_prefixes;
  std::vector<std::string> library_prefixes;
  std::vector<std::string> keep;

  void add_to(CLI::App* app) {
    app->add_option("--config", config_path, "Keep-rule config file")->check(CLI::ExistingFile);
    app->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "tsv"}));
    app->add_flag("--paper-strict", paper_strict,
                  "No res-to-res closure and no asset directory matching");
    app->add_option("--platform-prefix", platform_prefixes, "Replace the platform prefixes");
    app->add_option("--library-prefix", library_prefixes, "Replace the library prefixes");
    app->add_option("--keep", keep, "Extra class-name glob kept as a seed");
  }

  TrimConfig config() const {
    TrimConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path, cfg);
    if (paper_strict) cfg.paper_strict = true;
    if (!platform_prefixes.empty()) cfg.platform_prefixes = platform_prefixes;
    if (!library_prefixes.empty()) cfg.library_prefixes = library_prefixes;
    cfg.extra_keep.insert(cfg.extra_keep.end(), keep.begin(), keep.end());
    cfg.validate();
    return cfg;
  }
};

std::vector<fs::path> corpus_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, "not a directory", dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tap") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

AnalyzeRow analyze_row(const std::string& name, const Package& pkg, const TrimConfig& cfg) {
  AnalyzeRow row{name, composition_report(pkg), std::nullopt};
  if (!pkg.classes.empty()) row.library_ratio = library_ratio(pkg, cfg);
  return row;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trim and analyze TAP application packages", "taptrim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "taptrim 0.1.0");

  Common common;

  auto* analyze = app.add_subcommand("analyze", "Component composition and library ratio");
  std::vector<std::string> analyze_inputs;
  std::string corpus_dir;
  analyze->add_option("inputs", analyze_inputs, "Package files");
  analyze->add_option("--corpus", corpus_dir, "Directory of .tap files, one row each");
  common.add_to(analyze);

  auto* bloat = app.add_subcommand("bloat", "Report code, res and asset bloat");
  std::string bloat_input;
  bloat->add_option("input", bloat_input)->required();
  common.add_to(bloat);

  auto* trim_cmd = app.add_subcommand("trim", "Remove bloat and repack");
  std::string trim_input;
  std::string trim_output;
  std::string trim_report;
  bool code_first = false;
  trim_cmd->add_option("input", trim_input)->required();
  trim_cmd->add_option("-o,--output", trim_output, "Trimmed package")->required();
  trim_cmd->add_option("--report", trim_report, "Write the removal report here");
  trim_cmd->add_flag("--code-first", code_first, "Trim code before assets and res");
  common.add_to(trim_cmd);

  auto* verify = app.add_subcommand("verify", "Check that every reference resolves");
  std::string verify_input;
  verify->add_option("input", verify_input)->required();
  common.add_to(verify);

  auto* compare_cmd = app.add_subcommand("compare", "Side-by-side package metrics");
  std::vector<std::string> compare_inputs;
  compare_cmd->add_option("inputs", compare_inputs)->required()->expected(2);
  common.add_to(compare_cmd);

  auto* gen = app.add_subcommand("gen", "Write a synthetic corpus with a bloat ledger");
  std::uint64_t seed = 1;
  std::size_t count = 50;
  std::string gen_output;
  bool library_heavy = false;
  std::vector<std::string> fixtures;
  gen->add_option("--seed", seed);
  gen->add_option("--count", count);
  gen->add_option("-o,--output", gen_output, "Output directory")->required();
  gen->add_flag("--library-heavy", library_heavy, "Pad with dead library classes");
  gen->add_option("--fixture", fixtures, "Write a built-in fixture instead")
      ->check(CLI::IsMember(fixture_names()));

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "taptrim: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Format format = parse_format(common.format);

    if (analyze->parsed()) {
      TrimConfig cfg = common.config();
      std::vector<AnalyzeRow> rows;
      if (!corpus_dir.empty()) {
        for (const auto& file : corpus_files(corpus_dir)) {
          rows.push_back(analyze_row(file.filename().string(), load_package(file.string()), cfg));
        }
      }
      for (const auto& input : analyze_inputs) {
        rows.push_back(analyze_row(fs::path(input).filename().string(), load_package(input), cfg));
      }
      if (rows.empty() && corpus_dir.empty()) {
        err << "taptrim: analyze needs an input or --corpus\n";
        return kExitUsage;
      }
      out << render_analyze(rows, format);
      return kExitOk;
    }

    if (bloat->parsed()) {
      TrimConfig cfg = common.config();
      Package pkg = load_package(bloat_input);
      ReachabilityResult r = reach(pkg, cfg);
      BloatReports reports{detect_code_bloat(pkg, r), detect_res_bloat(pkg, r, cfg.paper_strict),
                           detect_asset_bloat(pkg, r, cfg.paper_strict)};
      out << render_bloat(pkg, reports, format);
      return kExitOk;
    }

    if (trim_cmd->parsed()) {
      TrimConfig cfg = common.config();
      Package pkg = load_package(trim_input);
      TrimResult result = trim(pkg, cfg, TrimOptions{code_first});
      VerifyReport check = verify_links(result.package, cfg);
      if (!check.ok()) {
        err << "taptrim: trimmed package fails verification (" << check.finding_count()
            << " findings); nothing written\n"
            << render_verify(check, Format::Tsv);
        return kExitVerify;
      }
      write_file(trim_output, serialize_package(result.package));
      if (!trim_report.empty()) write_file(trim_report, render_trim(result.report, format));
      out << render_trim_table(result.report);
      return kExitOk;
    }

    if (verify->parsed()) {
      VerifyReport report = verify_links(load_package(verify_input), common.config());
      out << render_verify(report, format);
      return report.ok() ? kExitOk : kExitVerify;
    }

    if (compare_cmd->parsed()) {
      PairReport report = compare(load_package(compare_inputs[0]), load_package(compare_inputs[1]));
      out << render_compare(fs::path(compare_inputs[0]).filename().string(),
                            fs::path(compare_inputs[1]).filename().string(), report, format);
      return kExitOk;
    }

    if (gen->parsed()) {
      fs::create_directories(gen_output);
      fs::path dir(gen_output);
      if (!fixtures.empty()) {
        for (const auto& name : fixtures) {
          write_file(dir / (name + ".tap"), serialize_package(fixture_package(name)));
        }
        return kExitOk;
      }
      GeneratorOptions options;
      options.library_heavy = library_heavy;
      std::vector<LedgerRow> ledger;
      std::string ratios = "package\tlibrary_ratio\n";
      for (std::size_t i = 0; i < count; ++i) {
        GeneratedPackage g =
            generate_package(corpus_seed(seed, i), corpus_package_name(i), options);
        write_file(dir / (g.name + ".tap"), serialize_package(g.package));
        ledger.insert(ledger.end(), g.ledger.begin(), g.ledger.end());
        if (g.library_ratio) ratios += g.name + ".tap\t" + format_fraction(*g.library_ratio) + "\n";
      }
      write_file(dir / "ledger.tsv", serialize_ledger(ledger));
      if (library_heavy) write_file(dir / "ratios.tsv", ratios);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "taptrim: " << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigError ? kExitUsage : kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "taptrim: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace taptrim
