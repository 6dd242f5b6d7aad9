#include "cli.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "seamcheck/abut.hpp"
#include "seamcheck/emitio.hpp"
#include "seamcheck/error.hpp"
#include "seamcheck/libio.hpp"
#include "seamcheck/report.hpp"

namespace seamcheck::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

std::optional<RuleDeck> load_rules(const RunConfig& config, bool required) {
  if (config.rules.empty()) {
    if (required) throw Error(ErrorCode::Io, "--rules is required");
    return std::nullopt;
  }
  return parse_rules(read_text(config.rules));
}

CellLibrary load_library(const fs::path& path, const std::optional<RuleDeck>& rules) {
  std::optional<Dbu> row_height;
  if (rules) row_height = rules->row_height;
  return parse_library(read_text(path), path.stem().string(), row_height);
}

void require_libs(const RunConfig& config) {
  if (config.libs.empty()) throw Error(ErrorCode::Io, "at least one --libs file is required");
}

DptOption parse_option(const std::string& text) {
  if (text == "I" || text == "1") return DptOption::OptionI;
  if (text == "II" || text == "2") return DptOption::OptionII;
  throw Error(ErrorCode::Io, "unknown DPT option '" + text + "' (expected I, II or both)");
}

std::vector<DptOption> parse_options(const std::string& text) {
  if (text == "both") return {DptOption::OptionI, DptOption::OptionII};
  return {parse_option(text)};
}

fs::path run_file(const RunConfig& config, const std::string& library, DptOption option,
                  const std::string& suffix) {
  return config.out / (library + "." + std::string(to_string(option)) + "." + suffix);
}

std::string stats_text(const CellLibrary& library, const LibraryStats& stats) {
  std::ostringstream out;
  out << "library " << library.name() << "\n";
  out << "cells " << stats.total() << "\n";
  out << "single_height " << stats.single_height << "\n";
  out << "multi_height " << stats.multi_height << "\n";
  for (const auto& [width, count] : stats.width_histogram) {
    out << "width " << width << " " << count << "\n";
  }
  for (const auto& [rows, count] : stats.height_rows_histogram) {
    out << "height_rows " << rows << " " << count << "\n";
  }
  return out.str();
}

std::string stats_json(const CellLibrary& library, const LibraryStats& stats) {
  json j;
  j["library"] = library.name();
  j["cells"] = stats.total();
  j["single_height"] = stats.single_height;
  j["multi_height"] = stats.multi_height;
  json widths = json::object();
  for (const auto& [width, count] : stats.width_histogram) widths[std::to_string(width)] = count;
  json heights = json::object();
  for (const auto& [rows, count] : stats.height_rows_histogram) {
    heights[std::to_string(rows)] = count;
  }
  j["width_histogram"] = widths;
  j["height_rows_histogram"] = heights;
  return j.dump(2) + "\n";
}

void write_summary(const RunConfig& config, const SummaryTable& table, std::ostream& out) {
  const std::string text = table.render_text();
  write_text(config.out / "summary.txt", text);
  write_text(config.out / "summary.json", table.render_json());
  out << text;
}

int guarded(std::ostream& err, const auto& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
  } catch (const YAML::Exception& e) {
    err << "error[Config]: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace

std::string Manifest::to_json() const {
  json j;
  j["library"] = library;
  j["cells"] = cells;
  j["single_height_cells"] = single_height_cells;
  j["multi_height_cells"] = multi_height_cells;
  j["cases"] = cases;
  j["placements_total"] = placements_total;
  j["single_height_placements"] = single_height_placements;
  j["expected_proposed"] = expected_proposed;
  j["expected_conventional"] = expected_conventional;
  j["consistent"] = consistent();
  return j.dump(2) + "\n";
}

void load_config_file(const fs::path& path, RunConfig& config) {
  const YAML::Node root = YAML::Load(read_text(path));
  if (!root.IsMap()) throw Error(ErrorCode::Io, "config " + path.string() + " is not a mapping");
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    fs::path q(p);
    return q.is_absolute() ? q : base / q;
  };
  if (auto libs = root["libs"]) {
    config.libs.clear();
    if (libs.IsSequence()) {
      for (const auto& lib : libs) config.libs.push_back(resolve(lib.as<std::string>()));
    } else {
      config.libs.push_back(resolve(libs.as<std::string>()));
    }
  }
  if (auto rules = root["rules"]) config.rules = resolve(rules.as<std::string>());
  if (auto option = root["dpt_option"]) config.options = parse_options(option.as<std::string>());
  if (auto out = root["out"]) config.out = resolve(out.as<std::string>());
  if (auto width = root["max_row_width"]) config.max_row_width = width.as<Dbu>();
  if (auto cap = root["svg_cap"]) config.svg_cap = cap.as<std::size_t>();
  if (auto jobs = root["jobs"]) config.jobs = jobs.as<int>();
}

int cmd_profile(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_libs(config);
    const auto rules = load_rules(config, false);
    fs::create_directories(config.out);
    for (const auto& path : config.libs) {
      const CellLibrary library = load_library(path, rules);
      const LibraryStats stats = profile(library);
      const std::string text = stats_text(library, stats);
      write_text(config.out / (library.name() + ".profile.txt"), text);
      write_text(config.out / (library.name() + ".profile.json"), stats_json(library, stats));
      out << text;
    }
    return kExitOk;
  });
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_libs(config);
    const RuleDeck rules = *load_rules(config, true);
    fs::create_directories(config.out);
    int status = kExitOk;
    for (const auto& path : config.libs) {
      const CellLibrary library = load_library(path, rules);
      const auto cases = enumerate_library(library);
      const Floorplan floorplan = plan_floorplan(cases, rules, config.max_row_width);
      write_text(config.out / (library.name() + ".v"), emit_verilog(cases));
      write_text(config.out / (library.name() + ".def"), emit_def(cases, library, floorplan));

      const LibraryStats stats = profile(library);
      Manifest m;
      m.library = library.name();
      m.cells = stats.total();
      m.single_height_cells = stats.single_height;
      m.multi_height_cells = stats.multi_height;
      m.cases = cases.size();
      m.placements_total = total_placements(cases);
      for (const auto& c : cases) {
        if (c.kind == CaseKind::AASingle || c.kind == CaseKind::ABSingle) {
          m.single_height_placements += c.placements.size();
        }
      }
      m.expected_proposed = expected_count(stats.single_height, CountMode::Proposed);
      m.expected_conventional = expected_count(stats.single_height, CountMode::Conventional);
      write_text(config.out / (library.name() + ".manifest.json"), m.to_json());

      out << library.name() << ": " << m.cases << " cases, " << m.placements_total
          << " placements (" << m.single_height_placements << " single-height, expected "
          << m.expected_proposed << ", conventional " << m.expected_conventional << ")\n";
      if (!m.consistent()) {
        err << library.name() << ": single-height placement count " << m.single_height_placements
            << " does not match expected " << m.expected_proposed << "\n";
        status = kExitViolations;
      }
    }
    return status;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_libs(config);
    const RuleDeck rules = *load_rules(config, true);
    fs::create_directories(config.out);
    RunOptions options;
    options.max_row_width = config.max_row_width;
    options.jobs = config.jobs;

    std::vector<RunCounts> counts;
    bool clean = true;
    for (const auto& path : config.libs) {
      const CellLibrary library = load_library(path, rules);
      for (DptOption option : config.options) {
        const VerificationResult result = run_all(library, rules, option, options);
        const Attribution attribution = attribute_to_seams(
            result.all(), result.cases, result.floorplan, rules.interaction_distance);
        write_text(run_file(config, library.name(), option, "violations.jsonl"),
                   violation_records(result, attribution));
        if (option == DptOption::OptionII) {
          write_text(run_file(config, library.name(), option, "recolor.jsonl"),
                     recolor_records(result));
        }
        counts.push_back({library.name(), option, result.drc_count(), result.drc_plus_count()});
        clean = clean && result.clean();
      }
    }
    write_summary(config, summarize(counts), out);
    return clean ? kExitOk : kExitViolations;
  });
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_libs(config);
    const RuleDeck rules = *load_rules(config, true);
    RunOptions options;
    options.max_row_width = config.max_row_width;
    options.jobs = config.jobs;

    std::vector<RunCounts> counts;
    std::size_t svgs = 0;
    const fs::path svg_dir = config.out / "svg";
    for (const auto& path : config.libs) {
      const CellLibrary library = load_library(path, rules);
      for (DptOption option : config.options) {
        const fs::path jsonl = run_file(config, library.name(), option, "violations.jsonl");
        if (!fs::exists(jsonl)) {
          throw Error(ErrorCode::Io, "no verify results at " + jsonl.string());
        }
        const auto records = parse_violation_records(read_text(jsonl));
        RunCounts run{library.name(), option, 0, 0};
        for (const auto& r : records) ++(is_drc_plus(r.kind) ? run.drc_plus : run.drc);
        counts.push_back(run);

        if (records.empty() || svgs >= config.svg_cap) continue;
        // Shape ids are stable across runs, so the rebuilt layout lines up
        // with the recorded violations.
        const VerificationResult rebuilt = run_all(library, rules, option, options);
        fs::create_directories(svg_dir);
        for (std::size_t i = 0; i < records.size() && svgs < config.svg_cap; ++i, ++svgs) {
          const auto& r = records[i];
          Violation v;
          v.kind = r.kind;
          v.layer = r.layer;
          v.bbox = r.bbox;
          v.shapes = r.shapes;
          v.pattern = r.pattern;
          const std::string name = library.name() + "." + std::string(to_string(option)) + "." +
                                   std::to_string(i) + ".svg";
          write_text(svg_dir / name,
                     render_svg(rebuilt.layout, v, rules.interaction_distance, r.seams));
        }
      }
    }
    fs::create_directories(config.out);
    write_summary(config, summarize(counts), out);
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Standard-cell abutment enumeration and seam verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> libs;
  std::string rules;
  std::string dpt_option;
  std::string out_dir;
  Dbu max_row_width = 0;
  std::size_t svg_cap = 0;
  int jobs = 0;

  struct Flags {
    CLI::Option* libs;
    CLI::Option* rules;
    CLI::Option* dpt;
    CLI::Option* out;
    CLI::Option* width;
    CLI::Option* cap;
    CLI::Option* jobs;
  };
  std::map<CLI::App*, Flags> flags;
  for (const char* name : {"profile", "generate", "verify", "report"}) {
    static const std::map<std::string, std::string> help = {
        {"profile", "Print cell width and height histograms"},
        {"generate", "Write Verilog, DEF and a count manifest of all abutment cases"},
        {"verify", "Run DRC, DPT and DRC+ checks on the enumerated cases"},
        {"report", "Summarize earlier verify results and render SVG snapshots"},
    };
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config_path, "YAML config file; flags override its values");
    Flags f;
    f.libs = sub->add_option("--libs", libs, "Cell library files (LEF subset)");
    f.rules = sub->add_option("--rules", rules, "Rule deck (YAML)");
    f.dpt = sub->add_option("--dpt-option", dpt_option, "I, II or both (default both)")
                ->check(CLI::IsMember({"I", "II", "both"}));
    f.out = sub->add_option("--out", out_dir, "Output directory");
    f.width = sub->add_option("--max-row-width", max_row_width, "Floorplan row width in DBU")
                  ->check(CLI::PositiveNumber);
    f.cap = sub->add_option("--svg-cap", svg_cap, "Maximum SVG snapshots per report run");
    f.jobs = sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    flags[sub] = f;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Flags& f = flags.at(sub);
  RunConfig config;
  try {
    if (!config_path.empty()) load_config_file(config_path, config);
    if (f.libs->count()) config.libs.assign(libs.begin(), libs.end());
    if (f.rules->count()) config.rules = rules;
    if (f.dpt->count()) config.options = parse_options(dpt_option);
    if (f.out->count()) config.out = out_dir;
    if (f.width->count()) config.max_row_width = max_row_width;
    if (f.cap->count()) config.svg_cap = svg_cap;
    if (f.jobs->count()) config.jobs = jobs;
  } catch (const std::exception& e) {
    err << "error[Config]: " << e.what() << "\n";
    return kExitError;
  }

  const std::string name = sub->get_name();
  if (name == "profile") return cmd_profile(config, out, err);
  if (name == "generate") return cmd_generate(config, out, err);
  if (name == "verify") return cmd_verify(config, out, err);
  return cmd_report(config, out, err);
}

}  // namespace seamcheck::cli
