#include "cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fragmark/fragmark.h"

namespace fragmark::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success (verify: no tampered blocks)\n"
    "  1  verify found tampered blocks / audit-mapping found violations\n"
    "  2  usage error\n"
    "  3  I/O error\n"
    "  4  parse error (key file, PGM, sidecar, strategy name)\n"
    "  5  dimension error\n"
    "  6  parameter error (r, region, infeasible mapping)\n"
    "  7  mapping construction error\n"
    "  8  domain error\n"
    "  9  key mismatch against the embed sidecar\n"
    " 10  one or more experiment cells failed\n"
    " 70  internal error\n"
    "Environment: FRAGMARK_SEED supplies --seed when the flag is absent.";

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return kIo;
    case ErrorKind::Parse: return kParse;
    case ErrorKind::Dimension: return kDimension;
    case ErrorKind::Parameter: return kParameter;
    case ErrorKind::Construction: return kConstruction;
    case ErrorKind::Domain: return kDomain;
    case ErrorKind::KeyMismatch: return kKeyMismatch;
  }
  return kInternal;
}

// Mapping parameters shared by embed / verify / recover / audit-mapping.
struct MappingFlags {
  std::optional<int> r;
  std::optional<std::string> strategy;
  std::optional<int> iterations;

  void attach(CLI::App* cmd) {
    cmd->add_option("--r", r, "Neighborhood parameter (odd, >= 3)");
    cmd->add_option("--strategy", strategy, "deneighborhood | random | offset | arnold");
    cmd->add_option("--iterations", iterations, "Arnold iterations")->check(CLI::PositiveNumber);
  }

  // Flags override the sidecar; the sidecar overrides defaults.
  MappingSpec resolve(const std::optional<EmbedSidecar>& sidecar) const {
    MappingSpec spec;
    spec.r = 101;
    if (sidecar) spec = sidecar->params;
    if (strategy) spec.strategy = parse_strategy(*strategy);
    if (r) spec.r = *r;
    if (iterations) spec.arnold_iterations = *iterations;
    return spec;
  }
};

std::optional<EmbedSidecar> find_sidecar(const fs::path& image_path) {
  const fs::path p = sidecar_path_for(image_path);
  if (!fs::exists(p)) return std::nullopt;
  return read_embed_sidecar(p);
}

void check_fingerprint(const std::optional<EmbedSidecar>& sidecar, const KeySet& keys) {
  if (sidecar && sidecar->key_fingerprint != key_fingerprint(keys)) {
    fail(ErrorKind::KeyMismatch, "keys do not match the fingerprint recorded at embed time");
  }
}

TamperRegion region_from(const std::vector<int>& v) {
  return {{v.at(0), v.at(1)}, v.at(2)};
}

std::string fmt_rate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot write " + path.string());
  f << text;
  if (!f) fail(ErrorKind::Io, "write failed for " + path.string());
}

// Options common to experiment and compare.
struct PlanFlags {
  std::vector<int> l_values{20, 40, 60, 80, 100};
  std::vector<int> origin{3, 5};
  int images = 10;
  int size = 512;
  int trials = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> image_files;
  std::optional<std::string> out_dir;
  bool write_images = false;
  int workers = 1;
  std::string tamper = "square";
  std::size_t count = 10000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--l", l_values, "Tamper sides in blocks")->delimiter(',');
    cmd->add_option("--origin", origin, "Tamper origin row,col (0-based blocks)")
        ->delimiter(',')
        ->expected(2);
    cmd->add_option("--images", images, "Number of synthetic images")->check(CLI::PositiveNumber);
    cmd->add_option("--size", size, "Synthetic image side in pixels (even)");
    cmd->add_option("--image", image_files, "PGM image file (repeatable; replaces synthetic set)");
    cmd->add_option("--trials", trials, "Trials per image and cell")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Master seed")->envname("FRAGMARK_SEED");
    cmd->add_option("--out", out_dir, "Artifacts directory (tables/, masks/, recovered/)");
    cmd->add_flag("--write-images", write_images, "Write masks/ and recovered/ PGMs");
    cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--tamper", tamper, "square | random")->check(CLI::IsMember({"square", "random"}));
    cmd->add_option("--count", count, "Tampered blocks in random mode");
  }

  ExperimentPlan plan() const {
    ExperimentPlan p;
    if (image_files.empty()) {
      p.images = synthetic_sources(images, size, size, seed);
    } else {
      for (const auto& f : image_files) {
        const GrayImage img = read_pgm(fs::path(f));
        ImageSource src;
        src.id = fs::path(f).stem().string();
        src.path = f;
        src.width = img.width();
        src.height = img.height();
        p.images.push_back(std::move(src));
      }
    }
    p.l_values = l_values;
    p.origin = {origin.at(0), origin.at(1)};
    p.trials = trials;
    p.master_seed = seed;
    p.mode = tamper == "random" ? TamperMode::Random : TamperMode::Square;
    p.random_count = count;
    if (out_dir) p.artifacts_dir = fs::path(*out_dir);
    p.write_images = write_images;
    p.workers = workers;
    return p;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fragmark: self-embedding fragile watermarking with de-neighborhood block mapping"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  // keygen
  std::string keygen_out;
  auto* keygen = app.add_subcommand("keygen", "Write three fresh 64-bit keys");
  keygen->add_option("--out", keygen_out, "Key file path")->required();

  // embed
  std::string embed_in, embed_out, embed_keys;
  MappingFlags embed_map;
  auto* embed_cmd = app.add_subcommand("embed", "Embed authentication and recovery watermarks");
  embed_cmd->add_option("--in", embed_in, "Input PGM")->required();
  embed_cmd->add_option("--out", embed_out, "Watermarked PGM")->required();
  embed_cmd->add_option("--keys", embed_keys, "Key file")->required();
  embed_map.attach(embed_cmd);

  // tamper
  std::string tamper_in, tamper_out;
  std::vector<int> tamper_region;
  std::optional<std::size_t> tamper_count;
  std::uint64_t tamper_seed = 0;
  auto* tamper_cmd = app.add_subcommand("tamper", "Overwrite blocks with random bytes");
  tamper_cmd->add_option("--in", tamper_in, "Input PGM")->required();
  tamper_cmd->add_option("--out", tamper_out, "Tampered PGM")->required();
  auto* region_opt = tamper_cmd->add_option("--region", tamper_region, "row,col,l (0-based blocks)")
                         ->delimiter(',')
                         ->expected(3);
  auto* count_opt = tamper_cmd->add_option("--random-count", tamper_count, "Random block count");
  region_opt->excludes(count_opt);
  tamper_cmd->add_option("--seed", tamper_seed, "Seed for tamper content")->envname("FRAGMARK_SEED");

  // verify
  std::string verify_in, verify_keys;
  std::optional<std::string> verify_mask, verify_pixel_mask, verify_report;
  MappingFlags verify_map;
  auto* verify_cmd = app.add_subcommand("verify", "Authenticate and localize tampering");
  verify_cmd->add_option("--in", verify_in, "Image to check")->required();
  verify_cmd->add_option("--keys", verify_keys, "Key file")->required();
  verify_cmd->add_option("--mask", verify_mask, "Block-resolution tamper mask (PGM)");
  verify_cmd->add_option("--pixel-mask", verify_pixel_mask, "Pixel-resolution tamper mask (PGM)");
  verify_cmd->add_option("--report", verify_report, "JSON report path");
  verify_map.attach(verify_cmd);

  // recover
  std::string recover_in, recover_out, recover_keys;
  std::optional<std::string> recover_report;
  std::vector<int> recover_region;
  MappingFlags recover_map;
  auto* recover_cmd = app.add_subcommand("recover", "Restore tampered blocks");
  recover_cmd->add_option("--in", recover_in, "Tampered image")->required();
  recover_cmd->add_option("--out", recover_out, "Restored PGM")->required();
  recover_cmd->add_option("--keys", recover_keys, "Key file")->required();
  recover_cmd->add_option("--report", recover_report, "JSON report path (default <out>.report.json)");
  recover_cmd->add_option("--region", recover_region, "Ground-truth region row,col,l for the rate")
      ->delimiter(',')
      ->expected(3);
  recover_map.attach(recover_cmd);

  // analyze
  int analyze_n = 256;
  std::vector<int> analyze_r{21, 41, 61, 81, 101};
  std::vector<int> analyze_l{20, 40, 60, 80, 100};
  std::vector<int> analyze_origin{3, 5};
  bool analyze_heatmap = false;
  bool analyze_positions = false;
  std::optional<std::string> analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Theoretical recovery rates");
  analyze->add_option("--n", analyze_n, "Blocks per side")->check(CLI::PositiveNumber);
  analyze->add_option("--r", analyze_r, "Neighborhood parameters")->delimiter(',');
  analyze->add_option("--l", analyze_l, "Tamper sides")->delimiter(',')->check(CLI::PositiveNumber);
  analyze->add_option("--origin", analyze_origin, "row,col (0-based blocks)")
      ->delimiter(',')
      ->expected(2);
  analyze->add_flag("--heatmap", analyze_heatmap, "Per-block rates for a single (r, l)");
  analyze->add_flag("--positions", analyze_positions, "Corner / reference / center comparison");
  analyze->add_option("--out", analyze_out, "Write the table to a file instead of stdout");

  // experiment
  PlanFlags exp_flags;
  std::vector<int> exp_r{21, 41, 61, 81, 101};
  std::vector<std::string> exp_strategies{"deneighborhood"};
  int exp_iterations = 1;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo embed/tamper/recover sweep");
  experiment->add_option("--r", exp_r, "Neighborhood parameters")->delimiter(',');
  experiment->add_option("--strategies", exp_strategies, "Mapping strategies")->delimiter(',');
  experiment->add_option("--iterations", exp_iterations, "Arnold iterations")
      ->check(CLI::PositiveNumber);
  exp_flags.attach(experiment);

  // compare
  PlanFlags cmp_flags;
  std::vector<int> cmp_r{51, 101};
  int cmp_iterations = 1;
  auto* compare = app.add_subcommand("compare", "De-neighborhood vs baseline mappings");
  compare->add_option("--r", cmp_r, "De-neighborhood parameters")->delimiter(',');
  compare->add_option("--iterations", cmp_iterations, "Arnold iterations")->check(CLI::PositiveNumber);
  cmp_flags.attach(compare);

  // audit-mapping
  int audit_cols = 256, audit_rows = 256;
  std::optional<int> audit_n;
  std::optional<std::string> audit_keys, audit_csv;
  std::optional<std::string> audit_k3;
  MappingFlags audit_map;
  auto* audit = app.add_subcommand("audit-mapping", "Build a mapping and check its constraints");
  audit->add_option("--n", audit_n, "Blocks per side (square grid)");
  audit->add_option("--cols", audit_cols, "Block columns");
  audit->add_option("--rows", audit_rows, "Block rows");
  audit->add_option("--keys", audit_keys, "Key file (uses K3)");
  audit->add_option("--k3", audit_k3, "K3 as 16 hex digits");
  audit->add_option("--csv", audit_csv, "Dump i,eps_i to this file");
  audit_map.attach(audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (keygen->parsed()) {
      save_keys(keygen_out, generate_keys());
      out << "wrote " << keygen_out << '\n';
      return kOk;
    }

    if (embed_cmd->parsed()) {
      const KeySet keys = load_keys(embed_keys);
      const GrayImage image = read_pgm(fs::path(embed_in));
      const MappingSpec spec = embed_map.resolve(std::nullopt);
      const WatermarkedImage marked = embed(image, keys, spec);
      write_pgm(fs::path(embed_out), marked.image);
      write_embed_sidecar(sidecar_path_for(embed_out), marked);
      out << "embedded " << describe(spec) << " psnr_db=" << psnr(image, marked.image) << '\n';
      return kOk;
    }

    if (tamper_cmd->parsed()) {
      const GrayImage image = read_pgm(fs::path(tamper_in));
      TamperOutcome outcome;
      if (!tamper_region.empty()) {
        outcome = apply_square_tamper(image, region_from(tamper_region), tamper_seed);
      } else if (tamper_count) {
        outcome = apply_random_tamper(image, *tamper_count, tamper_seed);
      } else {
        err << "tamper: one of --region or --random-count is required\n";
        return kUsage;
      }
      write_pgm(fs::path(tamper_out), outcome.image);
      const fs::path sidecar = sidecar_path_for(tamper_in);
      if (fs::exists(sidecar)) {
        fs::copy_file(sidecar, sidecar_path_for(tamper_out), fs::copy_options::overwrite_existing);
      }
      out << "tampered_blocks=" << outcome.ground_truth.size() << '\n';
      return kOk;
    }

    if (verify_cmd->parsed()) {
      const KeySet keys = load_keys(verify_keys);
      const auto sidecar = find_sidecar(verify_in);
      check_fingerprint(sidecar, keys);
      const GrayImage image = read_pgm(fs::path(verify_in));
      const MappingSpec spec = verify_map.resolve(sidecar);
      const BlockMapping mapping = build_mapping(spec, keys.k3, split_into_blocks(image));
      const AuthenticationReport report = authenticate(image, keys, mapping);
      const std::size_t tampered = report.tampered_count();
      if (verify_mask) {
        const BlockGrid& g = report.final_map.grid();
        write_pgm_raw(*verify_mask, g.cols(), g.rows(), block_mask(report.final_map));
      }
      if (verify_pixel_mask) write_pgm(fs::path(*verify_pixel_mask), pixel_mask(report.final_map));
      if (verify_report) write_text(*verify_report, report_json(report, nullptr, mapping));
      out << "tampered=" << tampered << " recovered_possible=" << recoverable_count(report, mapping)
          << '\n';
      return tampered == 0 ? kOk : kTampered;
    }

    if (recover_cmd->parsed()) {
      const KeySet keys = load_keys(recover_keys);
      const auto sidecar = find_sidecar(recover_in);
      check_fingerprint(sidecar, keys);
      const GrayImage image = read_pgm(fs::path(recover_in));
      const MappingSpec spec = recover_map.resolve(sidecar);
      const BlockMapping mapping = build_mapping(spec, keys.k3, split_into_blocks(image));
      const AuthenticationReport report = authenticate(image, keys, mapping);
      const RecoveryResult result = recover(image, report, keys, mapping);
      write_pgm(fs::path(recover_out), result.image);
      const fs::path report_path =
          recover_report ? fs::path(*recover_report) : fs::path(recover_out + ".report.json");
      write_text(report_path, report_json(report, &result, mapping));
      out << "tampered=" << report.tampered_count() << " recovered=" << result.recovered.size()
          << " unrecoverable=" << result.unrecoverable.size() << '\n';
      if (!recover_region.empty()) {
        const double rate =
            measure_recovery_rate(region_from(recover_region), mapping.grid(), result);
        out << "recovery_rate=" << fmt_rate(rate) << '\n';
      }
      return kOk;
    }

    if (analyze->parsed()) {
      const BlockGrid grid(analyze_n, analyze_n);
      for (const int r : analyze_r) check_deneighborhood_feasible(grid, r);
      const BlockIndex origin{analyze_origin.at(0), analyze_origin.at(1)};
      std::ostringstream table;
      if (analyze_heatmap) {
        if (analyze_r.size() != 1 || analyze_l.size() != 1) {
          err << "analyze --heatmap takes exactly one --r and one --l\n";
          return kUsage;
        }
        write_heatmap_csv(table, average_recovery_rate(TheoryParams{analyze_n, analyze_r[0],
                                                                    analyze_l[0], origin}));
      } else if (analyze_positions) {
        table << "position,origin_row,origin_col,r,l,H_avg_theory\n";
        table.precision(10);
        for (const int r : analyze_r) {
          for (const int l : analyze_l) {
            for (const PositionRate& p : position_sweep(analyze_n, r, l)) {
              table << to_string(p.position) << ',' << p.origin.row << ',' << p.origin.col << ','
                    << r << ',' << l << ',' << p.average << '\n';
            }
          }
        }
      } else {
        write_theory_table(table, analyze_n, analyze_r, analyze_l, origin);
      }
      if (analyze_out) {
        write_text(*analyze_out, table.str());
      } else {
        out << table.str();
      }
      return kOk;
    }

    if (experiment->parsed()) {
      ExperimentPlan plan = exp_flags.plan();
      plan.r_values = exp_r;
      for (const auto& s : exp_strategies) {
        MappingSpec spec{parse_strategy(s), 0, exp_iterations};
        plan.strategies.push_back(spec);
      }
      const ExperimentResult result = run_plan(plan);
      if (plan.artifacts_dir) {
        out << cells_csv(result.cells);
      } else {
        out << trials_csv(result.records);
      }
      for (const auto& c : result.cells) {
        if (c.failed) err << "cell " << describe(c.strategy) << " l=" << c.l << " failed: " << c.failure << '\n';
      }
      return result.any_failed() ? kCellFailed : kOk;
    }

    if (compare->parsed()) {
      ExperimentPlan plan = cmp_flags.plan();
      for (const int r : cmp_r) plan.strategies.push_back({MappingStrategy::Deneighborhood, r, 1});
      plan.strategies.push_back({MappingStrategy::Random, 0, 1});
      plan.strategies.push_back({MappingStrategy::Offset, 0, 1});
      plan.strategies.push_back({MappingStrategy::Arnold, 0, cmp_iterations});
      const ExperimentResult result = run_plan(plan);

      // Wide table: one row per l, one column per strategy.
      std::vector<std::string> labels;
      for (const auto& s : plan.strategies) labels.push_back(describe(s));
      std::ostringstream table;
      table << 'l';
      for (const auto& label : labels) table << ',' << label;
      table << '\n';
      const std::vector<int> sides =
          plan.mode == TamperMode::Random ? std::vector<int>{int(plan.random_count)} : plan.l_values;
      for (const int l : sides) {
        table << l;
        for (const auto& label : labels) {
          table << ',';
          for (const auto& c : result.cells) {
            if (c.l == l && describe(c.strategy) == label) table << (c.failed ? "nan" : fmt_rate(c.measured_rate));
          }
        }
        table << '\n';
      }
      if (plan.artifacts_dir) write_text(*plan.artifacts_dir / "tables" / "compare.csv", table.str());
      out << table.str();
      for (const auto& c : result.cells) {
        if (c.failed) err << "cell " << describe(c.strategy) << " l=" << c.l << " failed: " << c.failure << '\n';
      }
      return result.any_failed() ? kCellFailed : kOk;
    }

    if (audit->parsed()) {
      const BlockGrid grid = audit_n ? BlockGrid(*audit_n, *audit_n) : BlockGrid(audit_cols, audit_rows);
      std::uint64_t k3 = 0;
      if (audit_keys) k3 = load_keys(*audit_keys).k3;
      if (audit_k3) k3 = parse_keys("K1=0000000000000000\nK2=0000000000000000\nK3=" + *audit_k3).k3;
      const MappingSpec spec = audit_map.resolve(std::nullopt);
      const BlockMapping mapping = build_mapping(spec, k3, grid);
      const MappingAudit report = verify_mapping(mapping, grid);
      if (audit_csv) {
        std::ofstream f(*audit_csv, std::ios::binary);
        if (!f) fail(ErrorKind::Io, "cannot write " + *audit_csv);
        write_mapping_csv(f, mapping);
      }
      out << "mapping=" << describe(spec) << " bijection=" << (report.is_bijection ? "true" : "false")
          << " min_chebyshev_distance=" << report.min_chebyshev_distance
          << " violations=" << report.violations << '\n';
      const bool ok = report.is_bijection &&
                      (spec.strategy != MappingStrategy::Deneighborhood || report.violations == 0);
      return ok ? kOk : kTampered;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace fragmark::cli
