#include "mmw/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mmw/config.hpp"
#include "mmw/experiments.hpp"
#include "mmw/scheduler.hpp"

namespace mmw {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

fs::path prepare_out_dir(const SimConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

Schedule run_scheduler(const std::string& name, const Topology& topo, const SimConfig& cfg) {
  const SlotTiming timing = cfg.timing(cfg.primary_ratio());
  if (name == "oracle") {
    return schedule_oracle(topo, timing, cfg.p_max, cfg.noise, cfg.oracle_options());
  }
  if (name == "over") {
    return schedule_overestimation(topo, timing, cfg.p_max, cfg.noise, cfg.mis_cap);
  }
  if (name == "under") {
    return schedule_underestimation(topo, timing, cfg.p_max, cfg.noise);
  }
  if (name == "single") {
    return schedule_single_link(topo, timing, cfg.p_max, cfg.noise);
  }
  throw std::invalid_argument("unknown scheduler: " + name);
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Directional mmW network simulator: beamwidth selection and "
               "concurrent transmission scheduling"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string format = "csv";
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Configuration file (key = value lines)");
  app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--out-dir", out_dir, "Override the configured output directory");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv"}));

  CLI::App* sweep = app.add_subcommand("sweep", "Alignment-throughput tradeoff curves");
  CLI::App* contour = app.add_subcommand("contour", "Single-link rate over a beamwidth grid");
  CLI::App* compare = app.add_subcommand("compare", "Monte Carlo scheduler comparison");

  CLI::App* topo_gen = app.add_subcommand("topo-gen", "Generate and save a random topology");
  std::string topo_out;
  topo_gen->add_option("--out", topo_out, "Topology file (default <out-dir>/topology.txt)");

  CLI::App* schedule_cmd =
      app.add_subcommand("schedule", "Schedule one serialized topology");
  std::string topo_in;
  std::string scheduler_name = "oracle";
  std::string schedule_out;
  schedule_cmd->add_option("--topo", topo_in, "Topology file to schedule")->required();
  schedule_cmd->add_option("--scheduler", scheduler_name, "Scheduling strategy")
      ->check(CLI::IsMember({"oracle", "over", "under", "single"}));
  schedule_cmd->add_option("--out", schedule_out, "Write the schedule here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    SimConfig cfg = config_path.empty() ? SimConfig{} : load_config(config_path);
    if (app.count("--seed") > 0) {
      cfg.seed = seed;
    }
    if (!out_dir.empty()) {
      cfg.out_dir = out_dir;
    }
    cfg.validate();

    if (sweep->parsed()) {
      const auto rows = run_tradeoff_sweep(cfg);
      const fs::path path = prepare_out_dir(cfg) / "sweep.csv";
      auto out = open_output(path);
      write_sweep_csv(out, rows);
      std::cout << "wrote " << path.string() << '\n';
    } else if (contour->parsed()) {
      const ContourResult result = run_contour(cfg);
      const fs::path dir = prepare_out_dir(cfg);
      auto grid_out = open_output(dir / "contour.csv");
      write_contour_csv(grid_out, result.grid);
      auto level_out = open_output(dir / "contour_levelset.csv");
      write_level_set_csv(level_out, result.level_set);
      std::cout << "wrote " << (dir / "contour.csv").string() << " and "
                << (dir / "contour_levelset.csv").string() << '\n';
    } else if (compare->parsed()) {
      const ComparisonResult result = run_comparison(cfg);
      const fs::path dir = prepare_out_dir(cfg);
      auto summary_out = open_output(dir / "compare.csv");
      write_compare_summary_csv(summary_out, result.summary);
      auto records_out = open_output(dir / "compare_runs.csv");
      write_compare_records_csv(records_out, result.records);
      std::cout << "wrote " << (dir / "compare.csv").string() << " and "
                << (dir / "compare_runs.csv").string() << '\n';
    } else if (topo_gen->parsed()) {
      const Topology topo =
          generate_topology(cfg.n_links, cfg.area_side, cfg.min_separation,
                            derive_seed(cfg.seed, static_cast<std::uint64_t>(cfg.n_links), 0),
                            cfg.link_profile(), cfg.path_loss());
      const fs::path path =
          topo_out.empty() ? prepare_out_dir(cfg) / "topology.txt" : fs::path(topo_out);
      if (!path.parent_path().empty()) {
        fs::create_directories(path.parent_path());
      }
      auto out = open_output(path);
      topo.save(out);
      std::cout << "wrote " << path.string() << '\n';
    } else if (schedule_cmd->parsed()) {
      std::ifstream in(topo_in);
      if (!in) {
        throw std::runtime_error("cannot open topology file: " + topo_in);
      }
      const Topology topo = Topology::load(in, cfg.link_profile(), cfg.path_loss());
      const Schedule schedule = run_scheduler(scheduler_name, topo, cfg);
      if (schedule_out.empty()) {
        save_schedule(std::cout, schedule);
      } else {
        auto out = open_output(schedule_out);
        save_schedule(out, schedule);
        std::cout << "wrote " << schedule_out << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mmw
