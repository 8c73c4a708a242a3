#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esdf/config.hpp"
#include "esdf/dataset.hpp"
#include "esdf/replay.hpp"
#include "esdf/scenario.hpp"

namespace {

// Leftover "--section.key value" pairs become config overrides.
void apply_extras(esdf::RunConfig& cfg, const std::vector<std::string>& extras) {
  for (size_t i = 0; i < extras.size(); i += 2) {
    std::string key = extras[i];
    if (key.rfind("--", 0) != 0)
      throw esdf::DataError("unexpected argument: " + key);
    key = key.substr(2);
    if (i + 1 >= extras.size())
      throw esdf::DataError("missing value for override --" + key);
    esdf::apply_override(cfg, key, extras[i + 1]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental Euclidean distance field replay harness"};
  app.allow_extras();

  auto* run = app.add_subcommand("run", "replay a dataset or scenario");
  run->allow_extras();
  std::string config_path, dataset_dir, scenario_file, sweep, out_dir;
  std::vector<std::string> slice_args;
  run->add_option("--config", config_path, "key=value config file");
  auto* dopt = run->add_option("--dataset", dataset_dir,
                               "log directory (poses.csv + cloud_*.csv)");
  auto* sopt =
      run->add_option("--scenario", scenario_file, "scenario JSON file");
  dopt->excludes(sopt);
  run->add_option("--sweep", sweep,
                  "sweep one parameter: connectivity|block_size|rule");
  run->add_option("--slice", slice_args,
                  "export a slice, e.g. axis=z,index=12 (repeatable)");
  run->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);
  if (!run->parsed()) {
    std::cerr << app.help() << "\n";
    return 1;
  }

  try {
    esdf::RunConfig cfg;
    if (!config_path.empty()) cfg = esdf::parse_config_file(config_path);
    apply_extras(cfg, run->remaining());
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    for (const std::string& s : slice_args)
      cfg.slices.push_back(esdf::parse_slice_request(s));

    std::vector<esdf::SensorFrame> frames;
    if (!scenario_file.empty()) {
      const esdf::ScenarioSpec spec = esdf::load_scenario(scenario_file);
      if (cfg.scenario_id == "run") cfg.scenario_id = spec.id;
      frames = esdf::generate_scenario(spec, cfg.update_period);
    } else if (!dataset_dir.empty()) {
      esdf::DatasetLoadResult loaded = esdf::load_dataset(dataset_dir);
      if (loaded.skipped_missing_clouds > 0)
        std::cerr << "warning: skipped " << loaded.skipped_missing_clouds
                  << " poses without cloud files\n";
      frames = std::move(loaded.frames);
    } else {
      std::cerr << "error: one of --dataset or --scenario is required\n";
      return 1;
    }

    esdf::run_replay(cfg, frames, sweep, std::cout);
    return 0;
  } catch (const esdf::CorruptionError& e) {
    std::cerr << "corruption error: " << e.what() << "\n";
    return 2;
  } catch (const esdf::BoundsError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 1;
  } catch (const esdf::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
