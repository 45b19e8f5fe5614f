#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rlsa/annealer.hpp"
#include "rlsa/bench_io.hpp"
#include "rlsa/trainer.hpp"

namespace rlsa {

// Everything needed to reproduce one experiment from the command line or a
// JSON spec file.
struct ExperimentSpec {
  std::optional<int> lattice;                // side length n
  std::optional<std::filesystem::path> yal;  // benchmark file
  std::optional<std::filesystem::path> fixed;
  SAConfig sa;
  bool auto_temp = false;
  RLConfig rl;
  int runs = 10;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
};

void validate(const ExperimentSpec& spec);

// Keys mirror the long CLI flags ("lattice", "yal", "sa_steps", "t_max", ...).
ExperimentSpec parse_experiment_spec(std::string_view json_text);
std::string experiment_spec_json(const ExperimentSpec& spec);

// Loads the benchmark and applies the fixed-block configuration if any.
ProblemInstance load_instance(const ExperimentSpec& spec);

// 1e-6 (um^2 -> mm^2) for area-only instances, otherwise 1.
double report_scale(const ProblemInstance& instance);

// SA temperatures for `instance`: the spec's explicit values, or an
// auto_temperature estimate from a seeded random start when auto_temp is set.
SAConfig resolve_sa_config(const ProblemInstance& instance,
                           const ExperimentSpec& spec);

// One SA run from a seeded random initialization.
RunRecord run_sa_baseline(const ProblemInstance& instance, const SAConfig& sa,
                          std::uint64_t seed);

struct PairedResult {
  std::vector<RunRecord> records;  // rl_init, random_init alternating per run
  int rl_wins = 0;                 // runs with rl final cost < random final cost
  int runs = 0;
  double rl_mean = 0.0;      // report units
  double random_mean = 0.0;  // report units
};

// For run i: seed_i = derive_seed(seed, 5, i); both arms start from the same
// random sequence pair, the RL arm then takes r_steps policy steps; both run
// s_steps of SA with the same SA seed.
PairedResult paired_compare(const ProblemInstance& instance,
                            const PolicyNet<double>& net, const RLConfig& rl,
                            const SAConfig& sa, int runs, std::uint64_t seed);

// Per-epoch training records as JSON and CSV.
std::string train_report_json(const TrainReport& report);
std::string train_report_csv(const TrainReport& report);

// (step, current, best) rows.
std::string trace_csv(const std::vector<TracePoint>& trace);

std::string paired_summary_text(const PairedResult& result,
                                const std::string& instance_name);

}  // namespace rlsa
