#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rlsa/bench_io.hpp"
#include "rlsa/cost.hpp"
#include "rlsa/model.hpp"
#include "rlsa/packer.hpp"

namespace rlsa {

struct SAConfig {
  int steps = 5000;
  double t_max = 25000.0;
  double t_min = 2.5;
  // Probabilities of: swap two blocks in both sequences, swap two positions in
  // gamma_plus, swap two positions in gamma_minus.
  std::array<double, 3> move_probs{0.4, 0.3, 0.3};
  bool rotation_enabled = false;
  std::uint64_t seed = 0;
  int trace_every = 50;
};

// Throws InvalidArgument on a violated SAConfig invariant.
void validate(const SAConfig& cfg);

// Temperature at step k of `steps`: t_max * (t_min / t_max)^(k / steps).
double temperature_at(const SAConfig& cfg, int k);

// Metropolis rule: accepts non-worsening moves unconditionally, worsening ones
// with probability exp(-delta / temperature).
bool metropolis_accept(double delta, double temperature, Rng& rng);

struct Proposal {
  SequencePair sp;
  std::optional<BlockId> rotated;  // block whose width/height are transposed
};

// One neighbor of sp under cfg.move_probs. When rotation is enabled a
// rotation is proposed with probability 0.1 and the swap moves share the
// remaining 0.9 in proportion. Instances with fewer than two free blocks get
// sp back unchanged.
Proposal propose_move(const SequencePair& sp, const SAConfig& cfg, Rng& rng);

struct SAResult {
  SequencePair best;
  CostBreakdown best_cost;
  Dimensions best_dims;  // differs from the instance only with rotation
  std::vector<TracePoint> trace;
  int accepted_moves = 0;
};

// Runs exactly cfg.steps proposal/acceptance iterations from `init` and
// returns the best state seen (including init). Deterministic given cfg.seed.
SAResult sa_run(const ProblemInstance& instance, const SequencePair& init,
                const SAConfig& cfg);

struct TemperatureEstimate {
  double t_max = 1.0;
  double t_min = 1e-6;
  bool fallback = false;  // no worsening move was sampled
};

// Samples `sample` moves from `init` and picks temperatures at which the
// median worsening move is accepted with probability accept_hi (t_max) and
// accept_lo (t_min). Requires >= 2 free blocks.
TemperatureEstimate auto_temperature(const ProblemInstance& instance,
                                     const SequencePair& init,
                                     double accept_hi = 0.98,
                                     double accept_lo = 0.02, int sample = 200,
                                     std::uint64_t seed = 0);

}  // namespace rlsa
