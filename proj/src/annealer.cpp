#include "rlsa/annealer.hpp"

#include <algorithm>
#include <cmath>

namespace rlsa {

void validate(const SAConfig& cfg) {
  if (cfg.steps < 1) throw InvalidArgument("SA steps must be >= 1");
  if (!(cfg.t_min > 0.0) || !(cfg.t_max >= cfg.t_min)) {
    throw InvalidArgument("SA temperatures need t_max >= t_min > 0");
  }
  double sum = 0.0;
  for (double p : cfg.move_probs) {
    if (p < 0.0) throw InvalidArgument("move probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("move probabilities must sum to 1");
  }
  if (cfg.trace_every < 1) throw InvalidArgument("trace_every must be >= 1");
}

double temperature_at(const SAConfig& cfg, int k) {
  return cfg.t_max * std::pow(cfg.t_min / cfg.t_max,
                              static_cast<double>(k) / cfg.steps);
}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0.0) return true;
  return uniform_unit(rng) < std::exp(-delta / temperature);
}

namespace {

// Two distinct indices in [0, n), n >= 2.
std::pair<int, int> distinct_pair(Rng& rng, int n) {
  const int i = uniform_index(rng, n);
  int j = uniform_index(rng, n - 1);
  if (j >= i) ++j;
  return {i, j};
}

}  // namespace

Proposal propose_move(const SequencePair& sp, const SAConfig& cfg, Rng& rng) {
  const int n = sp.size();
  if (n < 2) return {sp, std::nullopt};

  double u = uniform_unit(rng);
  if (cfg.rotation_enabled) {
    if (u < 0.1) {
      return {sp, sp.gamma_plus[uniform_index(rng, n)]};
    }
    u = (u - 0.1) / 0.9;
  }
  const auto [i, j] = distinct_pair(rng, n);
  if (u < cfg.move_probs[0]) {
    return {swap_pair(sp, sp.gamma_plus[i], sp.gamma_plus[j]), std::nullopt};
  }
  if (u < cfg.move_probs[0] + cfg.move_probs[1]) {
    return {swap_single(sp, Sequence::kPlus, i, j), std::nullopt};
  }
  return {swap_single(sp, Sequence::kMinus, i, j), std::nullopt};
}

SAResult sa_run(const ProblemInstance& instance, const SequencePair& init,
                const SAConfig& cfg) {
  validate(cfg);
  validate(instance, init);
  Rng rng(cfg.seed);

  Dimensions dims = dimensions_of(instance);
  SequencePair current = init;
  double current_cost = evaluate(instance, current, dims).total;

  SAResult result;
  result.best = current;
  result.best_dims = dims;
  result.best_cost = evaluate(instance, current, dims);

  for (int k = 0; k < cfg.steps; ++k) {
    const double temperature = temperature_at(cfg, k);
    Proposal prop = propose_move(current, cfg, rng);
    if (prop.rotated) {
      std::swap(dims.width[*prop.rotated], dims.height[*prop.rotated]);
    }
    const CostBreakdown next = evaluate(instance, prop.sp, dims);
    if (metropolis_accept(next.total - current_cost, temperature, rng)) {
      current = std::move(prop.sp);
      current_cost = next.total;
      ++result.accepted_moves;
      if (current_cost < result.best_cost.total) {
        result.best = current;
        result.best_cost = next;
        result.best_dims = dims;
      }
    } else if (prop.rotated) {
      std::swap(dims.width[*prop.rotated], dims.height[*prop.rotated]);
    }
    if (k % cfg.trace_every == 0 || k == cfg.steps - 1) {
      result.trace.push_back({k, current_cost, result.best_cost.total});
    }
  }
  return result;
}

TemperatureEstimate auto_temperature(const ProblemInstance& instance,
                                     const SequencePair& init, double accept_hi,
                                     double accept_lo, int sample,
                                     std::uint64_t seed) {
  if (init.size() < 2) {
    throw InvalidArgument("auto_temperature needs at least two free blocks");
  }
  if (!(accept_hi > 0.0 && accept_hi < 1.0 && accept_lo > 0.0 &&
        accept_lo < accept_hi)) {
    throw InvalidArgument("acceptance targets need 0 < lo < hi < 1");
  }
  Rng rng(seed);
  const SAConfig moves;
  const double base = evaluate(instance, init).total;
  std::vector<double> worsening;
  for (int s = 0; s < sample; ++s) {
    const Proposal prop = propose_move(init, moves, rng);
    const double delta = evaluate(instance, prop.sp).total - base;
    if (delta > 0.0) worsening.push_back(delta);
  }
  if (worsening.empty()) return {1.0, 1e-6, true};
  std::sort(worsening.begin(), worsening.end());
  const std::size_t m = worsening.size();
  const double median = m % 2 == 1
                            ? worsening[m / 2]
                            : 0.5 * (worsening[m / 2 - 1] + worsening[m / 2]);
  return {-median / std::log(accept_hi), -median / std::log(accept_lo), false};
}

}  // namespace rlsa
