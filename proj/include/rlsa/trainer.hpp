#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlsa/annealer.hpp"
#include "rlsa/environment.hpp"
#include "rlsa/policy_net.hpp"
#include "rlsa/ppo.hpp"

namespace rlsa {

// improvement: r_g = C(P(r)) - C(P(r+s)), positive when SA helps.
// literal:     r_g = C(P(r+s)) - C(P(r)).
enum class GlobalRewardSign { kImprovement, kLiteral };

std::string to_string(GlobalRewardSign s);
GlobalRewardSign parse_global_reward_sign(std::string_view s);

struct RLConfig {
  int epochs = 10;
  int r_steps = 200;
  int s_steps = 5000;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_eps = 0.2;
  double learning_rate = 3e-4;
  int ppo_epochs = 4;
  int minibatch_size = 64;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  int hidden = 128;
  // Multiplier applied to local rewards and r_g before GAE and PPO. 0 picks
  // 1 / C(random sequence pair) for the instance.
  double reward_scale = 0.0;
  std::uint64_t seed = 0;
  GlobalRewardSign global_reward_sign = GlobalRewardSign::kImprovement;
  bool greedy_eval = false;

  PpoHyper ppo() const;
};

void validate(const RLConfig& cfg);

struct Transition {
  Eigen::VectorXd state;
  BlockId action = 0;     // candidate block id
  int action_index = 0;   // position of `action` in the free-id order
  double log_prob = 0.0;
  double value = 0.0;
  double local_reward = 0.0;
  bool done = false;
};

using Trajectory = std::vector<Transition>;

// A fresh, orthogonally initialized network sized for the instance.
PolicyNet<double> make_policy(const ProblemInstance& instance, int hidden,
                              std::uint64_t seed);

// Samples (or takes the argmax of) the policy for one encoded state.
struct PolicyChoice {
  int action_index = 0;
  double log_prob = 0.0;
  double value = 0.0;
};
PolicyChoice choose_action(const PolicyNet<double>& net,
                           const Eigen::VectorXd& state, Rng& rng,
                           bool greedy = false);

struct EpochOutcome {
  Trajectory trajectory;
  SequencePair rl_result;  // P(r)
  SAResult sa;
  double init_cost = 0.0;   // C(P(r))
  double final_cost = 0.0;  // C(P(r+s))
  double global_reward = 0.0;
};

// Reset, r_steps policy steps, then s_steps of annealing from P(r). With
// s_steps == 0 the annealer is skipped and P(r+s) = P(r). sa_cfg.steps is
// overridden by cfg.s_steps.
EpochOutcome run_epoch(const ProblemInstance& instance,
                       const PolicyNet<double>& net, const RLConfig& cfg,
                       const SAConfig& sa_cfg, Rng& env_rng,
                       Rng& policy_rng);

struct EpochRecord {
  int epoch = 0;
  double init_cost = 0.0;
  double post_sa_cost = 0.0;
  double global_reward = 0.0;
  double mean_local_reward = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double seconds = 0.0;
};

struct TrainReport {
  std::vector<EpochRecord> records;
  PolicyNet<double> net;
  int epochs_completed = 0;  // including epochs of a resumed network
  std::string abort_message;  // empty unless training stopped early
};

// Builds the PPO batch for one trajectory, bootstrapping its final value
// with r_g.
PpoBatch make_batch(const Trajectory& traj, double terminal_value,
                    double gamma, double lambda, double reward_scale = 1.0);

// cfg.reward_scale, or the automatic choice when it is 0.
double resolve_reward_scale(const ProblemInstance& instance,
                            const RLConfig& cfg);

// cfg.epochs rounds of run_epoch -> GAE -> PPO. `resume` continues from a
// saved network whose epochs are counted from `start_epoch`.
TrainReport train(const ProblemInstance& instance, const RLConfig& cfg,
                  const SAConfig& sa_cfg,
                  std::optional<PolicyNet<double>> resume = std::nullopt,
                  int start_epoch = 0);

// r_steps policy steps from a seeded reset; returns P(r).
SequencePair rl_init(const ProblemInstance& instance,
                     const PolicyNet<double>& net, int r_steps,
                     std::uint64_t seed, bool greedy = false);

// Splits one base seed into independent streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t index);

}  // namespace rlsa
