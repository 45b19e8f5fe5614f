#include "rlsa/trainer.hpp"

#include <chrono>
#include <cmath>

#include "rlsa/cost.hpp"
#include "rlsa/gae.hpp"

namespace rlsa {

std::string to_string(GlobalRewardSign s) {
  return s == GlobalRewardSign::kImprovement ? "improvement" : "literal";
}

GlobalRewardSign parse_global_reward_sign(std::string_view s) {
  if (s == "improvement") return GlobalRewardSign::kImprovement;
  if (s == "literal" || s == "literal_eq1") return GlobalRewardSign::kLiteral;
  throw InvalidArgument("unknown global reward sign '" + std::string(s) + "'");
}

PpoHyper RLConfig::ppo() const {
  PpoHyper h;
  h.clip_eps = clip_eps;
  h.learning_rate = learning_rate;
  h.ppo_epochs = ppo_epochs;
  h.minibatch_size = minibatch_size;
  h.value_coef = value_coef;
  h.entropy_coef = entropy_coef;
  return h;
}

void validate(const RLConfig& cfg) {
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) {
    throw InvalidArgument("gamma must be in (0, 1]");
  }
  if (!(cfg.gae_lambda >= 0.0 && cfg.gae_lambda <= 1.0)) {
    throw InvalidArgument("lambda must be in [0, 1]");
  }
  if (!(cfg.clip_eps > 0.0)) throw InvalidArgument("clip epsilon must be > 0");
  if (cfg.r_steps < 1) throw InvalidArgument("r_steps must be >= 1");
  if (cfg.s_steps < 0) throw InvalidArgument("s_steps must be >= 0");
  if (cfg.epochs < 0) throw InvalidArgument("epochs must be >= 0");
  if (cfg.reward_scale < 0.0) throw InvalidArgument("reward_scale must be >= 0");
  if (cfg.hidden < 1) throw InvalidArgument("hidden width must be >= 1");
  if (cfg.ppo_epochs < 1 || cfg.minibatch_size < 1) {
    throw InvalidArgument("ppo_epochs and minibatch_size must be >= 1");
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t index) {
  // splitmix64 finalizer over a combined key
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1) +
                    0xbf58476d1ce4e5b9ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PolicyNet<double> make_policy(const ProblemInstance& instance, int hidden,
                              std::uint64_t seed) {
  const int n = instance.num_free();
  PolicyNet<double> net(3 * n, n, hidden);
  Rng rng(seed);
  net.initialize(rng);
  return net;
}

PolicyChoice choose_action(const PolicyNet<double>& net,
                           const Eigen::VectorXd& state, Rng& rng,
                           bool greedy) {
  const auto act = net.forward(state);
  const Eigen::VectorXd logp = log_softmax(act.logits).col(0);
  PolicyChoice c;
  c.value = act.values(0);
  if (greedy) {
    logp.maxCoeff(&c.action_index);
  } else {
    const double u = uniform_unit(rng);
    double acc = 0.0;
    c.action_index = static_cast<int>(logp.size()) - 1;
    for (Eigen::Index k = 0; k < logp.size(); ++k) {
      acc += std::exp(logp[k]);
      if (u < acc) {
        c.action_index = static_cast<int>(k);
        break;
      }
    }
  }
  c.log_prob = logp[c.action_index];
  return c;
}

EpochOutcome run_epoch(const ProblemInstance& instance,
                       const PolicyNet<double>& net, const RLConfig& cfg,
                       const SAConfig& sa_cfg, Rng& env_rng, Rng& policy_rng) {
  validate(cfg);
  const ActionSpace actions(instance);
  if (net.inputs() != 3 * actions.size() || net.actions() != actions.size()) {
    throw InvalidArgument("policy network shape does not match the instance");
  }

  EpochOutcome out;
  EnvState state = env_reset(instance, env_rng);
  out.trajectory.reserve(cfg.r_steps);
  for (int t = 0; t < cfg.r_steps; ++t) {
    const PolicyChoice c = choose_action(net, state.encoded, policy_rng);
    const BlockId candidate = actions.block(c.action_index);
    StepResult step = env_step(state, candidate, instance, env_rng);
    out.trajectory.push_back({state.encoded, candidate, c.action_index,
                              c.log_prob, c.value, step.local_reward,
                              t == cfg.r_steps - 1});
    state = std::move(step.state);
  }
  out.rl_result = state.sp;
  out.init_cost = state.cost;

  if (cfg.s_steps > 0) {
    SAConfig sa = sa_cfg;
    sa.steps = cfg.s_steps;
    out.sa = sa_run(instance, out.rl_result, sa);
    out.final_cost = out.sa.best_cost.total;
  } else {
    out.sa.best = out.rl_result;
    out.sa.best_cost = evaluate(instance, out.rl_result);
    out.sa.best_dims = dimensions_of(instance);
    out.final_cost = out.init_cost;
  }
  out.global_reward = cfg.global_reward_sign == GlobalRewardSign::kImprovement
                          ? out.init_cost - out.final_cost
                          : out.final_cost - out.init_cost;
  return out;
}

double resolve_reward_scale(const ProblemInstance& instance,
                            const RLConfig& cfg) {
  if (cfg.reward_scale > 0.0) return cfg.reward_scale;
  const double ref =
      evaluate(instance, random_sequence_pair(instance, derive_seed(cfg.seed, 8, 0)))
          .total;
  return ref > 0.0 ? 1.0 / ref : 1.0;
}

PpoBatch make_batch(const Trajectory& traj, double terminal_value,
                    double gamma, double lambda, double reward_scale) {
  const auto n = static_cast<Eigen::Index>(traj.size());
  if (n == 0) throw InvalidArgument("make_batch: empty trajectory");
  PpoBatch b;
  b.states.resize(traj.front().state.size(), n);
  b.actions.resize(traj.size());
  b.old_log_probs.resize(n);
  Eigen::VectorXd rewards(n);
  Eigen::VectorXd values(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    b.states.col(t) = traj[t].state;
    b.actions[t] = traj[t].action_index;
    b.old_log_probs[t] = traj[t].log_prob;
    rewards[t] = traj[t].local_reward * reward_scale;
    values[t] = traj[t].value;
  }
  const auto est = compute_gae(rewards, values, terminal_value * reward_scale,
                               gamma, lambda);
  b.advantages = est.advantages;
  b.returns = est.returns;
  return b;
}

TrainReport train(const ProblemInstance& instance, const RLConfig& cfg,
                  const SAConfig& sa_cfg,
                  std::optional<PolicyNet<double>> resume, int start_epoch) {
  validate(cfg);
  TrainReport report;
  report.net = resume ? std::move(*resume)
                      : make_policy(instance, cfg.hidden, derive_seed(cfg.seed, 0, 0));
  report.epochs_completed = start_epoch;
  Adam optimizer(report.net.num_params());
  const PpoHyper hyper = cfg.ppo();
  const double scale = resolve_reward_scale(instance, cfg);

  for (int e = 0; e < cfg.epochs; ++e) {
    const int epoch = start_epoch + e;
    const auto t0 = std::chrono::steady_clock::now();
    Rng env_rng(derive_seed(cfg.seed, 1, epoch));
    Rng policy_rng(derive_seed(cfg.seed, 2, epoch));
    Rng ppo_rng(derive_seed(cfg.seed, 4, epoch));
    SAConfig sa = sa_cfg;
    sa.seed = derive_seed(cfg.seed, 3, epoch);

    const EpochOutcome out =
        run_epoch(instance, report.net, cfg, sa, env_rng, policy_rng);
    const PpoBatch batch =
        make_batch(out.trajectory, out.global_reward, cfg.gamma,
                   cfg.gae_lambda, scale);
    const PpoStats stats = ppo_update(report.net, optimizer, batch, hyper, ppo_rng);

    EpochRecord rec;
    rec.epoch = epoch;
    rec.init_cost = out.init_cost;
    rec.post_sa_cost = out.final_cost;
    rec.global_reward = out.global_reward;
    double sum = 0.0;
    for (const Transition& t : out.trajectory) sum += t.local_reward;
    rec.mean_local_reward = sum / static_cast<double>(out.trajectory.size());
    rec.policy_loss = stats.policy_loss;
    rec.value_loss = stats.value_loss;
    rec.entropy = stats.entropy;
    rec.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0).count();
    report.records.push_back(rec);
    if (stats.aborted) {
      report.abort_message = "epoch " + std::to_string(epoch) + ": " + stats.message;
      break;
    }
    report.epochs_completed = epoch + 1;
  }
  return report;
}

SequencePair rl_init(const ProblemInstance& instance,
                     const PolicyNet<double>& net, int r_steps,
                     std::uint64_t seed, bool greedy) {
  const ActionSpace actions(instance);
  if (net.inputs() != 3 * actions.size() || net.actions() != actions.size()) {
    throw InvalidArgument("policy network shape does not match the instance");
  }
  // Same stream as random_sequence_pair(instance, seed), so P(0) is the
  // random-init arm's starting point.
  Rng env_rng(seed);
  Rng policy_rng(derive_seed(seed, 2, 0));
  EnvState state = env_reset(instance, env_rng);
  for (int t = 0; t < r_steps; ++t) {
    const PolicyChoice c = choose_action(net, state.encoded, policy_rng, greedy);
    state = env_step(state, actions.block(c.action_index), instance, env_rng).state;
  }
  return state.sp;
}

}  // namespace rlsa
