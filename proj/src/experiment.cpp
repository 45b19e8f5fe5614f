#include "rlsa/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rlsa/cost.hpp"

namespace rlsa {

using nlohmann::json;

void validate(const ExperimentSpec& spec) {
  if (spec.lattice.has_value() == spec.yal.has_value()) {
    throw InvalidArgument("exactly one of lattice or yal must be given");
  }
  if (spec.yal && !std::filesystem::exists(*spec.yal)) {
    throw IoError("benchmark file '" + spec.yal->string() + "' does not exist");
  }
  if (spec.fixed && !std::filesystem::exists(*spec.fixed)) {
    throw IoError("fixed config '" + spec.fixed->string() + "' does not exist");
  }
  if (spec.runs < 1) throw InvalidArgument("runs must be >= 1");
  validate(spec.rl);
  if (!spec.auto_temp) validate(spec.sa);
}

ExperimentSpec parse_experiment_spec(std::string_view json_text) {
  ExperimentSpec s;
  try {
    const json j = json::parse(json_text);
    if (j.contains("lattice")) s.lattice = j["lattice"].get<int>();
    if (j.contains("yal")) s.yal = j["yal"].get<std::string>();
    if (j.contains("fixed")) s.fixed = j["fixed"].get<std::string>();
    s.sa.steps = j.value("sa_steps", s.sa.steps);
    s.sa.t_max = j.value("t_max", s.sa.t_max);
    s.sa.t_min = j.value("t_min", s.sa.t_min);
    if (j.contains("move_probs")) {
      s.sa.move_probs = j["move_probs"].get<std::array<double, 3>>();
    }
    s.sa.rotation_enabled = j.value("rotation", s.sa.rotation_enabled);
    s.auto_temp = j.value("auto_temp", s.auto_temp);
    s.rl.epochs = j.value("epochs", s.rl.epochs);
    s.rl.r_steps = j.value("r_steps", s.rl.r_steps);
    s.rl.s_steps = j.value("s_steps", s.rl.s_steps);
    s.rl.gamma = j.value("gamma", s.rl.gamma);
    s.rl.gae_lambda = j.value("lambda", s.rl.gae_lambda);
    s.rl.clip_eps = j.value("clip", s.rl.clip_eps);
    s.rl.learning_rate = j.value("lr", s.rl.learning_rate);
    s.rl.ppo_epochs = j.value("ppo_epochs", s.rl.ppo_epochs);
    s.rl.minibatch_size = j.value("minibatch", s.rl.minibatch_size);
    s.rl.entropy_coef = j.value("entropy_coef", s.rl.entropy_coef);
    s.rl.value_coef = j.value("value_coef", s.rl.value_coef);
    s.rl.hidden = j.value("hidden", s.rl.hidden);
    s.rl.reward_scale = j.value("reward_scale", s.rl.reward_scale);
    s.rl.greedy_eval = j.value("greedy_eval", s.rl.greedy_eval);
    if (j.contains("global_reward_sign")) {
      s.rl.global_reward_sign =
          parse_global_reward_sign(j["global_reward_sign"].get<std::string>());
    }
    s.runs = j.value("runs", s.runs);
    s.seed = j.value("seed", s.seed);
    s.rl.seed = s.seed;
    s.sa.seed = s.seed;
    if (j.contains("out")) s.out_dir = j["out"].get<std::string>();
  } catch (const json::exception& err) {
    throw InvalidArgument(std::string("experiment spec: ") + err.what());
  }
  return s;
}

std::string experiment_spec_json(const ExperimentSpec& s) {
  json j;
  if (s.lattice) j["lattice"] = *s.lattice;
  if (s.yal) j["yal"] = s.yal->string();
  if (s.fixed) j["fixed"] = s.fixed->string();
  j["sa_steps"] = s.sa.steps;
  j["t_max"] = s.sa.t_max;
  j["t_min"] = s.sa.t_min;
  j["move_probs"] = s.sa.move_probs;
  j["rotation"] = s.sa.rotation_enabled;
  j["auto_temp"] = s.auto_temp;
  j["epochs"] = s.rl.epochs;
  j["r_steps"] = s.rl.r_steps;
  j["s_steps"] = s.rl.s_steps;
  j["gamma"] = s.rl.gamma;
  j["lambda"] = s.rl.gae_lambda;
  j["clip"] = s.rl.clip_eps;
  j["lr"] = s.rl.learning_rate;
  j["ppo_epochs"] = s.rl.ppo_epochs;
  j["minibatch"] = s.rl.minibatch_size;
  j["entropy_coef"] = s.rl.entropy_coef;
  j["value_coef"] = s.rl.value_coef;
  j["hidden"] = s.rl.hidden;
  j["reward_scale"] = s.rl.reward_scale;
  j["greedy_eval"] = s.rl.greedy_eval;
  j["global_reward_sign"] = to_string(s.rl.global_reward_sign);
  j["runs"] = s.runs;
  j["seed"] = s.seed;
  j["out"] = s.out_dir.string();
  return j.dump(2) + "\n";
}

ProblemInstance load_instance(const ExperimentSpec& spec) {
  ProblemInstance inst = spec.lattice ? gen_lattice(*spec.lattice)
                                      : load_yal(*spec.yal);
  if (spec.fixed) {
    inst = apply_fixed(inst, load_fixed_config(*spec.fixed));
    inst.name += "_fixed";
  }
  validate(inst);
  return inst;
}

double report_scale(const ProblemInstance& instance) {
  return instance.weights.wire == 0.0 ? 1e-6 : 1.0;
}

SAConfig resolve_sa_config(const ProblemInstance& instance,
                           const ExperimentSpec& spec) {
  SAConfig sa = spec.sa;
  if (spec.auto_temp && instance.num_free() >= 2) {
    const TemperatureEstimate t = auto_temperature(
        instance, random_sequence_pair(instance, derive_seed(spec.seed, 6, 0)),
        0.98, 0.02, 200, derive_seed(spec.seed, 7, 0));
    sa.t_max = t.t_max;
    sa.t_min = t.t_min;
  }
  validate(sa);
  return sa;
}

namespace {

RunRecord run_from(const ProblemInstance& instance, const SequencePair& init,
                   const SAConfig& sa, InitMethod method, std::uint64_t seed,
                   double extra_seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const SAResult res = sa_run(instance, init, sa);
  RunRecord r;
  r.instance = instance.name;
  r.method = method;
  r.seed = seed;
  r.sa_seed = sa.seed;
  r.sa_steps = sa.steps;
  r.initial = evaluate(instance, init);
  r.final_cost = res.best_cost;
  r.best = res.best;
  r.trace = res.trace;
  r.seconds = extra_seconds + std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0).count();
  r.report_scale = report_scale(instance);
  return r;
}

}  // namespace

RunRecord run_sa_baseline(const ProblemInstance& instance, const SAConfig& sa,
                          std::uint64_t seed) {
  return run_from(instance, random_sequence_pair(instance, seed), sa,
                  InitMethod::kRandomInit, seed, 0.0);
}

PairedResult paired_compare(const ProblemInstance& instance,
                            const PolicyNet<double>& net, const RLConfig& rl,
                            const SAConfig& sa_base, int runs,
                            std::uint64_t seed) {
  if (runs < 1) throw InvalidArgument("runs must be >= 1");
  PairedResult out;
  out.runs = runs;
  for (int i = 0; i < runs; ++i) {
    const std::uint64_t run_seed = derive_seed(seed, 5, i);
    SAConfig sa = sa_base;
    sa.steps = rl.s_steps;
    sa.seed = derive_seed(run_seed, 3, 0);

    const auto t0 = std::chrono::steady_clock::now();
    const SequencePair rl_start =
        rl_init(instance, net, rl.r_steps, run_seed, rl.greedy_eval);
    const double rl_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    RunRecord a = run_from(instance, rl_start, sa, InitMethod::kRlInit,
                           run_seed, rl_seconds);
    RunRecord b = run_from(instance, random_sequence_pair(instance, run_seed),
                           sa, InitMethod::kRandomInit, run_seed, 0.0);
    if (a.final_cost.total < b.final_cost.total) ++out.rl_wins;
    out.rl_mean += a.final_cost.total * a.report_scale;
    out.random_mean += b.final_cost.total * b.report_scale;
    out.records.push_back(std::move(a));
    out.records.push_back(std::move(b));
  }
  out.rl_mean /= runs;
  out.random_mean /= runs;
  return out;
}

std::string train_report_json(const TrainReport& report) {
  json records = json::array();
  for (const EpochRecord& r : report.records) {
    records.push_back({{"epoch", r.epoch},
                       {"init_cost", r.init_cost},
                       {"post_sa_cost", r.post_sa_cost},
                       {"global_reward", r.global_reward},
                       {"mean_local_reward", r.mean_local_reward},
                       {"policy_loss", r.policy_loss},
                       {"value_loss", r.value_loss},
                       {"entropy", r.entropy},
                       {"seconds", r.seconds}});
  }
  json doc = {{"records", records}, {"epochs_completed", report.epochs_completed}};
  if (!report.abort_message.empty()) doc["abort"] = report.abort_message;
  return doc.dump(1) + "\n";
}

std::string train_report_csv(const TrainReport& report) {
  std::ostringstream out;
  out << "epoch,init_cost,post_sa_cost,global_reward,mean_local_reward,"
         "policy_loss,value_loss,entropy,seconds\n";
  out << std::setprecision(10);
  for (const EpochRecord& r : report.records) {
    out << r.epoch << ',' << r.init_cost << ',' << r.post_sa_cost << ','
        << r.global_reward << ',' << r.mean_local_reward << ',' << r.policy_loss
        << ',' << r.value_loss << ',' << r.entropy << ',' << r.seconds << '\n';
  }
  return out.str();
}

std::string trace_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream out;
  out << "step,current,best\n" << std::setprecision(12);
  for (const TracePoint& t : trace) {
    out << t.step << ',' << t.current << ',' << t.best << '\n';
  }
  return out.str();
}

std::string paired_summary_text(const PairedResult& r,
                                const std::string& instance_name) {
  std::ostringstream out;
  out << "instance " << instance_name << ": rl_init mean " << r.rl_mean
      << ", random_init mean " << r.random_mean << ", rl better in "
      << r.rl_wins << "/" << r.runs << " paired runs\n";
  return out.str();
}

}  // namespace rlsa
