// Command-line front end: pack, sa, train, compare, render, make-fixed.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "rlsa/annealer.hpp"
#include "rlsa/bench_io.hpp"
#include "rlsa/cost.hpp"
#include "rlsa/experiment.hpp"
#include "rlsa/network_io.hpp"
#include "rlsa/trainer.hpp"

namespace fs = std::filesystem;
using namespace rlsa;

namespace {

// Flag values as parsed; applied on top of an optional --spec file.
struct Flags {
  std::string spec_path;
  int lattice = 0;
  std::string yal;
  std::string fixed;
  std::uint64_t seed = 1;
  int sa_steps = 5000;
  double t_max = 0.0;
  double t_min = 0.0;
  bool auto_temp = false;
  bool rotation = false;
  int epochs = 10;
  int r_steps = 200;
  int s_steps = 5000;
  double gamma = 0.99;
  double lambda = 0.95;
  double clip = 0.2;
  double lr = 3e-4;
  int runs = 10;
  std::string out = "out";
  std::string sign = "improvement";
  bool greedy = false;
};

struct Options {
  CLI::Option* spec = nullptr;
  CLI::Option* lattice = nullptr;
  CLI::Option* yal = nullptr;
  CLI::Option* fixed = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* sa_steps = nullptr;
  CLI::Option* t_max = nullptr;
  CLI::Option* t_min = nullptr;
  CLI::Option* auto_temp = nullptr;
  CLI::Option* rotation = nullptr;
  CLI::Option* epochs = nullptr;
  CLI::Option* r_steps = nullptr;
  CLI::Option* s_steps = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* lambda = nullptr;
  CLI::Option* clip = nullptr;
  CLI::Option* lr = nullptr;
  CLI::Option* runs = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* sign = nullptr;
  CLI::Option* greedy = nullptr;
};

Options add_common(CLI::App* cmd, Flags& f) {
  Options o;
  o.spec = cmd->add_option("--spec", f.spec_path, "experiment spec JSON");
  o.lattice = cmd->add_option("--lattice", f.lattice, "lattice side length n");
  o.yal = cmd->add_option("--yal", f.yal, "YAL benchmark file");
  o.fixed = cmd->add_option("--fixed", f.fixed, "fixed-block config JSON");
  o.seed = cmd->add_option("--seed", f.seed, "base seed");
  o.sa_steps = cmd->add_option("--sa-steps", f.sa_steps, "SA steps (sa command)");
  o.t_max = cmd->add_option("--t-max", f.t_max, "SA start temperature");
  o.t_min = cmd->add_option("--t-min", f.t_min, "SA end temperature");
  o.auto_temp = cmd->add_flag("--auto-temp", f.auto_temp,
                              "estimate temperatures from sampled moves");
  o.rotation = cmd->add_flag("--rotate", f.rotation, "enable rotation moves");
  o.epochs = cmd->add_option("--epochs", f.epochs, "training epochs");
  o.r_steps = cmd->add_option("--r-steps", f.r_steps, "RL steps per epoch");
  o.s_steps = cmd->add_option("--s-steps", f.s_steps, "SA steps per epoch");
  o.gamma = cmd->add_option("--gamma", f.gamma, "discount");
  o.lambda = cmd->add_option("--lambda", f.lambda, "GAE lambda");
  o.clip = cmd->add_option("--clip", f.clip, "PPO clip epsilon");
  o.lr = cmd->add_option("--lr", f.lr, "learning rate");
  o.runs = cmd->add_option("--runs", f.runs, "paired runs");
  o.out = cmd->add_option("--out", f.out, "output directory");
  o.sign = cmd->add_option("--global-reward-sign", f.sign, "improvement|literal")
               ->check(CLI::IsMember({"improvement", "literal"}));
  o.greedy = cmd->add_flag("--greedy-eval", f.greedy,
                           "argmax instead of sampling in rl_init");
  return o;
}

ExperimentSpec build_spec(const Flags& f, const Options& o) {
  ExperimentSpec s;
  if (o.spec->count()) s = parse_experiment_spec(read_text_file(f.spec_path));
  if (o.lattice->count()) {
    s.lattice = f.lattice;
    s.yal.reset();
  }
  if (o.yal->count()) {
    s.yal = f.yal;
    s.lattice.reset();
  }
  if (o.fixed->count()) s.fixed = f.fixed;
  if (o.seed->count()) s.seed = f.seed;
  if (o.sa_steps->count()) s.sa.steps = f.sa_steps;
  if (o.t_max->count()) s.sa.t_max = f.t_max;
  if (o.t_min->count()) s.sa.t_min = f.t_min;
  if (o.auto_temp->count()) s.auto_temp = true;
  if (o.rotation->count()) s.sa.rotation_enabled = true;
  if (o.epochs->count()) s.rl.epochs = f.epochs;
  if (o.r_steps->count()) s.rl.r_steps = f.r_steps;
  if (o.s_steps->count()) s.rl.s_steps = f.s_steps;
  if (o.gamma->count()) s.rl.gamma = f.gamma;
  if (o.lambda->count()) s.rl.gae_lambda = f.lambda;
  if (o.clip->count()) s.rl.clip_eps = f.clip;
  if (o.lr->count()) s.rl.learning_rate = f.lr;
  if (o.runs->count()) s.runs = f.runs;
  if (o.out->count()) s.out_dir = f.out;
  if (o.sign->count()) s.rl.global_reward_sign = parse_global_reward_sign(f.sign);
  if (o.greedy->count()) s.rl.greedy_eval = true;
  s.rl.seed = s.seed;
  s.sa.seed = s.seed;
  validate(s);
  return s;
}

void print_cost(const std::string& label, const CostBreakdown& c) {
  std::printf("%s area=%.6g wirelength=%.6g cost=%.6g\n", label.c_str(), c.area,
              c.wirelength, c.total);
}

int cmd_pack(const ExperimentSpec& spec, const std::string& sp_path) {
  const ProblemInstance inst = load_instance(spec);
  const SequencePair sp = sp_path.empty()
                              ? random_sequence_pair(inst, spec.seed)
                              : parse_sequence_pair_json(read_text_file(sp_path));
  const Packing p = pack(inst, sp);
  print_cost(inst.name, cost(inst, p));
  render_svg(inst, p, spec.out_dir / "pack.svg");
  write_text_file(spec.out_dir / "pack_sp.json", sequence_pair_json(sp));
  return 0;
}

int cmd_sa(const ExperimentSpec& spec) {
  const ProblemInstance inst = load_instance(spec);
  const SAConfig sa = resolve_sa_config(inst, spec);
  const RunRecord rec = run_sa_baseline(inst, sa, spec.seed);
  print_cost(inst.name + " initial", rec.initial);
  print_cost(inst.name + " final", rec.final_cost);
  std::printf("t_max=%.6g t_min=%.6g steps=%d seconds=%.3f\n", sa.t_max,
              sa.t_min, sa.steps, rec.seconds);
  write_results({rec}, spec.out_dir / "sa");
  write_text_file(spec.out_dir / "sa_trace.csv", trace_csv(rec.trace));
  render_svg(inst, pack(inst, rec.best), spec.out_dir / "sa.svg", "SA, random init");
  return 0;
}

int cmd_train(const ExperimentSpec& spec, const std::string& resume_path) {
  const ProblemInstance inst = load_instance(spec);
  const SAConfig sa = resolve_sa_config(inst, spec);
  std::optional<PolicyNet<double>> resume;
  int start = 0;
  if (!resume_path.empty()) {
    SavedNetwork saved = load_network(resume_path, inst);
    start = saved.epochs_completed;
    resume = std::move(saved.net);
  }
  const TrainReport report = train(inst, spec.rl, sa, std::move(resume), start);
  for (const EpochRecord& r : report.records) {
    std::printf("epoch %d: C(r)=%.6g C(r+s)=%.6g r_g=%.6g entropy=%.4f %.2fs\n",
                r.epoch, r.init_cost, r.post_sa_cost, r.global_reward,
                r.entropy, r.seconds);
  }
  write_text_file(spec.out_dir / "train_report.json", train_report_json(report));
  write_text_file(spec.out_dir / "train_report.csv", train_report_csv(report));
  save_network(spec.out_dir / "network.json", report.net, spec.rl, inst,
               report.epochs_completed);
  write_text_file(spec.out_dir / "experiment.json", experiment_spec_json(spec));
  if (!report.abort_message.empty()) {
    std::fprintf(stderr, "training aborted: %s\n", report.abort_message.c_str());
    return 1;
  }
  return 0;
}

int cmd_compare(const ExperimentSpec& spec, const std::string& network_path) {
  const ProblemInstance inst = load_instance(spec);
  const SAConfig sa = resolve_sa_config(inst, spec);
  const SavedNetwork saved = load_network(network_path, inst);
  if (!saved.fingerprint_matches) {
    std::fprintf(stderr,
                 "warning: network was trained on a different instance "
                 "geometry with the same block count\n");
  }
  const PairedResult res =
      paired_compare(inst, saved.net, spec.rl, sa, spec.runs, spec.seed);
  write_results(res.records, spec.out_dir / "compare");
  const std::string summary = paired_summary_text(res, inst.name);
  write_text_file(spec.out_dir / "compare_summary.txt", summary);
  std::fputs(summary.c_str(), stdout);
  for (const RunRecord& r : res.records) {
    if (r.seed != res.records.front().seed) break;
    render_svg(inst, pack(inst, r.best),
               spec.out_dir / ("compare_" + to_string(r.method) + ".svg"),
               to_string(r.method));
  }
  return 0;
}

int cmd_render(const ExperimentSpec& spec, const std::string& sp_path,
               const std::string& record_path, int index,
               const std::string& svg_path) {
  const ProblemInstance inst = load_instance(spec);
  SequencePair sp;
  if (!record_path.empty()) {
    const std::vector<RunRecord> recs = read_results(record_path);
    if (index < 0 || index >= static_cast<int>(recs.size())) {
      throw InvalidArgument("record index out of range");
    }
    sp = recs[index].best;
  } else if (!sp_path.empty()) {
    sp = parse_sequence_pair_json(read_text_file(sp_path));
  } else {
    sp = random_sequence_pair(inst, spec.seed);
  }
  const Packing p = pack(inst, sp);
  const fs::path out = svg_path.empty() ? spec.out_dir / "render.svg" : fs::path(svg_path);
  render_svg(inst, p, out);
  print_cost(inst.name, cost(inst, p));
  return 0;
}

int cmd_make_fixed(const ExperimentSpec& spec, int count,
                   const std::string& path) {
  ExperimentSpec plain = spec;
  plain.fixed.reset();
  const ProblemInstance inst = load_instance(plain);
  const FixedConfig cfg = example_fixed_config(inst, count, spec.seed);
  save_fixed_config(cfg, path);
  for (const FixedEntry& e : cfg.entries) {
    std::printf("%s %.6g %.6g\n", e.name.c_str(), e.x, e.y);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence-pair placement with RL-initialized simulated annealing"};
  app.require_subcommand(1);

  Flags f;
  std::string sp_path;
  std::string record_path;
  std::string network_path;
  std::string resume_path;
  std::string svg_path;
  std::string fixed_out = "fixed.json";
  int index = 0;
  int fixed_count = 3;

  CLI::App* pack_cmd = app.add_subcommand("pack", "pack one sequence pair and report its cost");
  const Options pack_opts = add_common(pack_cmd, f);
  pack_cmd->add_option("--sp", sp_path, "sequence pair JSON (default: random from --seed)");

  CLI::App* sa_cmd = app.add_subcommand("sa", "simulated annealing from a random start");
  const Options sa_opts = add_common(sa_cmd, f);

  CLI::App* train_cmd = app.add_subcommand("train", "train the RL initializer");
  const Options train_opts = add_common(train_cmd, f);
  train_cmd->add_option("--resume", resume_path, "continue from a saved network");

  CLI::App* cmp_cmd = app.add_subcommand("compare", "paired RL-init vs random-init SA runs");
  const Options cmp_opts = add_common(cmp_cmd, f);
  cmp_cmd->add_option("--network", network_path, "trained network JSON")->required();

  CLI::App* render_cmd = app.add_subcommand("render", "draw a placement as SVG");
  const Options render_opts = add_common(render_cmd, f);
  render_cmd->add_option("--sp", sp_path, "sequence pair JSON");
  render_cmd->add_option("--record", record_path, "run records JSON");
  render_cmd->add_option("--index", index, "record index");
  render_cmd->add_option("--svg", svg_path, "output SVG path");

  CLI::App* fixed_cmd = app.add_subcommand(
      "make-fixed", "write an example fixed-block config from a random packing");
  const Options fixed_opts = add_common(fixed_cmd, f);
  fixed_cmd->add_option("--count", fixed_count, "number of blocks to fix");
  fixed_cmd->add_option("--write", fixed_out, "output JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pack_cmd->parsed()) return cmd_pack(build_spec(f, pack_opts), sp_path);
    if (sa_cmd->parsed()) return cmd_sa(build_spec(f, sa_opts));
    if (train_cmd->parsed()) return cmd_train(build_spec(f, train_opts), resume_path);
    if (cmp_cmd->parsed()) return cmd_compare(build_spec(f, cmp_opts), network_path);
    if (render_cmd->parsed()) {
      return cmd_render(build_spec(f, render_opts), sp_path, record_path, index,
                        svg_path);
    }
    if (fixed_cmd->parsed()) {
      return cmd_make_fixed(build_spec(f, fixed_opts), fixed_count, fixed_out);
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 1;
}
