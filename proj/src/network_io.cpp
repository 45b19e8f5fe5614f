#include "rlsa/network_io.hpp"

#include <cstring>

#include <json.hpp>

#include "rlsa/bench_io.hpp"

namespace rlsa {

using nlohmann::json;

namespace {

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ULL;
    }
  }
  void add(double v) { bytes(&v, sizeof v); }
  void add(int v) { bytes(&v, sizeof v); }
  void add(const std::string& s) {
    bytes(s.data(), s.size());
    add(static_cast<int>(s.size()));
  }
};

json config_to_json(const RLConfig& c) {
  return {{"epochs", c.epochs},
          {"r_steps", c.r_steps},
          {"s_steps", c.s_steps},
          {"gamma", c.gamma},
          {"gae_lambda", c.gae_lambda},
          {"clip_eps", c.clip_eps},
          {"learning_rate", c.learning_rate},
          {"ppo_epochs", c.ppo_epochs},
          {"minibatch_size", c.minibatch_size},
          {"value_coef", c.value_coef},
          {"entropy_coef", c.entropy_coef},
          {"hidden", c.hidden},
          {"reward_scale", c.reward_scale},
          {"seed", c.seed},
          {"global_reward_sign", to_string(c.global_reward_sign)},
          {"greedy_eval", c.greedy_eval}};
}

RLConfig config_from_json(const json& j) {
  RLConfig c;
  c.epochs = j.value("epochs", c.epochs);
  c.r_steps = j.value("r_steps", c.r_steps);
  c.s_steps = j.value("s_steps", c.s_steps);
  c.gamma = j.value("gamma", c.gamma);
  c.gae_lambda = j.value("gae_lambda", c.gae_lambda);
  c.clip_eps = j.value("clip_eps", c.clip_eps);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.ppo_epochs = j.value("ppo_epochs", c.ppo_epochs);
  c.minibatch_size = j.value("minibatch_size", c.minibatch_size);
  c.value_coef = j.value("value_coef", c.value_coef);
  c.entropy_coef = j.value("entropy_coef", c.entropy_coef);
  c.hidden = j.value("hidden", c.hidden);
  c.reward_scale = j.value("reward_scale", c.reward_scale);
  c.seed = j.value("seed", c.seed);
  c.global_reward_sign = parse_global_reward_sign(
      j.value("global_reward_sign", std::string("improvement")));
  c.greedy_eval = j.value("greedy_eval", c.greedy_eval);
  return c;
}

}  // namespace

InstanceFingerprint fingerprint(const ProblemInstance& instance) {
  Fnv1a f;
  for (const Block& b : instance.blocks) {
    f.add(b.name);
    f.add(b.width);
    f.add(b.height);
    f.add(b.is_fixed() ? 1 : 0);
    if (b.fixed_origin) {
      f.add(b.fixed_origin->x);
      f.add(b.fixed_origin->y);
    }
  }
  for (const Net& n : instance.nets) {
    for (BlockId m : n.members) f.add(m);
    f.add(-1);
  }
  return {instance.num_blocks(), instance.num_free(), f.h};
}

std::string rl_config_json(const RLConfig& cfg) {
  return config_to_json(cfg).dump(2);
}

RLConfig parse_rl_config_json(std::string_view text) {
  return config_from_json(json::parse(text));
}

std::string network_json(const PolicyNet<double>& net, const RLConfig& cfg,
                         const InstanceFingerprint& fp, int epochs_completed) {
  json layers = json::array();
  for (int i = 0; i < static_cast<int>(net.layers().size()); ++i) {
    const auto& l = net.layers()[i];
    const auto w = net.weight(i);
    std::vector<double> row_major;
    row_major.reserve(static_cast<std::size_t>(l.rows * l.cols));
    for (Eigen::Index r = 0; r < l.rows; ++r) {
      for (Eigen::Index c = 0; c < l.cols; ++c) row_major.push_back(w(r, c));
    }
    const auto b = net.bias(i);
    layers.push_back({{"name", l.name},
                      {"shape", {l.rows, l.cols}},
                      {"weight", row_major},
                      {"bias", std::vector<double>(b.data(), b.data() + b.size())}});
  }
  json doc = {{"format", "rlsa-policy-v1"},
              {"inputs", net.inputs()},
              {"actions", net.actions()},
              {"hidden", net.hidden()},
              {"layers", layers},
              {"config", config_to_json(cfg)},
              {"instance",
               {{"blocks", fp.blocks},
                {"free_blocks", fp.free_blocks},
                {"hash", fp.hash}}},
              {"epochs_completed", epochs_completed}};
  return doc.dump() + "\n";
}

SavedNetwork parse_network_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    SavedNetwork out;
    out.net = PolicyNet<double>(doc.at("inputs").get<int>(),
                                doc.at("actions").get<int>(),
                                doc.at("hidden").get<int>());
    const json& layers = doc.at("layers");
    if (layers.size() != out.net.layers().size()) {
      throw InvalidArgument("network: unexpected layer count");
    }
    for (int i = 0; i < static_cast<int>(layers.size()); ++i) {
      const auto& l = out.net.layers()[i];
      const json& jl = layers[i];
      const auto shape = jl.at("shape").get<std::vector<Eigen::Index>>();
      const auto weight = jl.at("weight").get<std::vector<double>>();
      const auto bias = jl.at("bias").get<std::vector<double>>();
      if (shape.size() != 2 || shape[0] != l.rows || shape[1] != l.cols ||
          static_cast<Eigen::Index>(weight.size()) != l.rows * l.cols ||
          static_cast<Eigen::Index>(bias.size()) != l.rows) {
        throw InvalidArgument("network: layer '" + l.name + "' has wrong shape");
      }
      auto w = out.net.weight(i);
      for (Eigen::Index r = 0; r < l.rows; ++r) {
        for (Eigen::Index c = 0; c < l.cols; ++c) w(r, c) = weight[r * l.cols + c];
      }
      auto b = out.net.bias(i);
      for (Eigen::Index r = 0; r < l.rows; ++r) b[r] = bias[r];
    }
    out.config = config_from_json(doc.at("config"));
    const json& fp = doc.at("instance");
    out.instance = {fp.at("blocks").get<int>(), fp.at("free_blocks").get<int>(),
                    fp.at("hash").get<std::uint64_t>()};
    out.epochs_completed = doc.value("epochs_completed", 0);
    return out;
  } catch (const json::exception& err) {
    throw InvalidArgument(std::string("network: ") + err.what());
  }
}

void save_network(const std::filesystem::path& path,
                  const PolicyNet<double>& net, const RLConfig& cfg,
                  const ProblemInstance& instance, int epochs_completed) {
  write_text_file(path,
                  network_json(net, cfg, fingerprint(instance), epochs_completed));
}

SavedNetwork load_network(const std::filesystem::path& path,
                          const ProblemInstance& instance) {
  SavedNetwork saved = parse_network_json(read_text_file(path));
  const int n = instance.num_free();
  if (saved.net.inputs() != 3 * n || saved.net.actions() != n) {
    throw InvalidArgument("network '" + path.string() + "' expects " +
                          std::to_string(saved.net.actions()) +
                          " free blocks, instance has " + std::to_string(n));
  }
  saved.fingerprint_matches = saved.instance == fingerprint(instance);
  return saved;
}

}  // namespace rlsa
