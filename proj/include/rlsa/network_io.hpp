#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rlsa/policy_net.hpp"
#include "rlsa/trainer.hpp"

namespace rlsa {

struct InstanceFingerprint {
  int blocks = 0;
  int free_blocks = 0;
  std::uint64_t hash = 0;  // FNV-1a over names, sizes, fixed origins and nets
  bool operator==(const InstanceFingerprint&) const = default;
};

InstanceFingerprint fingerprint(const ProblemInstance& instance);

struct SavedNetwork {
  PolicyNet<double> net;
  RLConfig config;
  InstanceFingerprint instance;
  int epochs_completed = 0;
  bool fingerprint_matches = true;  // set by load_network
};

// JSON document: layer shapes with row-major weights, config echo, instance
// fingerprint and the number of epochs trained.
std::string network_json(const PolicyNet<double>& net, const RLConfig& cfg,
                         const InstanceFingerprint& fp, int epochs_completed);
SavedNetwork parse_network_json(std::string_view text);

void save_network(const std::filesystem::path& path,
                  const PolicyNet<double>& net, const RLConfig& cfg,
                  const ProblemInstance& instance, int epochs_completed);

// Throws InvalidArgument if the stored shapes do not fit `instance`. A
// differing fingerprint (same shape, other geometry) is reported, not fatal.
SavedNetwork load_network(const std::filesystem::path& path,
                          const ProblemInstance& instance);

std::string rl_config_json(const RLConfig& cfg);
RLConfig parse_rl_config_json(std::string_view text);

}  // namespace rlsa
