#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rlsa/model.hpp"

namespace rlsa {

// Placement environment state: the current sequence pair plus the randomly
// chosen input block the agent must pair with a candidate.
//
// encoded has 3n entries for n free blocks (free-id order): gamma_plus
// positions / n, gamma_minus positions / n, then a one-hot of the input block.
struct EnvState {
  SequencePair sp;
  BlockId input_block = 0;
  Eigen::VectorXd encoded;
  double cost = 0.0;  // total cost of sp
};

// Maps free-block ids to dense action indices and back.
class ActionSpace {
 public:
  explicit ActionSpace(const ProblemInstance& instance);
  int size() const { return static_cast<int>(ids_.size()); }
  BlockId block(int index) const { return ids_.at(index); }
  // Throws InvalidArgument for an id that is not a free block.
  int index(BlockId id) const;

 private:
  std::vector<BlockId> ids_;
  std::vector<int> index_of_;
};

Eigen::VectorXd encode_state(const ActionSpace& actions, const SequencePair& sp,
                             BlockId input_block);

EnvState env_reset(const ProblemInstance& instance, Rng& rng);
EnvState env_reset(const ProblemInstance& instance, std::uint64_t seed);

struct StepResult {
  EnvState state;
  double local_reward = 0.0;  // cost before - cost after
};

// Swaps the input block with `action` in both sequences and draws the next
// input block from rng. Throws InvalidArgument if action is not a free block.
StepResult env_step(const EnvState& state, BlockId action,
                    const ProblemInstance& instance, Rng& rng);

}  // namespace rlsa
