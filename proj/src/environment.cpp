#include "rlsa/environment.hpp"

#include "rlsa/cost.hpp"

namespace rlsa {

ActionSpace::ActionSpace(const ProblemInstance& instance)
    : ids_(instance.free_ids()), index_of_(instance.num_blocks(), -1) {
  for (int i = 0; i < size(); ++i) index_of_[ids_[i]] = i;
}

int ActionSpace::index(BlockId id) const {
  if (id < 0 || id >= static_cast<int>(index_of_.size()) || index_of_[id] < 0) {
    throw InvalidArgument("block " + std::to_string(id) + " is not a free block");
  }
  return index_of_[id];
}

Eigen::VectorXd encode_state(const ActionSpace& actions, const SequencePair& sp,
                             BlockId input_block) {
  const int n = actions.size();
  Eigen::VectorXd enc = Eigen::VectorXd::Zero(3 * n);
  for (int pos = 0; pos < n; ++pos) {
    enc[actions.index(sp.gamma_plus[pos])] = static_cast<double>(pos) / n;
    enc[n + actions.index(sp.gamma_minus[pos])] = static_cast<double>(pos) / n;
  }
  enc[2 * n + actions.index(input_block)] = 1.0;
  return enc;
}

EnvState env_reset(const ProblemInstance& instance, Rng& rng) {
  const ActionSpace actions(instance);
  EnvState s;
  s.sp = random_sequence_pair(instance, rng);
  s.input_block = actions.block(uniform_index(rng, actions.size()));
  s.encoded = encode_state(actions, s.sp, s.input_block);
  s.cost = evaluate(instance, s.sp).total;
  return s;
}

EnvState env_reset(const ProblemInstance& instance, std::uint64_t seed) {
  Rng rng(seed);
  return env_reset(instance, rng);
}

StepResult env_step(const EnvState& state, BlockId action,
                    const ProblemInstance& instance, Rng& rng) {
  const ActionSpace actions(instance);
  actions.index(action);  // validates
  StepResult out;
  out.state.sp = swap_pair(state.sp, state.input_block, action);
  out.state.cost = evaluate(instance, out.state.sp).total;
  out.state.input_block = actions.block(uniform_index(rng, actions.size()));
  out.state.encoded = encode_state(actions, out.state.sp, out.state.input_block);
  out.local_reward = state.cost - out.state.cost;
  return out;
}

}  // namespace rlsa
