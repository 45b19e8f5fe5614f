#pragma once

#include <Eigen/Core>

#include "rlsa/errors.hpp"

namespace rlsa {

template <typename Scalar>
struct AdvantageEstimate {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> advantages;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> returns;
};

// Generalized advantage estimation over a single episode of length r whose
// value after the last step is bootstrapped by `terminal_value`:
//   delta_t = r_t + gamma * V_{t+1} - V_t,   V_r := terminal_value
//   A_t     = sum_k (gamma * lambda)^k delta_{t+k}
//   R_t     = A_t + V_t
template <typename DerivedR, typename DerivedV>
AdvantageEstimate<typename DerivedR::Scalar> compute_gae(
    const Eigen::MatrixBase<DerivedR>& rewards,
    const Eigen::MatrixBase<DerivedV>& values,
    typename DerivedR::Scalar terminal_value, typename DerivedR::Scalar gamma,
    typename DerivedR::Scalar lambda) {
  using Scalar = typename DerivedR::Scalar;
  const Eigen::Index r = rewards.size();
  if (r == 0) throw InvalidArgument("compute_gae: empty trajectory");
  if (values.size() != r) {
    throw InvalidArgument("compute_gae: rewards and values differ in length");
  }
  AdvantageEstimate<Scalar> out;
  out.advantages.resize(r);
  Scalar next_value = terminal_value;
  Scalar running = 0;
  for (Eigen::Index t = r - 1; t >= 0; --t) {
    const Scalar delta = rewards(t) + gamma * next_value - values(t);
    running = delta + gamma * lambda * running;
    out.advantages(t) = running;
    next_value = values(t);
  }
  out.returns = out.advantages + values.derived().template cast<Scalar>();
  return out;
}

}  // namespace rlsa
