#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "rlsa/model.hpp"
#include "rlsa/policy_net.hpp"

namespace rlsa {

struct PpoHyper {
  double clip_eps = 0.2;
  double learning_rate = 3e-4;
  int ppo_epochs = 4;
  int minibatch_size = 64;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  double max_grad_norm = 0.5;
};

// Samples gathered under the policy that is about to be updated. States are
// stored one per column.
struct PpoBatch {
  Eigen::MatrixXd states;
  std::vector<int> actions;  // action indices
  Eigen::VectorXd old_log_probs;
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;

  Eigen::Index size() const { return states.cols(); }
  PpoBatch subset(const std::vector<Eigen::Index>& idx) const;
};

struct LossTerms {
  double loss = 0.0;         // -surrogate + c_v * value_loss - c_e * entropy
  double surrogate = 0.0;    // mean clipped surrogate
  double value_loss = 0.0;   // mean squared error against returns
  double entropy = 0.0;      // mean policy entropy
  double max_ratio_dev = 0.0;  // max |rho - 1|
};

// Clipped-surrogate loss on a batch. When grad is non-null it receives the
// gradient of `loss` with respect to net.params().
LossTerms ppo_loss(const PolicyNet<double>& net, const PpoBatch& batch,
                   const PpoHyper& hyper, Eigen::VectorXd* grad = nullptr);

// Zero mean, unit variance. Batches of one are returned as-is; a constant
// batch is only centered.
Eigen::VectorXd normalize_advantages(const Eigen::VectorXd& adv);

class Adam {
 public:
  explicit Adam(Eigen::Index size = 0) { reset(size); }
  void reset(Eigen::Index size);
  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, double lr);
  Eigen::Index size() const { return m_.size(); }

 private:
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-5;
  long steps_ = 0;
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
};

struct PpoStats {
  double policy_loss = 0.0;  // mean over minibatches of -surrogate
  double value_loss = 0.0;
  double entropy = 0.0;
  int updates = 0;
  // Diagnostics of the first minibatch before any parameter change: the
  // ratio is 1 there and the surrogate equals the mean advantage.
  double first_max_ratio_dev = 0.0;
  double first_surrogate = 0.0;
  double first_mean_advantage = 0.0;
  bool aborted = false;
  std::string message;
};

// ppo_epochs passes over shuffled minibatches with Adam steps after a global
// gradient-norm clip. Advantages are normalized here. A non-finite loss
// restores the parameters and optimizer state from before the call and sets
// `aborted`.
PpoStats ppo_update(PolicyNet<double>& net, Adam& optimizer,
                    const PpoBatch& batch, const PpoHyper& hyper, Rng& rng);

}  // namespace rlsa
