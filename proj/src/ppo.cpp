#include "rlsa/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rlsa {

PpoBatch PpoBatch::subset(const std::vector<Eigen::Index>& idx) const {
  PpoBatch out;
  const auto n = static_cast<Eigen::Index>(idx.size());
  out.states.resize(states.rows(), n);
  out.actions.resize(idx.size());
  out.old_log_probs.resize(n);
  out.advantages.resize(n);
  out.returns.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index i = idx[k];
    out.states.col(k) = states.col(i);
    out.actions[k] = actions[i];
    out.old_log_probs[k] = old_log_probs[i];
    out.advantages[k] = advantages[i];
    out.returns[k] = returns[i];
  }
  return out;
}

LossTerms ppo_loss(const PolicyNet<double>& net, const PpoBatch& batch,
                   const PpoHyper& hyper, Eigen::VectorXd* grad) {
  const Eigen::Index b = batch.size();
  const double inv_b = 1.0 / static_cast<double>(b);
  const auto act = net.forward(batch.states);
  const Eigen::MatrixXd logp = log_softmax(act.logits);
  const Eigen::MatrixXd prob = logp.array().exp();

  Eigen::MatrixXd d_logits = Eigen::MatrixXd::Zero(logp.rows(), b);
  Eigen::RowVectorXd d_values(b);
  LossTerms t;
  for (Eigen::Index j = 0; j < b; ++j) {
    const int a = batch.actions[j];
    const double adv = batch.advantages[j];
    const double ratio = std::exp(logp(a, j) - batch.old_log_probs[j]);
    const double clipped =
        std::clamp(ratio, 1.0 - hyper.clip_eps, 1.0 + hyper.clip_eps);
    const bool unclipped_branch = ratio * adv <= clipped * adv;
    t.surrogate += std::min(ratio * adv, clipped * adv);
    t.max_ratio_dev = std::max(t.max_ratio_dev, std::abs(ratio - 1.0));

    const double err = act.values(j) - batch.returns[j];
    t.value_loss += err * err;

    const double entropy = -(prob.col(j).array() * logp.col(j).array()).sum();
    t.entropy += entropy;

    if (grad != nullptr) {
      // d(-surrogate)/dz = -A * rho * (onehot(a) - p) on the unclipped branch.
      if (unclipped_branch) {
        d_logits.col(j) = (adv * ratio * inv_b) * prob.col(j);
        d_logits(a, j) -= adv * ratio * inv_b;
      }
      // d(-c_e * H)/dz_k = c_e * p_k * (log p_k + H)
      d_logits.col(j).array() += hyper.entropy_coef * inv_b *
                                 prob.col(j).array() *
                                 (logp.col(j).array() + entropy);
      d_values(j) = hyper.value_coef * 2.0 * err * inv_b;
    }
  }
  t.surrogate *= inv_b;
  t.value_loss *= inv_b;
  t.entropy *= inv_b;
  t.loss = -t.surrogate + hyper.value_coef * t.value_loss -
           hyper.entropy_coef * t.entropy;
  if (grad != nullptr) *grad = net.backward(batch.states, act, d_logits, d_values);
  return t;
}

Eigen::VectorXd normalize_advantages(const Eigen::VectorXd& adv) {
  if (adv.size() <= 1) return adv;
  const double mean = adv.mean();
  Eigen::VectorXd centered = adv.array() - mean;
  const double var = centered.squaredNorm() / static_cast<double>(adv.size());
  if (var <= 1e-24) return centered;
  return centered / (std::sqrt(var) + 1e-8);
}

void Adam::reset(Eigen::Index size) {
  steps_ = 0;
  m_ = Eigen::VectorXd::Zero(size);
  v_ = Eigen::VectorXd::Zero(size);
}

void Adam::step(Eigen::VectorXd& params, const Eigen::VectorXd& grad,
                double lr) {
  ++steps_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  params.array() -=
      lr * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

PpoStats ppo_update(PolicyNet<double>& net, Adam& optimizer,
                    const PpoBatch& batch, const PpoHyper& hyper, Rng& rng) {
  if (optimizer.size() != net.num_params()) optimizer.reset(net.num_params());
  const Eigen::VectorXd saved_params = net.params();
  const Adam saved_optimizer = optimizer;

  PpoBatch work = batch;
  work.advantages = normalize_advantages(batch.advantages);

  const Eigen::Index n = work.size();
  const Eigen::Index mb = std::max<Eigen::Index>(1, hyper.minibatch_size);
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  PpoStats stats;
  bool first = true;
  for (int epoch = 0; epoch < hyper.ppo_epochs; ++epoch) {
    for (Eigen::Index i = n - 1; i > 0; --i) {
      std::swap(order[i], order[uniform_index(rng, static_cast<int>(i + 1))]);
    }
    for (Eigen::Index start = 0; start < n; start += mb) {
      const Eigen::Index end = std::min(n, start + mb);
      const PpoBatch mini = work.subset(
          std::vector<Eigen::Index>(order.begin() + start, order.begin() + end));
      Eigen::VectorXd grad;
      const LossTerms t = ppo_loss(net, mini, hyper, &grad);
      if (!std::isfinite(t.loss) || !grad.allFinite()) {
        net.params() = saved_params;
        optimizer = saved_optimizer;
        stats.aborted = true;
        stats.message = "non-finite PPO loss at pass " + std::to_string(epoch) +
                        ", minibatch offset " + std::to_string(start) +
                        "; parameters rolled back";
        return stats;
      }
      if (first) {
        stats.first_max_ratio_dev = t.max_ratio_dev;
        stats.first_surrogate = t.surrogate;
        stats.first_mean_advantage = mini.advantages.mean();
        first = false;
      }
      const double norm = grad.norm();
      if (norm > hyper.max_grad_norm) grad *= hyper.max_grad_norm / norm;
      optimizer.step(net.params(), grad, hyper.learning_rate);

      stats.policy_loss += -t.surrogate;
      stats.value_loss += t.value_loss;
      stats.entropy += t.entropy;
      ++stats.updates;
    }
  }
  if (stats.updates > 0) {
    stats.policy_loss /= stats.updates;
    stats.value_loss /= stats.updates;
    stats.entropy /= stats.updates;
  }
  return stats;
}

}  // namespace rlsa
