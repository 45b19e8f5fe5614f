#include <doctest.h>

#include <cmath>

#include "rlsa/gae.hpp"
#include "rlsa/policy_net.hpp"
#include "rlsa/ppo.hpp"

using namespace rlsa;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd random_vector(Rng& rng, Eigen::Index n, double lo, double hi) {
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = lo + (hi - lo) * uniform_unit(rng);
  return v;
}

// A batch over a 4-action problem whose old log-probs are perturbed so that
// some ratios land outside the clip range.
PpoBatch random_batch(const PolicyNet<double>& net, Rng& rng, int size) {
  PpoBatch b;
  b.states = MatrixXd(net.inputs(), size);
  for (int j = 0; j < size; ++j) b.states.col(j) = random_vector(rng, net.inputs(), 0, 1);
  const MatrixXd logp = log_softmax(net.forward(b.states).logits);
  b.actions.resize(size);
  b.old_log_probs.resize(size);
  for (int j = 0; j < size; ++j) {
    b.actions[j] = uniform_index(rng, net.actions());
    b.old_log_probs[j] = logp(b.actions[j], j) + 0.6 * (uniform_unit(rng) - 0.5);
  }
  b.advantages = random_vector(rng, size, -2, 2);
  b.returns = random_vector(rng, size, -1, 1);
  return b;
}

}  // namespace

TEST_CASE("policy net layout") {
  PolicyNet<double> net(12, 4, 16);
  CHECK(net.num_params() == (12 * 16 + 16) + (16 * 16 + 16) + (16 * 4 + 4) +
                                (12 * 16 + 16) + (16 * 16 + 16) + (16 * 1 + 1));
  Rng rng(0);
  net.initialize(rng);
  CHECK(net.params().allFinite());
  // hidden weights are orthogonal: 16x12 has orthonormal columns
  const MatrixXd w1 = net.weight(PolicyNet<double>::kActor1);
  CHECK((w1.transpose() * w1 - MatrixXd::Identity(12, 12)).norm() < 1e-10);
  const MatrixXd w2 = net.weight(PolicyNet<double>::kActor2);
  CHECK((w2 * w2.transpose() - MatrixXd::Identity(16, 16)).norm() < 1e-10);
  // actor output is scaled down to 0.01
  const MatrixXd wo = net.weight(PolicyNet<double>::kActorOut);
  CHECK((wo * wo.transpose() - 1e-4 * MatrixXd::Identity(4, 4)).norm() < 1e-12);
  CHECK(net.bias(PolicyNet<double>::kCritic1).isZero());
}

TEST_CASE("softmax of the actor is a probability simplex") {
  PolicyNet<double> net(9, 3, 16);
  Rng rng(1);
  net.initialize(rng);
  net.params() += random_vector(rng, net.num_params(), -0.5, 0.5);
  MatrixXd states(9, 20);
  for (int j = 0; j < 20; ++j) states.col(j) = random_vector(rng, 9, 0, 1);
  const MatrixXd logp = log_softmax(net.forward(states).logits);
  for (int j = 0; j < 20; ++j) {
    CHECK(std::abs(logp.col(j).array().exp().sum() - 1.0) < 1e-9);
    CHECK(logp.col(j).maxCoeff() <= 0.0);
  }
  // large logits stay finite
  MatrixXd big(3, 1);
  big << 1000.0, 0.0, -1000.0;
  CHECK(log_softmax(big).allFinite());
}

TEST_CASE("float and double networks agree") {
  PolicyNet<double> d(6, 2, 8);
  Rng rng(2);
  d.initialize(rng);
  PolicyNet<float> f(6, 2, 8);
  f.params() = d.params().cast<float>();
  const VectorXd s = random_vector(rng, 6, 0, 1);
  const auto ad = d.forward(s);
  const auto af = f.forward(s.cast<float>());
  CHECK((ad.logits.cast<float>() - af.logits).norm() < 1e-5f);
  CHECK(std::abs(float(ad.values(0)) - af.values(0)) < 1e-5f);
}

TEST_CASE("backprop matches central differences") {
  PpoHyper hyper;
  hyper.entropy_coef = 0.05;  // make the entropy path visible
  double worst = 0.0;
  for (int point = 0; point < 10; ++point) {
    PolicyNet<double> net(12, 4, 16);
    Rng rng(100 + point);
    net.initialize(rng);
    net.params() += random_vector(rng, net.num_params(), -0.3, 0.3);
    const PpoBatch batch = random_batch(net, rng, 8);

    VectorXd grad;
    ppo_loss(net, batch, hyper, &grad);
    const double h = 1e-5;
    for (Eigen::Index i = 0; i < net.num_params(); ++i) {
      const double keep = net.params()[i];
      net.params()[i] = keep + h;
      const double up = ppo_loss(net, batch, hyper).loss;
      net.params()[i] = keep - h;
      const double down = ppo_loss(net, batch, hyper).loss;
      net.params()[i] = keep;
      const double numeric = (up - down) / (2 * h);
      const double denom = std::max({std::abs(numeric), std::abs(grad[i]), 1e-6});
      worst = std::max(worst, std::abs(numeric - grad[i]) / denom);
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("GAE: lambda = 1 and gamma = 1 telescopes") {
  Rng rng(3);
  const VectorXd r = random_vector(rng, 7, -3, 3);
  const VectorXd v = random_vector(rng, 7, -3, 3);
  const double terminal = 2.5;
  const auto est = compute_gae(r, v, terminal, 1.0, 1.0);
  for (int t = 0; t < 7; ++t) {
    const double tail = r.tail(7 - t).sum() + terminal;
    CHECK(std::abs(est.advantages[t] - (tail - v[t])) < 1e-9);
    CHECK(std::abs(est.returns[t] - tail) < 1e-9);
  }
}

TEST_CASE("GAE: lambda = 0 gives one-step TD errors") {
  Rng rng(4);
  const VectorXd r = random_vector(rng, 6, -3, 3);
  const VectorXd v = random_vector(rng, 6, -3, 3);
  const double gamma = 0.9, terminal = -1.25;
  const auto est = compute_gae(r, v, terminal, gamma, 0.0);
  for (int t = 0; t < 6; ++t) {
    const double next = t + 1 < 6 ? v[t + 1] : terminal;
    CHECK(std::abs(est.advantages[t] - (r[t] + gamma * next - v[t])) < 1e-9);
  }
}

TEST_CASE("GAE: matches a double-loop sum") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5;
    const VectorXd r = random_vector(rng, n, -3, 3);
    const VectorXd v = random_vector(rng, n, -3, 3);
    const double terminal = 4 * uniform_unit(rng) - 2;
    const double gamma = 0.5 + 0.5 * uniform_unit(rng);
    const double lambda = uniform_unit(rng);
    const auto est = compute_gae(r, v, terminal, gamma, lambda);
    for (int t = 0; t < n; ++t) {
      double a = 0.0;
      for (int l = 0; t + l < n; ++l) {
        const int i = t + l;
        const double next = i + 1 < n ? v[i + 1] : terminal;
        a += std::pow(gamma * lambda, l) * (r[i] + gamma * next - v[i]);
      }
      CHECK(std::abs(est.advantages[t] - a) < 1e-12);
    }
  }
}

TEST_CASE("GAE: returns at lambda = 1 reconstruct the discounted value") {
  Rng rng(6);
  const int n = 200;
  const VectorXd r = random_vector(rng, n, -5, 5);
  const VectorXd v = random_vector(rng, n, -5, 5);
  const double gamma = 0.99, terminal = 37.0;
  const auto est = compute_gae(r, v, terminal, gamma, 1.0);
  for (int t = 0; t < n; ++t) {
    double direct = std::pow(gamma, n - t) * terminal;
    for (int i = t; i < n; ++i) direct += std::pow(gamma, i - t) * r[i];
    CHECK(std::abs(est.returns[t] - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("GAE: errors and float scalars") {
  CHECK_THROWS_AS(compute_gae(VectorXd(0), VectorXd(0), 0.0, 0.9, 0.9), InvalidArgument);
  CHECK_THROWS_AS(compute_gae(VectorXd::Ones(3), VectorXd::Ones(2), 0.0, 0.9, 0.9),
                  InvalidArgument);
  Eigen::VectorXf r = Eigen::VectorXf::Ones(3), v = Eigen::VectorXf::Zero(3);
  const auto est = compute_gae(r, v, 0.0f, 1.0f, 1.0f);
  CHECK(est.advantages[0] == doctest::Approx(3.0f));
}

TEST_CASE("advantage normalization") {
  const VectorXd a = (VectorXd(4) << 1, 2, 3, 4).finished();
  const VectorXd n = normalize_advantages(a);
  CHECK(std::abs(n.mean()) < 1e-12);
  CHECK(std::abs(std::sqrt(n.squaredNorm() / 4) - 1.0) < 1e-6);
  CHECK(normalize_advantages(VectorXd::Constant(5, 3.0)).isZero());
  CHECK(normalize_advantages(VectorXd::Constant(1, 3.0))[0] == 3.0);
}

TEST_CASE("PPO: first pass sees ratio 1 and surrogate = mean advantage") {
  PolicyNet<double> net(12, 4, 16);
  Rng rng(7);
  net.initialize(rng);
  PpoBatch batch = random_batch(net, rng, 32);
  const MatrixXd logp = log_softmax(net.forward(batch.states).logits);
  for (int j = 0; j < 32; ++j) batch.old_log_probs[j] = logp(batch.actions[j], j);

  PpoHyper hyper;
  hyper.minibatch_size = 32;
  const LossTerms t = ppo_loss(net, batch, hyper);
  CHECK(t.max_ratio_dev < 1e-9);
  CHECK(std::abs(t.surrogate - batch.advantages.mean()) < 1e-9);

  Adam adam(net.num_params());
  Rng shuffle(0);
  const PpoStats stats = ppo_update(net, adam, batch, hyper, shuffle);
  CHECK_FALSE(stats.aborted);
  CHECK(stats.updates == hyper.ppo_epochs);
  CHECK(stats.first_max_ratio_dev < 1e-9);
  CHECK(std::abs(stats.first_surrogate - stats.first_mean_advantage) < 1e-9);
}

TEST_CASE("PPO: zero advantages, exact values and no entropy leave parameters") {
  PolicyNet<double> net(12, 4, 16);
  Rng rng(8);
  net.initialize(rng);
  PpoBatch batch = random_batch(net, rng, 20);
  batch.advantages.setZero();
  batch.returns = net.forward(batch.states).values.transpose();
  PpoHyper hyper;
  hyper.entropy_coef = 0.0;
  hyper.minibatch_size = 7;
  const VectorXd before = net.params();
  Adam adam;
  Rng shuffle(1);
  ppo_update(net, adam, batch, hyper, shuffle);
  CHECK(net.params() == before);

  // the entropy bonus alone does move them
  hyper.entropy_coef = 0.5;
  ppo_update(net, adam, batch, hyper, shuffle);
  CHECK(net.params() != before);
}

TEST_CASE("PPO: non-finite loss rolls back") {
  PolicyNet<double> net(12, 4, 16);
  Rng rng(9);
  net.initialize(rng);
  PpoBatch batch = random_batch(net, rng, 16);
  batch.returns[3] = std::numeric_limits<double>::infinity();
  const VectorXd before = net.params();
  Adam adam(net.num_params());
  Rng shuffle(2);
  const PpoStats stats = ppo_update(net, adam, batch, PpoHyper{}, shuffle);
  CHECK(stats.aborted);
  CHECK(stats.message.find("rolled back") != std::string::npos);
  CHECK(net.params() == before);
}

TEST_CASE("PPO learns a contextual bandit") {
  // two contexts, the right action is the context index
  PolicyNet<double> net(2, 2, 16);
  Rng rng(10);
  net.initialize(rng);
  Adam adam(net.num_params());
  PpoHyper hyper;
  hyper.learning_rate = 3e-3;
  hyper.minibatch_size = 32;
  double mean_reward = 0.0;
  for (int round = 0; round < 60; ++round) {
    PpoBatch b;
    const int n = 64;
    b.states = MatrixXd::Zero(2, n);
    b.actions.resize(n);
    b.old_log_probs.resize(n);
    b.advantages.resize(n);
    b.returns.resize(n);
    const auto act_before = [&] {
      for (int j = 0; j < n; ++j) b.states(j % 2, j) = 1.0;
      return net.forward(b.states);
    }();
    const MatrixXd logp = log_softmax(act_before.logits);
    mean_reward = 0.0;
    for (int j = 0; j < n; ++j) {
      const double u = uniform_unit(rng);
      const int a = u < std::exp(logp(0, j)) ? 0 : 1;
      const double reward = a == j % 2 ? 1.0 : 0.0;
      mean_reward += reward / n;
      b.actions[j] = a;
      b.old_log_probs[j] = logp(a, j);
      b.returns[j] = reward;
      b.advantages[j] = reward - act_before.values(j);
    }
    ppo_update(net, adam, b, hyper, rng);
  }
  CHECK(mean_reward > 0.95);
}
