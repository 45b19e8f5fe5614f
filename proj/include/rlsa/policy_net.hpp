#pragma once

#include <Eigen/Core>
#include <Eigen/QR>

#include <cmath>
#include <string>
#include <vector>

#include "rlsa/model.hpp"

namespace rlsa {

// Actor-critic pair of two-hidden-layer tanh MLPs sharing one flat parameter
// vector. The actor maps an encoded state to one logit per free block; the
// critic maps the same input to a scalar state value.
//
// Batches are column-major: one sample per column.
template <typename Scalar_>
class PolicyNet {
 public:
  using Scalar = Scalar_;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using MatrixMap = Eigen::Map<Matrix>;
  using ConstMatrixMap = Eigen::Map<const Matrix>;
  using VectorMap = Eigen::Map<Vector>;
  using ConstVectorMap = Eigen::Map<const Vector>;

  struct Layer {
    std::string name;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    Eigen::Index weight_offset = 0;  // column-major rows x cols block
    Eigen::Index bias_offset = 0;    // rows entries
  };

  enum LayerIndex { kActor1, kActor2, kActorOut, kCritic1, kCritic2, kCriticOut };

  PolicyNet() = default;

  PolicyNet(int inputs, int actions, int hidden = 128)
      : inputs_(inputs), actions_(actions), hidden_(hidden) {
    const Eigen::Index shapes[6][2] = {{hidden, inputs}, {hidden, hidden},
                                       {actions, hidden}, {hidden, inputs},
                                       {hidden, hidden},  {1, hidden}};
    const char* names[6] = {"actor.hidden1",  "actor.hidden2",  "actor.out",
                            "critic.hidden1", "critic.hidden2", "critic.out"};
    Eigen::Index offset = 0;
    for (int i = 0; i < 6; ++i) {
      Layer l{names[i], shapes[i][0], shapes[i][1], offset, 0};
      offset += l.rows * l.cols;
      l.bias_offset = offset;
      offset += l.rows;
      layers_.push_back(l);
    }
    params_ = Vector::Zero(offset);
  }

  int inputs() const { return inputs_; }
  int actions() const { return actions_; }
  int hidden() const { return hidden_; }
  const std::vector<Layer>& layers() const { return layers_; }
  Eigen::Index num_params() const { return params_.size(); }

  Vector& params() { return params_; }
  const Vector& params() const { return params_; }

  MatrixMap weight(int layer) { return weight_view(params_, layer); }
  ConstMatrixMap weight(int layer) const { return weight_view(params_, layer); }
  VectorMap bias(int layer) { return bias_view(params_, layer); }
  ConstVectorMap bias(int layer) const { return bias_view(params_, layer); }

  MatrixMap weight_view(Vector& flat, int layer) const {
    const Layer& l = layers_[layer];
    return MatrixMap(flat.data() + l.weight_offset, l.rows, l.cols);
  }
  ConstMatrixMap weight_view(const Vector& flat, int layer) const {
    const Layer& l = layers_[layer];
    return ConstMatrixMap(flat.data() + l.weight_offset, l.rows, l.cols);
  }
  VectorMap bias_view(Vector& flat, int layer) const {
    const Layer& l = layers_[layer];
    return VectorMap(flat.data() + l.bias_offset, l.rows);
  }
  ConstVectorMap bias_view(const Vector& flat, int layer) const {
    const Layer& l = layers_[layer];
    return ConstVectorMap(flat.data() + l.bias_offset, l.rows);
  }

  // Orthogonal weights scaled by a per-layer gain (hidden 1.0, actor output
  // 0.01, critic output 1.0); zero biases.
  void initialize(Rng& rng) {
    const Scalar gains[6] = {1.0, 1.0, 0.01, 1.0, 1.0, 1.0};
    for (int i = 0; i < 6; ++i) {
      weight(i) = orthogonal(layers_[i].rows, layers_[i].cols, rng) * gains[i];
      bias(i).setZero();
    }
  }

  struct Activations {
    Matrix actor_h1, actor_h2, logits;
    Matrix critic_h1, critic_h2;
    RowVector values;
  };

  Activations forward(const Matrix& states) const {
    Activations a;
    a.actor_h1 = layer(kActor1, states).array().tanh();
    a.actor_h2 = layer(kActor2, a.actor_h1).array().tanh();
    a.logits = layer(kActorOut, a.actor_h2);
    a.critic_h1 = layer(kCritic1, states).array().tanh();
    a.critic_h2 = layer(kCritic2, a.critic_h1).array().tanh();
    a.values = layer(kCriticOut, a.critic_h2);
    return a;
  }

  // Gradient of a scalar loss with respect to all parameters, given the loss
  // gradient at the actor logits (actions x B) and critic values (1 x B).
  Vector backward(const Matrix& states, const Activations& a,
                  const Matrix& d_logits, const RowVector& d_values) const {
    Vector grad = Vector::Zero(params_.size());
    backprop_branch(grad, states, a.actor_h1, a.actor_h2, d_logits, kActor1);
    backprop_branch(grad, states, a.critic_h1, a.critic_h2, d_values, kCritic1);
    return grad;
  }

  static Matrix orthogonal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    const bool tall = rows >= cols;
    const Eigen::Index r = tall ? rows : cols;
    const Eigen::Index c = tall ? cols : rows;
    Matrix g(r, c);
    for (Eigen::Index j = 0; j < c; ++j) {
      for (Eigen::Index i = 0; i < r; ++i) g(i, j) = gaussian(rng);
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(r, c);
    const Matrix rr = qr.matrixQR().topRows(c).template triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < c; ++j) {
      if (rr(j, j) < Scalar(0)) q.col(j) *= Scalar(-1);
    }
    if (tall) return q;
    return q.transpose();
  }

 private:
  Matrix layer(int idx, const Matrix& in) const {
    return (weight(idx) * in).colwise() + bias(idx);
  }

  static Scalar gaussian(Rng& rng) {
    // Box-Muller on the portable uniform stream.
    const double u1 = 1.0 - uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    return static_cast<Scalar>(std::sqrt(-2.0 * std::log(u1)) *
                               std::cos(2.0 * 3.14159265358979323846 * u2));
  }

  template <typename DOut>
  void backprop_branch(Vector& grad, const Matrix& states, const Matrix& h1,
                       const Matrix& h2, const DOut& d_out, int first) const {
    const int l1 = first;
    const int l2 = first + 1;
    const int lo = first + 2;
    weight_view(grad, lo) = d_out * h2.transpose();
    bias_view(grad, lo) = d_out.rowwise().sum().transpose();
    const Matrix dz2 =
        ((weight(lo).transpose() * d_out).array() * (1 - h2.array().square())).matrix();
    weight_view(grad, l2) = dz2 * h1.transpose();
    bias_view(grad, l2) = dz2.rowwise().sum();
    const Matrix dz1 =
        ((weight(l2).transpose() * dz2).array() * (1 - h1.array().square())).matrix();
    weight_view(grad, l1) = dz1 * states.transpose();
    bias_view(grad, l1) = dz1.rowwise().sum();
  }

  int inputs_ = 0;
  int actions_ = 0;
  int hidden_ = 0;
  std::vector<Layer> layers_;
  Vector params_;
};

// Row-wise log-softmax over a (classes x batch) logit matrix.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
log_softmax(const Eigen::MatrixBase<Derived>& logits) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = logits;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const Scalar m = out.col(j).maxCoeff();
    const Scalar lse = m + std::log((out.col(j).array() - m).exp().sum());
    out.col(j).array() -= lse;
  }
  return out;
}

}  // namespace rlsa
