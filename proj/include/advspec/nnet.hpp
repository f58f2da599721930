// Dense feedforward classifier: ReLU hidden layers, 2-way softmax output,
// cross-entropy loss, analytic backprop, plain minibatch gradient descent.
// Eigen supplies the matrix arithmetic; everything else is spelled out here.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace advspec {

struct Hyperparams {
  double learning_rate = 0.1;
  int hidden_layers = 3;
  int neurons_per_layer = 100;
  int batch_size = 100;
  int training_steps = 1000;
  double tau = 0.5;  // decision threshold on the class-1 score
};

inline void validate_hyperparams(const Hyperparams& h) {
  if (!(h.learning_rate >= 0.0))
    throw std::invalid_argument("hyperparams: learning_rate must be >= 0, got " +
                                std::to_string(h.learning_rate));
  if (h.hidden_layers < 1 || h.neurons_per_layer < 1)
    throw std::invalid_argument("hyperparams: hidden layer shape must be positive");
  if (h.batch_size < 1)
    throw std::invalid_argument("hyperparams: batch_size must be positive");
  if (h.training_steps < 1)
    throw std::invalid_argument("hyperparams: training_steps must be positive");
  if (!(h.tau > 0.0 && h.tau < 1.0))
    throw std::invalid_argument("hyperparams: tau must lie in (0,1), got " +
                                std::to_string(h.tau));
}

// Feature windows with binary labels, stored column-major so batches map
// straight into Eigen.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(int n_new) : dim_(n_new) {
    if (n_new < 1) throw std::invalid_argument("Dataset: n_new must be positive");
  }

  int n_new() const { return dim_; }
  int size() const { return int(labels_.size()); }
  bool empty() const { return labels_.empty(); }

  void add(std::span<const double> features, int label) {
    if (int(features.size()) != dim_)
      throw std::invalid_argument("Dataset::add: feature length " +
                                  std::to_string(features.size()) + ", expected " +
                                  std::to_string(dim_));
    if (label != 0 && label != 1)
      throw std::invalid_argument("Dataset::add: label must be 0 or 1, got " +
                                  std::to_string(label));
    for (double v : features)
      if (!(v >= 0.0))
        throw std::invalid_argument("Dataset::add: sensed power must be nonnegative");
    store_.insert(store_.end(), features.begin(), features.end());
    labels_.push_back(label);
  }

  // dim x size view, one sample per column.
  Eigen::Map<const Eigen::MatrixXd> features() const {
    return {store_.data(), dim_, size()};
  }
  Eigen::Map<const Eigen::VectorXd> feature_col(int i) const {
    return {store_.data() + std::size_t(i) * dim_, dim_};
  }
  int label(int i) const { return labels_[std::size_t(i)]; }
  const std::vector<int>& labels() const { return labels_; }

  void append(const Dataset& other) {
    if (other.dim_ != dim_)
      throw std::invalid_argument("Dataset::append: n_new mismatch");
    store_.insert(store_.end(), other.store_.begin(), other.store_.end());
    labels_.insert(labels_.end(), other.labels_.begin(), other.labels_.end());
  }

 private:
  int dim_ = 0;
  std::vector<double> store_;
  std::vector<int> labels_;
};

struct DenseNet {
  std::vector<int> layer_sizes;            // input, hidden..., 2
  std::vector<Eigen::MatrixXd> weights;    // [k]: layer_sizes[k+1] x layer_sizes[k]
  std::vector<Eigen::VectorXd> biases;
};

inline std::vector<int> layer_sizes_for(int input_dim, const Hyperparams& h) {
  std::vector<int> sizes;
  sizes.push_back(input_dim);
  for (int i = 0; i < h.hidden_layers; ++i) sizes.push_back(h.neurons_per_layer);
  sizes.push_back(2);
  return sizes;
}

// Glorot-uniform weights, zero biases. Draw order is fixed (layer by layer,
// row-major within a layer) so results are seed-reproducible.
inline DenseNet init_network(const std::vector<int>& layer_sizes, Rng& rng) {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("init_network: need at least input and output layers");
  for (int s : layer_sizes)
    if (s < 1) throw std::invalid_argument("init_network: layer sizes must be positive");
  if (layer_sizes.back() != 2)
    throw std::invalid_argument("init_network: output layer must have 2 units, got " +
                                std::to_string(layer_sizes.back()));
  DenseNet net;
  net.layer_sizes = layer_sizes;
  for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) {
    int fan_in = layer_sizes[k];
    int fan_out = layer_sizes[k + 1];
    double r = std::sqrt(6.0 / double(fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i)
      for (int j = 0; j < fan_in; ++j) w(i, j) = rng.uniform(-r, r);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return net;
}

namespace detail {

// Column-wise stable softmax, in place. Probabilities are floored at 1e-300
// so finite logits never produce an exact zero.
inline void softmax_columns(Eigen::MatrixXd& z) {
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    double m = z.col(j).maxCoeff();
    z.col(j) = (z.col(j).array() - m).exp();
    z.col(j) /= z.col(j).sum();
    z.col(j) = z.col(j).cwiseMax(1e-300);
  }
}

// Forward pass over a batch. activations[0] is the input; activations[k+1]
// holds layer k's output (ReLU, or softmax for the last layer).
inline void forward_batch(const DenseNet& net, const Eigen::Ref<const Eigen::MatrixXd>& x,
                          std::vector<Eigen::MatrixXd>& activations) {
  if (x.rows() != net.layer_sizes.front())
    throw std::invalid_argument("forward: feature length " + std::to_string(x.rows()) +
                                ", expected " + std::to_string(net.layer_sizes.front()));
  const std::size_t layers = net.weights.size();
  activations.resize(layers + 1);
  activations[0] = x;
  for (std::size_t k = 0; k < layers; ++k) {
    Eigen::MatrixXd& out = activations[k + 1];
    out.noalias() = net.weights[k] * activations[k];
    out.colwise() += net.biases[k];
    if (k + 1 < layers)
      out = out.cwiseMax(0.0);
    else
      softmax_columns(out);
  }
}

}  // namespace detail

// Class-probability vector (length 2) for one sample.
inline Eigen::VectorXd forward(const DenseNet& net, const Eigen::Ref<const Eigen::VectorXd>& features) {
  std::vector<Eigen::MatrixXd> acts;
  detail::forward_batch(net, features, acts);
  return acts.back().col(0);
}

// P(class 1) per sample column.
inline Eigen::VectorXd scores(const DenseNet& net, const Eigen::Ref<const Eigen::MatrixXd>& x) {
  std::vector<Eigen::MatrixXd> acts;
  detail::forward_batch(net, x, acts);
  return acts.back().row(1).transpose();
}

struct Classification {
  int label;
  double score;  // P(class 1)
};

// Label 0 iff the score does not exceed tau.
inline Classification classify(const DenseNet& net, const Eigen::Ref<const Eigen::VectorXd>& features,
                               double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("classify: tau must lie in (0,1)");
  double s = forward(net, features)(1);
  return {s > tau ? 1 : 0, s};
}

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

namespace detail {

inline double loss_and_gradient_impl(const DenseNet& net,
                                     const Eigen::Ref<const Eigen::MatrixXd>& x,
                                     std::span<const int> labels, Gradients* grads,
                                     std::vector<Eigen::MatrixXd>& acts) {
  const Eigen::Index batch = x.cols();
  if (batch == 0) throw std::invalid_argument("loss_and_gradient: empty batch");
  forward_batch(net, x, acts);

  const Eigen::MatrixXd& probs = acts.back();
  double loss = 0.0;
  for (Eigen::Index j = 0; j < batch; ++j) {
    int y = labels[std::size_t(j)];
    if (y != 0 && y != 1)
      throw std::invalid_argument("loss_and_gradient: label must be 0 or 1, got " +
                                  std::to_string(y));
    loss -= std::log(probs(y, j));
  }
  loss /= double(batch);
  if (!grads) return loss;

  const std::size_t layers = net.weights.size();
  grads->weights.resize(layers);
  grads->biases.resize(layers);

  // delta starts as d(loss)/d(logits) = (p - onehot)/batch and is pulled
  // backwards through each layer.
  Eigen::MatrixXd delta = probs;
  for (Eigen::Index j = 0; j < batch; ++j) delta(labels[std::size_t(j)], j) -= 1.0;
  delta /= double(batch);

  for (std::size_t k = layers; k-- > 0;) {
    grads->weights[k].noalias() = delta * acts[k].transpose();
    grads->biases[k] = delta.rowwise().sum();
    if (k > 0) {
      Eigen::MatrixXd back;
      back.noalias() = net.weights[k].transpose() * delta;
      // ReLU derivative: 1 where the activation survived, 0 elsewhere (and at 0).
      delta = back.cwiseProduct((acts[k].array() > 0.0).cast<double>().matrix());
    }
  }
  return loss;
}

}  // namespace detail

// Mean cross-entropy over the batch plus exact analytic gradients.
inline double loss_and_gradient(const DenseNet& net, const Dataset& batch, Gradients& grads) {
  std::vector<Eigen::MatrixXd> acts;
  return detail::loss_and_gradient_impl(net, batch.features(), batch.labels(), &grads, acts);
}

inline double loss(const DenseNet& net, const Dataset& batch) {
  std::vector<Eigen::MatrixXd> acts;
  return detail::loss_and_gradient_impl(net, batch.features(), batch.labels(), nullptr, acts);
}

// Minibatch gradient descent, batches drawn uniformly with replacement.
// Returns the per-step minibatch loss (measured before each update).
inline std::vector<double> train(DenseNet& net, const Dataset& data, const Hyperparams& h,
                                 Rng& rng) {
  validate_hyperparams(h);
  if (data.empty()) throw std::invalid_argument("train: dataset is empty");
  if (h.batch_size > data.size())
    throw std::invalid_argument("train: batch_size " + std::to_string(h.batch_size) +
                                " exceeds dataset size " + std::to_string(data.size()));
  if (data.n_new() != net.layer_sizes.front())
    throw std::invalid_argument("train: feature length " + std::to_string(data.n_new()) +
                                ", expected " + std::to_string(net.layer_sizes.front()));

  const int batch = h.batch_size;
  Eigen::MatrixXd x(data.n_new(), batch);
  std::vector<int> y(static_cast<std::size_t>(batch));
  std::vector<Eigen::MatrixXd> acts;
  Gradients grads;
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(h.training_steps));

  for (int step = 0; step < h.training_steps; ++step) {
    for (int j = 0; j < batch; ++j) {
      int i = int(rng.index(std::size_t(data.size())));
      x.col(j) = data.feature_col(i);
      y[std::size_t(j)] = data.label(i);
    }
    trace.push_back(detail::loss_and_gradient_impl(net, x, y, &grads, acts));
    for (std::size_t k = 0; k < net.weights.size(); ++k) {
      net.weights[k].noalias() -= h.learning_rate * grads.weights[k];
      net.biases[k].noalias() -= h.learning_rate * grads.biases[k];
    }
  }
  return trace;
}

// Conditional error rates at threshold tau: rate of predicting 1 on label-0
// samples and of predicting 0 on label-1 samples.
struct ErrorRates {
  double on_label0;  // P(predicted 1 | label 0)
  double on_label1;  // P(predicted 0 | label 1)
  double worst() const { return on_label0 > on_label1 ? on_label0 : on_label1; }
};

inline ErrorRates error_rates(const DenseNet& net, const Dataset& data, double tau) {
  int n0 = 0, n1 = 0, wrong0 = 0, wrong1 = 0;
  Eigen::VectorXd s = scores(net, data.features());
  for (int i = 0; i < data.size(); ++i) {
    int predicted = s(i) > tau ? 1 : 0;
    if (data.label(i) == 0) {
      ++n0;
      wrong0 += predicted;
    } else {
      ++n1;
      wrong1 += 1 - predicted;
    }
  }
  if (n0 == 0 || n1 == 0)
    throw std::invalid_argument("error_rates: dataset must contain both labels");
  return {double(wrong0) / double(n0), double(wrong1) / double(n1)};
}

// Validation split: the last `fraction` of each class's samples (in arrival
// order) go to validation, so both classes stay represented even when one
// class bunches up in long runs. A single-sample class stays in training.
inline std::pair<Dataset, Dataset> split_tail(const Dataset& d, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("split_tail: fraction must lie in (0,1)");
  std::array<std::vector<int>, 2> by_class;
  for (int i = 0; i < d.size(); ++i) by_class[static_cast<std::size_t>(d.label(i))].push_back(i);
  std::vector<char> in_tail(static_cast<std::size_t>(d.size()), 0);
  for (const auto& idxs : by_class) {
    const int n = static_cast<int>(idxs.size());
    if (n < 2) continue;
    const int cut = std::clamp(static_cast<int>(double(n) * (1.0 - fraction)), 1, n - 1);
    for (int k = cut; k < n; ++k) in_tail[static_cast<std::size_t>(idxs[static_cast<std::size_t>(k)])] = 1;
  }
  Dataset head(d.n_new()), tail(d.n_new());
  for (int i = 0; i < d.size(); ++i) {
    const auto col = d.feature_col(i);
    std::vector<double> f(col.data(), col.data() + col.size());
    (in_tail[static_cast<std::size_t>(i)] ? tail : head).add(f, d.label(i));
  }
  return {std::move(head), std::move(tail)};
}

struct HyperSearchResult {
  Hyperparams best;
  DenseNet net;
  ErrorRates validation_errors;
};

// Trains one net per candidate and keeps the one minimizing the worse of the
// two conditional validation error rates. Ties keep the earliest candidate.
// Candidates consume the rng sequentially in list order.
inline HyperSearchResult hyper_search(const std::vector<Hyperparams>& candidates,
                                      const Dataset& train_set, const Dataset& validation,
                                      Rng& rng) {
  if (candidates.empty())
    throw std::invalid_argument("hyper_search: candidate list is empty");
  bool best_set = false;
  HyperSearchResult best;
  double best_worst = 0.0;
  for (const Hyperparams& h : candidates) {
    DenseNet net = init_network(layer_sizes_for(train_set.n_new(), h), rng);
    train(net, train_set, h, rng);
    ErrorRates e = error_rates(net, validation, h.tau);  // throws if a class is missing
    if (!best_set || e.worst() < best_worst) {
      best_set = true;
      best_worst = e.worst();
      best = {h, std::move(net), e};
    }
  }
  return best;
}

inline std::vector<Hyperparams> default_hyper_grid(const Hyperparams& base = {}) {
  std::vector<Hyperparams> grid;
  for (double lr : {0.1, 0.03, 0.01}) {
    Hyperparams h = base;
    h.learning_rate = lr;
    grid.push_back(h);
  }
  return grid;
}

}  // namespace advspec
