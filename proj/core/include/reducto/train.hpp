#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "reducto/features.hpp"
#include "reducto/params.hpp"
#include "reducto/quality_store.hpp"

namespace reducto::learn {

struct ValueExample {
  FeatureVector features{};
  double target = 0.0;
  int variables = 0;
};

struct PriorExample {
  std::string reduction;
  std::vector<FeatureVector> moves;
  /// Visit share of each move; sums to 1.
  std::vector<double> target;
  int variables = 0;
};

struct TrainingSet {
  std::vector<ValueExample> values;
  std::vector<PriorExample> priors;

  std::size_t size() const noexcept { return values.size() + priors.size(); }
  bool empty() const noexcept { return size() == 0; }
};

/// Value targets are the accumulated values; prior targets the visit
/// shares of distributions with at least two candidates and positive samples.
TrainingSet training_set(const QualityStore& store);

/// Same shapes as the parameter store's weight vectors.
struct Gradient {
  std::vector<double> value;
  std::map<std::string, std::vector<double>> prior;
};

/// Mean squared value error plus mean prior cross-entropy; the gradient is
/// taken with respect to every weight, prior heads missing from theta
/// counted as zero.
double loss(const ParamStore& theta, const TrainingSet& set);
double loss_and_gradient(const ParamStore& theta, const TrainingSet& set, Gradient& grad);

struct TrainOptions {
  int epochs = 20;
  double learning_rate = 0.05;
  bool curriculum = false;
};

struct TrainReport {
  ParamStore theta;
  /// Loss before training followed by the loss after each epoch.
  std::vector<double> losses;
  std::size_t examples = 0;
  /// Epochs discarded because they raised the loss (each halves the rate).
  std::size_t rejected_epochs = 0;
};

/// Non-finite loss during training; theta is left as it was.
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-example gradient steps. Examples are visited in store order, or by
/// ascending variable count with curriculum. An epoch that raises the loss on
/// the whole set is undone and the rate halved, so the loss never increases.
TrainReport train(const ParamStore& theta, const TrainingSet& set, const TrainOptions& options = {});
TrainReport train(const ParamStore& theta, const QualityStore& store, const TrainOptions& options = {});

}  // namespace reducto::learn
