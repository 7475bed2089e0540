#include "reducto/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace reducto::learn {

namespace {

constexpr std::size_t kWeights = kFeatureCount + 1;

int variable_count(const sat::Formula& phi) { return static_cast<int>(phi.variables().size()); }

std::vector<double> softmax(const std::vector<double>* head, const std::vector<FeatureVector>& moves) {
  std::vector<double> p(moves.size(), 1.0 / static_cast<double>(moves.size()));
  if (head == nullptr) return p;
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < moves.size(); ++i) top = std::max(top, p[i] = linear(*head, moves[i]));
  double sum = 0.0;
  for (auto& v : p) sum += (v = std::exp(v - top));
  for (auto& v : p) v /= sum;
  return p;
}

const std::vector<double>* head_of(const ParamStore& theta, const std::string& reduction) {
  const auto it = theta.prior_weights.find(reduction);
  return it == theta.prior_weights.end() ? nullptr : &it->second;
}

// Loss of one example; adds scale * d(loss)/d(weights) into grad when given.
double value_term(const ParamStore& theta, const ValueExample& e, std::vector<double>* grad, double scale) {
  const double v = sigmoid(linear(theta.value_weights, e.features));
  const double err = v - e.target;
  if (grad) {
    const double d = scale * 2.0 * err * v * (1.0 - v);
    for (std::size_t i = 0; i < kFeatureCount; ++i) (*grad)[i] += d * e.features[i];
    (*grad)[kFeatureCount] += d;
  }
  return err * err;
}

double prior_term(const ParamStore& theta, const PriorExample& e, std::vector<double>* grad, double scale) {
  const auto p = softmax(head_of(theta, e.reduction), e.moves);
  double l = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (e.target[i] > 0.0) l -= e.target[i] * std::log(p[i]);
  if (grad) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double d = scale * (p[i] - e.target[i]);
      for (std::size_t k = 0; k < kFeatureCount; ++k) (*grad)[k] += d * e.moves[i][k];
      (*grad)[kFeatureCount] += d;
    }
  }
  return l;
}

std::vector<double>& head_for_update(ParamStore& theta, const std::string& reduction) {
  auto [it, inserted] = theta.prior_weights.try_emplace(reduction);
  if (inserted) it->second.assign(kWeights, 0.0);
  return it->second;
}

void step(std::vector<double>& w, const std::vector<double>& g, double lr) {
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * g[i];
}

}  // namespace

TrainingSet training_set(const QualityStore& store) {
  TrainingSet set;
  for (const auto& [key, v] : store.values)
    set.values.push_back(ValueExample{features(v.instance), v.value, variable_count(v.instance)});
  for (const auto& [key, d] : store.distributions) {
    if (d.samples == 0 || d.counts.size() < 2) continue;
    PriorExample e{d.reduction, {}, {}, variable_count(d.instance)};
    std::uint64_t total = 0;
    for (const auto& [m, c] : d.counts) total += c;
    if (total == 0) continue;
    for (const auto& [m, c] : d.counts) {
      e.moves.push_back(features(d.moves.at(m)));
      e.target.push_back(static_cast<double>(c) / static_cast<double>(total));
    }
    set.priors.push_back(std::move(e));
  }
  return set;
}

double loss(const ParamStore& theta, const TrainingSet& set) {
  double lv = 0.0;
  for (const auto& e : set.values) lv += value_term(theta, e, nullptr, 0.0);
  double lp = 0.0;
  for (const auto& e : set.priors) lp += prior_term(theta, e, nullptr, 0.0);
  double total = 0.0;
  if (!set.values.empty()) total += lv / static_cast<double>(set.values.size());
  if (!set.priors.empty()) total += lp / static_cast<double>(set.priors.size());
  return total;
}

double loss_and_gradient(const ParamStore& theta, const TrainingSet& set, Gradient& grad) {
  grad.value.assign(kWeights, 0.0);
  grad.prior.clear();
  for (const auto& [id, w] : theta.prior_weights) grad.prior[id].assign(kWeights, 0.0);
  for (const auto& e : set.priors) grad.prior.try_emplace(e.reduction, kWeights, 0.0);

  double total = 0.0;
  if (!set.values.empty()) {
    const double scale = 1.0 / static_cast<double>(set.values.size());
    double lv = 0.0;
    for (const auto& e : set.values) lv += value_term(theta, e, &grad.value, scale);
    total += lv * scale;
  }
  if (!set.priors.empty()) {
    const double scale = 1.0 / static_cast<double>(set.priors.size());
    double lp = 0.0;
    for (const auto& e : set.priors) lp += prior_term(theta, e, &grad.prior[e.reduction], scale);
    total += lp * scale;
  }
  return total;
}

TrainReport train(const ParamStore& theta, const TrainingSet& set, const TrainOptions& options) {
  validate(theta);
  if (options.epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (!(options.learning_rate > 0.0) || !std::isfinite(options.learning_rate))
    throw std::invalid_argument("learning rate must be positive");

  TrainReport report{theta, {}, set.size(), 0};
  const double initial = loss(theta, set);
  if (!std::isfinite(initial)) throw TrainingError("initial training loss is not finite");
  report.losses.push_back(initial);
  if (options.epochs == 0 || set.empty()) return report;

  // Example schedule: value examples are indexed [0, V), prior examples [V, V + P).
  const std::size_t nv = set.values.size();
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (options.curriculum) {
    auto vars = [&](std::size_t i) { return i < nv ? set.values[i].variables : set.priors[i - nv].variables; };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vars(a) < vars(b); });
  }

  ParamStore current = theta;
  double current_loss = initial;
  double lr = options.learning_rate;
  std::vector<double> g(kWeights);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    ParamStore next = current;
    for (std::size_t i : order) {
      std::fill(g.begin(), g.end(), 0.0);
      if (i < nv) {
        value_term(next, set.values[i], &g, 1.0);
        step(next.value_weights, g, lr);
      } else {
        const auto& e = set.priors[i - nv];
        prior_term(next, e, &g, 1.0);
        step(head_for_update(next, e.reduction), g, lr);
      }
    }
    const double next_loss = loss(next, set);
    if (!std::isfinite(next_loss)) {
      std::ostringstream msg;
      msg << "training loss became non-finite in epoch " << epoch + 1 << " (learning rate " << lr << ", previous loss "
          << current_loss << ")";
      throw TrainingError(msg.str());
    }
    if (next_loss > current_loss) {
      ++report.rejected_epochs;
      lr *= 0.5;
    } else {
      current = std::move(next);
      current_loss = next_loss;
      current.training_stats.examples_seen += set.size();
    }
    report.losses.push_back(current_loss);
  }
  current.training_stats.last_loss = current_loss;
  report.theta = std::move(current);
  return report;
}

TrainReport train(const ParamStore& theta, const QualityStore& store, const TrainOptions& options) {
  return train(theta, training_set(store), options);
}

}  // namespace reducto::learn
