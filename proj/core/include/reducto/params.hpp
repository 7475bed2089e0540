#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reducto/cnf.hpp"
#include "reducto/features.hpp"
#include "reducto/search.hpp"

namespace reducto::learn {

inline constexpr int kParamFormatVersion = 1;

struct TrainingStats {
  std::uint64_t examples_seen = 0;
  double last_loss = 0.0;

  bool operator==(const TrainingStats&) const = default;
};

/// The learnable parameters. Weight vectors hold one weight per feature
/// followed by a bias.
struct ParamStore {
  int version = kParamFormatVersion;
  std::vector<std::string> feature_spec;
  std::vector<double> value_weights;
  /// One head per reduction id; a missing head means uniform priors.
  std::map<std::string, std::vector<double>> prior_weights;
  TrainingStats training_stats;

  bool operator==(const ParamStore&) const = default;
};

/// Unknown version or a feature layout this build does not compute.
class ParamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All-zero weights: value 0.5 everywhere, uniform priors. The seed is
/// accepted for interface stability; zero initialization does not use it.
ParamStore init_params(std::uint64_t seed = 0);
void validate(const ParamStore& theta);

std::string emit_params(const ParamStore& theta);
ParamStore parse_params(std::string_view text);
ParamStore load_params(const std::filesystem::path& path);
/// Atomic replace (temporary file + rename).
void save_params(const std::filesystem::path& path, const ParamStore& theta);

double sigmoid(double z);
double linear(std::span<const double> weights, const FeatureVector& f);
double value_of(const ParamStore& theta, const FeatureVector& f);
/// Softmax of the reduction's head over the candidate moves' features.
std::vector<double> priors_of(const ParamStore& theta, std::string_view reduction, std::span<const FeatureVector> moves);

struct MoveGroup {
  std::string reduction;
  std::vector<sat::Formula> moves;
};

struct Evaluation {
  double value = 0.5;
  std::vector<std::vector<double>> priors;  // one vector per group
};

Evaluation evaluate(const ParamStore& theta, const sat::Formula& x, std::span<const MoveGroup> groups);

/// Search-facing adapter over a parameter store. Holds a reference; the
/// store must outlive the evaluator.
class LinearEvaluator final : public Evaluator<sat::Formula> {
 public:
  explicit LinearEvaluator(const ParamStore& theta);
  double value(const sat::Formula& x) const override;
  std::vector<double> priors(const sat::Formula& x, std::string_view reduction,
                             std::span<const sat::Formula> moves) const override;

 private:
  const ParamStore& theta_;
};

}  // namespace reducto::learn
