#include "reducto/params.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "reducto/file_io.hpp"

namespace reducto::learn {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kWeights = kFeatureCount + 1;

std::vector<std::string> default_spec() {
  std::vector<std::string> spec;
  for (auto name : feature_names()) spec.emplace_back(name);
  return spec;
}

}  // namespace

ParamStore init_params(std::uint64_t) {
  ParamStore theta;
  theta.feature_spec = default_spec();
  theta.value_weights.assign(kWeights, 0.0);
  return theta;
}

void validate(const ParamStore& theta) {
  if (theta.version != kParamFormatVersion)
    throw ParamError("unsupported parameter format version " + std::to_string(theta.version));
  if (theta.feature_spec != default_spec()) throw ParamError("parameter feature layout does not match this build");
  if (theta.value_weights.size() != kWeights) throw ParamError("value head has the wrong dimension");
  for (const auto& [id, w] : theta.prior_weights)
    if (w.size() != kWeights) throw ParamError("prior head '" + id + "' has the wrong dimension");
}

std::string emit_params(const ParamStore& theta) {
  json doc;
  doc["version"] = theta.version;
  doc["feature_spec"] = theta.feature_spec;
  doc["value_weights"] = theta.value_weights;
  json heads = json::object();
  for (const auto& [id, w] : theta.prior_weights) heads[id] = w;
  doc["prior_weights"] = heads;
  doc["training_stats"] = {{"examples_seen", theta.training_stats.examples_seen},
                           {"last_loss", theta.training_stats.last_loss}};
  return doc.dump(2) + "\n";
}

ParamStore parse_params(std::string_view text) {
  ParamStore theta;
  try {
    const auto doc = json::parse(text);
    theta.version = doc.at("version").get<int>();
    theta.feature_spec = doc.at("feature_spec").get<std::vector<std::string>>();
    theta.value_weights = doc.at("value_weights").get<std::vector<double>>();
    for (const auto& [id, w] : doc.at("prior_weights").items()) theta.prior_weights[id] = w.get<std::vector<double>>();
    const auto& stats = doc.at("training_stats");
    theta.training_stats.examples_seen = stats.at("examples_seen").get<std::uint64_t>();
    theta.training_stats.last_loss = stats.at("last_loss").get<double>();
  } catch (const json::exception& e) {
    throw ParamError(std::string("malformed parameter document: ") + e.what());
  }
  validate(theta);
  return theta;
}

ParamStore load_params(const std::filesystem::path& path) { return parse_params(read_file(path)); }

void save_params(const std::filesystem::path& path, const ParamStore& theta) {
  write_file_atomic(path, emit_params(theta));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double linear(std::span<const double> weights, const FeatureVector& f) {
  double z = weights[kFeatureCount];
  for (std::size_t i = 0; i < kFeatureCount; ++i) z += weights[i] * f[i];
  return z;
}

double value_of(const ParamStore& theta, const FeatureVector& f) { return sigmoid(linear(theta.value_weights, f)); }

std::vector<double> priors_of(const ParamStore& theta, std::string_view reduction, std::span<const FeatureVector> moves) {
  std::vector<double> p(moves.size(), 0.0);
  if (moves.empty()) return p;
  const auto head = theta.prior_weights.find(std::string(reduction));
  if (head == theta.prior_weights.end()) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(moves.size()));
    return p;
  }
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < moves.size(); ++i) {
    p[i] = linear(head->second, moves[i]);
    top = std::max(top, p[i]);
  }
  double sum = 0.0;
  for (auto& v : p) sum += (v = std::exp(v - top));
  for (auto& v : p) v /= sum;
  return p;
}

Evaluation evaluate(const ParamStore& theta, const sat::Formula& x, std::span<const MoveGroup> groups) {
  validate(theta);
  Evaluation e;
  e.value = value_of(theta, features(x));
  for (const auto& g : groups) {
    std::vector<FeatureVector> fs;
    fs.reserve(g.moves.size());
    for (const auto& m : g.moves) fs.push_back(features(m));
    e.priors.push_back(priors_of(theta, g.reduction, fs));
  }
  return e;
}

LinearEvaluator::LinearEvaluator(const ParamStore& theta) : theta_(theta) { validate(theta_); }

double LinearEvaluator::value(const sat::Formula& x) const { return value_of(theta_, features(x)); }

std::vector<double> LinearEvaluator::priors(const sat::Formula&, std::string_view reduction,
                                            std::span<const sat::Formula> moves) const {
  if (!theta_.prior_weights.contains(std::string(reduction)))
    return std::vector<double>(moves.size(), moves.empty() ? 0.0 : 1.0 / static_cast<double>(moves.size()));
  std::vector<FeatureVector> fs;
  fs.reserve(moves.size());
  for (const auto& m : moves) fs.push_back(features(m));
  return priors_of(theta_, reduction, fs);
}

}  // namespace reducto::learn
