#include "reducto/quality_store.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "reducto/file_io.hpp"

namespace reducto::learn {

using json = nlohmann::ordered_json;

std::pair<double, std::uint64_t> combine_values(double v1, std::uint64_t n1, double v2, std::uint64_t n2) {
  if (n1 + n2 == 0) return {0.0, 0};
  // Fixed operand order makes the floating-point result independent of argument order.
  if (std::tie(v2, n2) < std::tie(v1, n1)) {
    std::swap(v1, v2);
    std::swap(n1, n2);
  }
  const double n = static_cast<double>(n1 + n2);
  return {v1 + (v2 - v1) * (static_cast<double>(n2) / n), n1 + n2};
}

namespace {

void add_value(QualityStore& store, const sat::Formula& x, double value, std::uint64_t visits) {
  auto key = sat::to_compact(x);
  auto it = store.values.find(key);
  if (it == store.values.end()) {
    store.values.emplace(std::move(key), ValueRecord{x, value, visits});
    return;
  }
  std::tie(it->second.value, it->second.visits) = combine_values(it->second.value, it->second.visits, value, visits);
}

DistributionRecord& dist_slot(QualityStore& store, const sat::Formula& x, const std::string& reduction) {
  auto key = std::make_pair(sat::to_compact(x), reduction);
  auto it = store.distributions.find(key);
  if (it == store.distributions.end()) it = store.distributions.emplace(key, DistributionRecord{x, reduction, 0, {}, {}}).first;
  return it->second;
}

void add_move(DistributionRecord& d, const sat::Formula& move, std::uint64_t count) {
  auto key = sat::to_compact(move);
  d.counts[key] += count;
  d.moves.emplace(std::move(key), move);
}

std::string value_record(const std::string& compact, const sat::Formula& x, double value, std::uint64_t visits) {
  json r;
  r["kind"] = "value";
  r["hash"] = hash_text(x);
  r["instance"] = compact;
  r["value"] = value;
  r["visits"] = visits;
  return r.dump();
}

std::string dist_record(const std::string& compact, const sat::Formula& x, const std::string& reduction,
                        std::uint64_t samples, const std::vector<std::pair<std::string, std::uint64_t>>& moves) {
  json r;
  r["kind"] = "dist";
  r["hash"] = hash_text(x);
  r["instance"] = compact;
  r["reduction"] = reduction;
  r["samples"] = samples;
  json ms = json::array();
  for (const auto& [m, c] : moves) ms.push_back(json::array({m, c}));
  r["moves"] = std::move(ms);
  return r.dump();
}

// Throws on any structural problem; the caller counts it as corrupt.
void apply_record(QualityStore& store, const json& r) {
  const auto kind = r.at("kind").get<std::string>();
  const auto text = r.at("instance").get<std::string>();
  const auto x = sat::from_compact(text);
  if (r.at("hash").get<std::string>() != hash_text(x)) throw std::invalid_argument("hash mismatch");
  if (kind == "value") {
    const double v = r.at("value").get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("value outside [0, 1]");
    add_value(store, x, v, r.at("visits").get<std::uint64_t>());
  } else if (kind == "dist") {
    const auto samples = r.at("samples").get<std::uint64_t>();
    std::vector<std::pair<sat::Formula, std::uint64_t>> moves;
    std::uint64_t sum = 0;
    for (const auto& m : r.at("moves")) {
      moves.emplace_back(sat::from_compact(m.at(0).get<std::string>()), m.at(1).get<std::uint64_t>());
      sum += moves.back().second;
    }
    if (sum != samples) throw std::invalid_argument("counts do not sum to samples");
    auto& d = dist_slot(store, x, r.at("reduction").get<std::string>());
    d.samples += samples;
    for (const auto& [m, c] : moves) add_move(d, m, c);
  } else {
    throw std::invalid_argument("unknown record kind");
  }
}

}  // namespace

void merge_quality(QualityStore& store, const SatQuality& delta) {
  for (const auto& v : delta.values) add_value(store, v.instance, v.value, v.visits);
  for (const auto& d : delta.distributions) {
    auto& slot = dist_slot(store, d.instance, d.reduction);
    slot.samples += d.samples;
    for (const auto& m : d.moves) add_move(slot, m.instance, m.count);
  }
}

void merge_quality(QualityStore& store, const QualityStore& other) {
  for (const auto& [key, v] : other.values) add_value(store, v.instance, v.value, v.visits);
  for (const auto& [key, d] : other.distributions) {
    auto& slot = dist_slot(store, d.instance, d.reduction);
    slot.samples += d.samples;
    for (const auto& [m, c] : d.counts) add_move(slot, d.moves.at(m), c);
  }
}

std::string hash_text(const sat::Formula& phi) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(phi.hash()));
  return buf;
}

std::vector<std::string> delta_records(const SatQuality& delta) {
  std::vector<std::string> out;
  out.reserve(delta.records());
  for (const auto& v : delta.values) out.push_back(value_record(sat::to_compact(v.instance), v.instance, v.value, v.visits));
  for (const auto& d : delta.distributions) {
    std::vector<std::pair<std::string, std::uint64_t>> moves;
    for (const auto& m : d.moves) moves.emplace_back(sat::to_compact(m.instance), m.count);
    out.push_back(dist_record(sat::to_compact(d.instance), d.instance, d.reduction, d.samples, moves));
  }
  return out;
}

std::vector<std::string> delta_records(const QualityStore& store) {
  std::vector<std::string> out;
  out.reserve(store.size());
  for (const auto& [key, v] : store.values) out.push_back(value_record(key, v.instance, v.value, v.visits));
  for (const auto& [key, d] : store.distributions) {
    std::vector<std::pair<std::string, std::uint64_t>> moves(d.counts.begin(), d.counts.end());
    out.push_back(dist_record(key.first, d.instance, d.reduction, d.samples, moves));
  }
  return out;
}

std::string emit_store(const QualityStore& store) {
  std::string out;
  for (const auto& line : delta_records(store)) {
    out += line;
    out += '\n';
  }
  return out;
}

LogReadResult parse_delta_log(std::string_view text) {
  LogReadResult result;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++result.records;
    // Apply to a scratch copy so a record failing halfway leaves no trace.
    try {
      const auto r = json::parse(line);
      QualityStore one;
      apply_record(one, r);
      merge_quality(result.store, one);
    } catch (const std::exception&) {
      ++result.corrupt;
    }
  }
  return result;
}

LogReadResult read_delta_log(const std::filesystem::path& path) { return parse_delta_log(read_file(path)); }

std::size_t append_delta_log(const std::filesystem::path& path, const SatQuality& delta) {
  const auto records = delta_records(delta);
  if (records.empty()) return 0;
  std::string text;
  for (const auto& r : records) {
    text += r;
    text += '\n';
  }
  append_file(path, text);
  return records.size();
}

}  // namespace reducto::learn
