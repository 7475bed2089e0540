#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reducto/cnf.hpp"
#include "reducto/search.hpp"

namespace reducto::learn {

struct ValueRecord {
  sat::Formula instance;
  double value = 0.0;
  std::uint64_t visits = 0;

  bool operator==(const ValueRecord&) const = default;
};

struct DistributionRecord {
  sat::Formula instance;
  std::string reduction;
  std::uint64_t samples = 0;
  /// Candidate move (compact text) → visit count.
  std::map<std::string, std::uint64_t> counts;
  std::map<std::string, sat::Formula> moves;

  bool operator==(const DistributionRecord&) const = default;
};

/// Accumulated quality data over all runs, keyed by canonical compact text
/// of the instance (and the reduction id for distributions).
struct QualityStore {
  std::map<std::string, ValueRecord> values;
  std::map<std::pair<std::string, std::string>, DistributionRecord> distributions;

  bool empty() const noexcept { return values.empty() && distributions.empty(); }
  std::size_t size() const noexcept { return values.size() + distributions.size(); }
  bool operator==(const QualityStore&) const = default;
};

using SatQuality = QualityData<sat::Formula>;

/// Visit-weighted mean, symmetric in its operands.
std::pair<double, std::uint64_t> combine_values(double v1, std::uint64_t n1, double v2, std::uint64_t n2);

void merge_quality(QualityStore& store, const SatQuality& delta);
void merge_quality(QualityStore& store, const QualityStore& other);

/// 16 hex digits of the formula hash.
std::string hash_text(const sat::Formula& phi);

/// One JSON object per line, fields in fixed order.
std::vector<std::string> delta_records(const SatQuality& delta);
std::vector<std::string> delta_records(const QualityStore& store);
/// Canonical text of a whole store (its records in key order).
std::string emit_store(const QualityStore& store);

struct LogReadResult {
  QualityStore store;
  std::size_t records = 0;
  std::size_t corrupt = 0;
};

/// Parses a record stream; malformed records are skipped and counted.
LogReadResult parse_delta_log(std::string_view text);
LogReadResult read_delta_log(const std::filesystem::path& path);
/// Appends the delta's records; returns how many were written.
std::size_t append_delta_log(const std::filesystem::path& path, const SatQuality& delta);

}  // namespace reducto::learn
