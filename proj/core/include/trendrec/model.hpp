#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trendrec/time.hpp"

namespace trendrec {

// One catalog entry. reference_id is "<contract_address>:<token_id>" with the
// address lowercased; see canonical_reference_id.
struct Item {
  std::string reference_id;
  std::string name;
  std::string description;
  std::string collection_name;
  std::string collection_description;
  UtcTime fetched_at{};
};

// An item's extracted keyword phrases: non-empty, lowercase, trimmed,
// deduplicated, in extraction order.
struct ItemProfile {
  std::string reference_id;
  std::vector<std::string> keywords;
};

// One trending-topic observation from one source at one capture time.
struct Trend {
  std::string source;
  std::string name_raw;
  std::string name_norm;
  std::optional<std::int64_t> volume;
  UtcTime captured_at{};
  std::string location;
  std::vector<std::string> sample_texts;
};

// All trends captured from one source at one datetime. median_volume and
// min_volume are computed over trends that carry a volume; both are absent
// when no trend in the batch has one.
struct TrendBatch {
  std::string source;
  UtcTime captured_at{};
  std::vector<Trend> trends;
  std::optional<double> median_volume;
  std::optional<std::int64_t> min_volume;
};

// Class probabilities from a sentiment model; components sum to 1 (1e-6).
struct SentimentTriple {
  double neg{0.0};
  double neu{1.0};
  double pos{0.0};

  bool valid(double tolerance = 1e-6) const;
};

// A trend's resolved sentiment: mean class probabilities over its sample
// texts plus the signed adjusted score used in scoring.
struct TrendSentiment {
  std::string trend_name_norm;
  SentimentTriple triple;
  double adjusted_score{1.0};
};

// A persisted (item, keyword, trend) match. Impact and sentiment are fixed at
// match time; only the time decay is recomputed when scoring.
struct TrendMatch {
  std::string reference_id;
  std::string keyword;
  std::string trend_name_norm;
  std::string source;
  UtcTime trend_captured_at{};
  double impact{0.0};
  double sentiment{0.0};
  int match_flag{1};
  double user_priority{1.0};
};

// How the impact ratio treats trends without a measurable volume.
enum class NoVolumePolicy {
  MinMinusOne,  // volume taken as batch min - 1, impact floored at 0
  MedianOmit,   // volume taken as the median, impact becomes 1
};

enum class MatchMode {
  ExactPhrase,
  TokenContainment,
};

struct ScoringConfig {
  double mu{0.1};
  NoVolumePolicy novolume_policy{NoVolumePolicy::MinMinusOne};
  double positive_multiplier{2.0};
  bool include_negative_in_topn{false};
  MatchMode match_mode{MatchMode::ExactPhrase};
  std::optional<int> lookback_days;

  // Throws ConfigurationError when a field is out of range.
  void validate() const;
};

// One match's contribution to an item's total at a scoring instant.
struct MatchContribution {
  TrendMatch match;
  int days_old{0};  // n_m
  double term_value{0.0};
};

// An item's total trends score at one scoring datetime.
struct ItemTrendScore {
  std::string reference_id;
  UtcTime scored_at{};
  double total_score{0.0};
  int n_sources{1};
  std::vector<MatchContribution> contributions;
};

// Builds "<lowercase contract address>:<token id>". The address must be 0x
// followed by 40 hex characters (any case); the token id must be decimal
// digits. Throws ValidationError naming the offending field.
std::string canonical_reference_id(std::string_view contract_address,
                                   std::string_view token_id);

// Lowercases, strips leading '#' characters, trims, and collapses internal
// whitespace. Throws ValidationError when the result is empty.
std::string normalize_trend_name(std::string_view name_raw);

// Assembles a batch from trends sharing one source and capture time,
// computing median and min volume (even counts use the mean of the two
// middle values). Throws ValidationError on mixed sources or times.
TrendBatch make_trend_batch(std::string source, UtcTime captured_at,
                            std::vector<Trend> trends);

}  // namespace trendrec
