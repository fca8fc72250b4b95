#pragma once

#include <string>
#include <vector>

#include "trendrec/model.hpp"

namespace trendrec {

// Identity of one ingested batch.
struct BatchRef {
  std::string source;
  UtcTime captured_at{};
};

// In-memory view over everything scoring needs from the persisted store: all
// matches plus the registry of ingested batches (for source counting).
struct MatchStore {
  std::vector<TrendMatch> matches;
  std::vector<BatchRef> batches;
};

// Trend impact: volume / batch median. Volume-less trends follow the policy;
// when no trend in the batch has a volume, every impact is 1. Throws
// DegenerateBatchError when the median is zero with volumes present.
double trend_impact(const Trend& trend, const TrendBatch& batch,
                    NoVolumePolicy policy);

// 1 / (mu + days_old); 10 at days_old = 0 with the default mu = 0.1.
double decay_factor(double mu, int days_old);

// Whole elapsed 24-hour periods between the two instants. Throws
// FutureTrendError when the trend lies after the scoring instant.
int days_between(UtcTime trend_captured_at, UtcTime scored_at);

// Total trends score for one item: each match contributes
//   sentiment * impact * match_flag * user_priority * decay_factor
// and the sum is averaged over n_sources. The matches must already be
// filtered to trend_captured_at <= scored_at (and the lookback window).
ItemTrendScore score_item(const ItemProfile& profile,
                          const std::vector<TrendMatch>& matches,
                          UtcTime scored_at, int n_sources,
                          const ScoringConfig& config);

// Scores every profile at scored_at. n_sources counts distinct sources among
// batches captured at or before scored_at; matches from the future or outside
// the lookback window are skipped. Results are ordered by reference_id.
// Throws EmptyStoreError when no batch has been ingested by scored_at.
std::vector<ItemTrendScore> score_all(const std::vector<ItemProfile>& profiles,
                                      const MatchStore& store,
                                      UtcTime scored_at,
                                      const ScoringConfig& config);

}  // namespace trendrec
