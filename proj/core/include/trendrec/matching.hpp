#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trendrec/model.hpp"

namespace trendrec {

// Both inputs must already be normalized (lowercase, trimmed, single-spaced).
// ExactPhrase is string equality; TokenContainment also accepts one side's
// token sequence appearing contiguously inside the other's.
bool is_match(std::string_view keyword, std::string_view trend_name_norm,
              MatchMode mode);

// Emits one TrendMatch per (item, keyword, trend) triple that matches, with
// impact computed against this batch and sentiment fixed from the trend's
// adjusted score. Missing sentiment entries count as neutral (1.0); missing
// priorities default to 1. Output ordered by (reference_id, keyword,
// trend_name_norm).
std::vector<TrendMatch> enumerate_matches(
    const std::vector<ItemProfile>& profiles, const TrendBatch& batch,
    const std::map<std::string, TrendSentiment>& sentiments,
    const std::map<std::string, double>& priorities,
    const ScoringConfig& config);

}  // namespace trendrec
