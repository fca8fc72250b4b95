#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trendrec/scoring.hpp"

namespace trendrec {

struct MatchReportRow {
  UtcTime scored_at{};
  int total_matched_items{0};
  int newly_matched_items{0};
};

// Item x datetime grid of total trend scores; values[r][c] pairs
// item_ids[r] with datetimes[c]. When cap is set every value is clipped
// from above at cap.
struct ScoreMatrix {
  std::vector<std::string> item_ids;
  std::vector<UtcTime> datetimes;
  std::vector<std::vector<double>> values;
  std::optional<double> cap;
};

// Top-N featured items for one scoring datetime: positive scores (negatives
// only when include_negative, zeros never), sorted by score descending with
// ties broken by reference_id. Throws ConfigurationError when n < 1.
std::vector<std::pair<std::string, double>> recommend_top_n(
    const std::vector<ItemTrendScore>& scores, int n, bool include_negative);

// Per datetime: how many distinct items matched in batches captured at that
// instant, and how many of them had never matched before.
std::vector<MatchReportRow> match_report(
    const MatchStore& store, const std::vector<UtcTime>& batch_datetimes);

// Scores every profile at every datetime (ascending). Rows are ordered by
// first-match datetime then reference_id; never-matched items sort last.
ScoreMatrix score_matrix(const std::vector<ItemProfile>& profiles,
                         const MatchStore& store,
                         const std::vector<UtcTime>& datetimes,
                         const ScoringConfig& config,
                         std::optional<double> cap);

// CSV with header "reference_id,<RFC3339>,..." and 4-decimal values.
std::string matrix_to_csv(const ScoreMatrix& matrix);

// CSV with header "scored_at,total_matched,newly_matched".
std::string report_to_csv(const std::vector<MatchReportRow>& rows);

// Locale-independent fixed 4-decimal formatting shared by the CSV writers
// and the CLI.
std::string format_fixed4(double value);

}  // namespace trendrec
