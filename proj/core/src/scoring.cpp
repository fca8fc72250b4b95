#include "trendrec/scoring.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "trendrec/errors.hpp"

namespace trendrec {

double trend_impact(const Trend& trend, const TrendBatch& batch,
                    NoVolumePolicy policy) {
  if (!batch.median_volume) return 1.0;  // no trend in the batch has a volume

  double median = *batch.median_volume;
  if (median == 0.0) {
    throw DegenerateBatchError("batch " + batch.source + "@" +
                               format_rfc3339_utc(batch.captured_at) +
                               " has median volume 0");
  }

  if (trend.volume) return static_cast<double>(*trend.volume) / median;

  if (policy == NoVolumePolicy::MedianOmit) return 1.0;
  double lowest = static_cast<double>(*batch.min_volume) - 1.0;
  return std::max(0.0, lowest / median);
}

double decay_factor(double mu, int days_old) {
  return 1.0 / (mu + static_cast<double>(days_old));
}

int days_between(UtcTime trend_captured_at, UtcTime scored_at) {
  auto elapsed = scored_at - trend_captured_at;
  if (elapsed.count() < 0) {
    throw FutureTrendError("trend captured at " +
                           format_rfc3339_utc(trend_captured_at) +
                           " lies after scoring instant " +
                           format_rfc3339_utc(scored_at));
  }
  return static_cast<int>(elapsed.count() / 86400);
}

ItemTrendScore score_item(const ItemProfile& profile,
                          const std::vector<TrendMatch>& matches,
                          UtcTime scored_at, int n_sources,
                          const ScoringConfig& config) {
  config.validate();
  if (n_sources < 1) throw ConfigurationError("n_sources must be >= 1");

  ItemTrendScore score{profile.reference_id, scored_at, 0.0, n_sources, {}};
  double sum = 0.0;
  for (const TrendMatch& match : matches) {
    int days = days_between(match.trend_captured_at, scored_at);
    double term = match.sentiment * match.impact *
                  (match.match_flag * match.user_priority) *
                  decay_factor(config.mu, days);
    score.contributions.push_back({match, days, term});
    sum += term;
  }
  score.total_score = sum / static_cast<double>(n_sources);
  return score;
}

std::vector<ItemTrendScore> score_all(const std::vector<ItemProfile>& profiles,
                                      const MatchStore& store,
                                      UtcTime scored_at,
                                      const ScoringConfig& config) {
  config.validate();

  std::set<std::string> sources;
  for (const BatchRef& batch : store.batches) {
    if (batch.captured_at <= scored_at) sources.insert(batch.source);
  }
  if (sources.empty()) {
    throw EmptyStoreError("no batch ingested at or before " +
                          format_rfc3339_utc(scored_at));
  }
  int n_sources = static_cast<int>(sources.size());

  std::map<std::string, std::vector<TrendMatch>> by_item;
  for (const TrendMatch& match : store.matches) {
    if (match.trend_captured_at > scored_at) continue;  // future: skipped
    if (config.lookback_days &&
        days_between(match.trend_captured_at, scored_at) >
            *config.lookback_days) {
      continue;
    }
    by_item[match.reference_id].push_back(match);
  }

  std::vector<const ItemProfile*> ordered;
  ordered.reserve(profiles.size());
  for (const ItemProfile& p : profiles) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const ItemProfile* a, const ItemProfile* b) {
              return a->reference_id < b->reference_id;
            });

  std::vector<ItemTrendScore> out;
  out.reserve(ordered.size());
  static const std::vector<TrendMatch> kNoMatches;
  for (const ItemProfile* profile : ordered) {
    auto it = by_item.find(profile->reference_id);
    const auto& matches = it != by_item.end() ? it->second : kNoMatches;
    out.push_back(score_item(*profile, matches, scored_at, n_sources, config));
  }
  return out;
}

}  // namespace trendrec
