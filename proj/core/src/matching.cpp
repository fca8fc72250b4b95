#include "trendrec/matching.hpp"

#include <algorithm>
#include <tuple>

#include "trendrec/scoring.hpp"
#include "trendrec/text.hpp"

namespace trendrec {

namespace {

bool contains_contiguous(const std::vector<std::string>& haystack,
                         const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

}  // namespace

bool is_match(std::string_view keyword, std::string_view trend_name_norm,
              MatchMode mode) {
  if (keyword == trend_name_norm) return true;
  if (mode == MatchMode::ExactPhrase) return false;

  auto kw_tokens = text::split_ws(keyword);
  auto trend_tokens = text::split_ws(trend_name_norm);
  return contains_contiguous(kw_tokens, trend_tokens) ||
         contains_contiguous(trend_tokens, kw_tokens);
}

std::vector<TrendMatch> enumerate_matches(
    const std::vector<ItemProfile>& profiles, const TrendBatch& batch,
    const std::map<std::string, TrendSentiment>& sentiments,
    const std::map<std::string, double>& priorities,
    const ScoringConfig& config) {
  std::vector<TrendMatch> out;

  for (const ItemProfile& profile : profiles) {
    for (const std::string& keyword : profile.keywords) {
      for (const Trend& trend : batch.trends) {
        if (!is_match(keyword, trend.name_norm, config.match_mode)) continue;

        double impact = trend_impact(trend, batch, config.novolume_policy);
        auto sent = sentiments.find(trend.name_norm);
        double adjusted = sent != sentiments.end()
                              ? sent->second.adjusted_score
                              : 1.0;  // absent sentiment counts as neutral
        auto prio = priorities.find(trend.name_norm);
        double priority = prio != priorities.end() ? prio->second : 1.0;

        out.push_back(TrendMatch{profile.reference_id, keyword,
                                 trend.name_norm, batch.source,
                                 trend.captured_at, impact, adjusted, 1,
                                 priority});
      }
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const TrendMatch& a, const TrendMatch& b) {
                     return std::tie(a.reference_id, a.keyword,
                                     a.trend_name_norm) <
                            std::tie(b.reference_id, b.keyword,
                                     b.trend_name_norm);
                   });
  return out;
}

}  // namespace trendrec
