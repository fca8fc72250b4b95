#include "trendrec/recommend.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "trendrec/errors.hpp"

namespace trendrec {

std::string format_fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::vector<std::pair<std::string, double>> recommend_top_n(
    const std::vector<ItemTrendScore>& scores, int n, bool include_negative) {
  if (n < 1) throw ConfigurationError("top-N requires n >= 1");

  std::vector<std::pair<std::string, double>> ranked;
  for (const ItemTrendScore& s : scores) {
    // zero means "nothing trended"; never a recommendation
    if (s.total_score > 0.0 || (include_negative && s.total_score < 0.0)) {
      ranked.emplace_back(s.reference_id, s.total_score);
    }
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (ranked.size() > static_cast<std::size_t>(n)) ranked.resize(n);
  return ranked;
}

namespace {

void require_ascending(const std::vector<UtcTime>& datetimes) {
  for (std::size_t i = 1; i < datetimes.size(); ++i) {
    if (datetimes[i] < datetimes[i - 1]) {
      throw ConfigurationError("datetimes must be ascending");
    }
  }
}

// earliest match time per item
std::map<std::string, UtcTime> first_match_times(const MatchStore& store) {
  std::map<std::string, UtcTime> first;
  for (const TrendMatch& m : store.matches) {
    auto [it, inserted] = first.emplace(m.reference_id, m.trend_captured_at);
    if (!inserted && m.trend_captured_at < it->second) {
      it->second = m.trend_captured_at;
    }
  }
  return first;
}

}  // namespace

std::vector<MatchReportRow> match_report(
    const MatchStore& store, const std::vector<UtcTime>& batch_datetimes) {
  require_ascending(batch_datetimes);
  auto first = first_match_times(store);

  std::vector<MatchReportRow> rows;
  rows.reserve(batch_datetimes.size());
  for (UtcTime at : batch_datetimes) {
    std::set<std::string> matched, fresh;
    for (const TrendMatch& m : store.matches) {
      if (m.trend_captured_at != at) continue;
      matched.insert(m.reference_id);
      if (first.at(m.reference_id) == at) fresh.insert(m.reference_id);
    }
    rows.push_back({at, static_cast<int>(matched.size()),
                    static_cast<int>(fresh.size())});
  }
  return rows;
}

ScoreMatrix score_matrix(const std::vector<ItemProfile>& profiles,
                         const MatchStore& store,
                         const std::vector<UtcTime>& datetimes,
                         const ScoringConfig& config,
                         std::optional<double> cap) {
  require_ascending(datetimes);
  auto first = first_match_times(store);

  // rows: first-match datetime, then reference_id; never-matched items last
  std::vector<const ItemProfile*> ordered;
  ordered.reserve(profiles.size());
  for (const ItemProfile& p : profiles) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [&first](const ItemProfile* a, const ItemProfile* b) {
              auto fa = first.find(a->reference_id);
              auto fb = first.find(b->reference_id);
              UtcTime ta = fa != first.end() ? fa->second : UtcTime::max();
              UtcTime tb = fb != first.end() ? fb->second : UtcTime::max();
              if (ta != tb) return ta < tb;
              return a->reference_id < b->reference_id;
            });

  ScoreMatrix matrix;
  matrix.datetimes = datetimes;
  matrix.cap = cap;
  matrix.item_ids.reserve(ordered.size());
  for (const ItemProfile* p : ordered) matrix.item_ids.push_back(p->reference_id);
  matrix.values.assign(ordered.size(),
                       std::vector<double>(datetimes.size(), 0.0));

  bool any_batch = !store.batches.empty();
  UtcTime earliest{};
  if (any_batch) {
    earliest = store.batches.front().captured_at;
    for (const BatchRef& b : store.batches) {
      earliest = std::min(earliest, b.captured_at);
    }
  }

  for (std::size_t c = 0; c < datetimes.size(); ++c) {
    // columns before the first ingested batch stay zero
    if (!any_batch || datetimes[c] < earliest) continue;
    auto column = score_all(profiles, store, datetimes[c], config);
    std::map<std::string, double> by_ref;
    for (const ItemTrendScore& s : column) by_ref[s.reference_id] = s.total_score;
    for (std::size_t r = 0; r < ordered.size(); ++r) {
      double v = by_ref.at(ordered[r]->reference_id);
      if (cap) v = std::min(v, *cap);
      matrix.values[r][c] = v;
    }
  }
  return matrix;
}

std::string matrix_to_csv(const ScoreMatrix& matrix) {
  std::string out = "reference_id";
  for (UtcTime at : matrix.datetimes) {
    out += ',';
    out += format_rfc3339_utc(at);
  }
  out += '\n';
  for (std::size_t r = 0; r < matrix.item_ids.size(); ++r) {
    out += matrix.item_ids[r];
    for (double v : matrix.values[r]) {
      out += ',';
      out += format_fixed4(v);
    }
    out += '\n';
  }
  return out;
}

std::string report_to_csv(const std::vector<MatchReportRow>& rows) {
  std::string out = "scored_at,total_matched,newly_matched\n";
  for (const MatchReportRow& row : rows) {
    out += format_rfc3339_utc(row.scored_at);
    out += ',';
    out += std::to_string(row.total_matched_items);
    out += ',';
    out += std::to_string(row.newly_matched_items);
    out += '\n';
  }
  return out;
}

}  // namespace trendrec
