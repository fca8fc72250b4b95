#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "trendrec/errors.hpp"
#include "trendrec/recommend.hpp"
#include "support/helpers.hpp"
#include "support/oracle.hpp"

using namespace trendrec;
using testutil::hex_address;

namespace {

const UtcTime kD0 = parse_rfc3339_utc("2022-03-01T10:00:00Z");

ItemTrendScore scored(const std::string& ref, double total) {
  return ItemTrendScore{ref, kD0, total, 1, {}};
}

TrendMatch match_at(const std::string& ref, UtcTime at, double sentiment = 1.6,
                    double impact = 5.0) {
  return TrendMatch{ref, "kw", "trend", "twitter", at, impact, sentiment, 1,
                    1.0};
}

}  // namespace

TEST_CASE("recommend_top_n ranks and truncates") {
  std::string a = hex_address('a') + ":1";
  std::string b = hex_address('b') + ":2";
  std::string c = hex_address('c') + ":3";

  auto top = recommend_top_n({scored(a, 80.0), scored(b, 7.27), scored(c, 0.0)},
                             2, false);
  REQUIRE(top.size() == 2);
  CHECK(top[0].first == a);
  CHECK(top[1].first == b);
}

TEST_CASE("recommend_top_n excludes negatives by default") {
  std::string a = hex_address('a') + ":1";
  std::string b = hex_address('b') + ":2";

  auto top = recommend_top_n({scored(a, -0.6), scored(b, 5.0)}, 5, false);
  REQUIRE(top.size() == 1);
  CHECK(top[0].first == b);

  auto with_neg = recommend_top_n({scored(a, -0.6), scored(b, 5.0)}, 5, true);
  REQUIRE(with_neg.size() == 2);
  CHECK(with_neg[1].first == a);
}

TEST_CASE("recommend_top_n never recommends zero scores") {
  std::string a = hex_address('a') + ":1";
  CHECK(recommend_top_n({scored(a, 0.0)}, 3, false).empty());
  CHECK(recommend_top_n({scored(a, 0.0)}, 3, true).empty());
  CHECK(recommend_top_n({}, 3, false).empty());
}

TEST_CASE("recommend_top_n ties break by reference_id") {
  std::string a = hex_address('a') + ":1";
  std::string b = hex_address('b') + ":2";
  auto top = recommend_top_n({scored(b, 5.0), scored(a, 5.0)}, 2, false);
  CHECK(top[0].first == a);
  CHECK(top[1].first == b);
}

TEST_CASE("recommend_top_n rejects n < 1") {
  CHECK_THROWS_AS(recommend_top_n({}, 0, false), ConfigurationError);
  CHECK_THROWS_AS(recommend_top_n({}, -3, false), ConfigurationError);
}

TEST_CASE("top-N is a prefix of the full sort, stable under low additions") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> value(0.1, 100.0);
  std::uniform_int_distribution<int> count(1, 20), n_dist(1, 8);

  for (int round = 0; round < 100; ++round) {
    std::vector<ItemTrendScore> scores;
    int items = count(rng);
    for (int i = 0; i < items; ++i) {
      scores.push_back(
          scored(hex_address('a') + ":" + std::to_string(i + 1), value(rng)));
    }
    int n = n_dist(rng);

    auto top = recommend_top_n(scores, n, false);
    auto full = recommend_top_n(scores, items + 1, false);
    REQUIRE(top.size() == std::min<std::size_t>(n, full.size()));
    for (std::size_t i = 0; i < top.size(); ++i) {
      CHECK(top[i].first == full[i].first);
    }

    if (top.size() == static_cast<std::size_t>(n)) {
      // adding an item below the n-th score changes nothing
      auto extended = scores;
      extended.push_back(scored(hex_address('f') + ":999",
                                top.back().second * 0.5));
      auto again = recommend_top_n(extended, n, false);
      REQUIRE(again.size() == top.size());
      for (std::size_t i = 0; i < top.size(); ++i) {
        CHECK(again[i].first == top[i].first);
      }
    }
  }
}

TEST_CASE("match_report counts total and newly matched items") {
  std::string a = hex_address('a') + ":1";
  std::string b = hex_address('b') + ":2";
  std::string c = hex_address('c') + ":3";
  UtcTime d1 = kD0 + std::chrono::days(1);
  UtcTime d2 = kD0 + std::chrono::days(2);

  MatchStore store;
  store.batches = {{"twitter", kD0}, {"twitter", d1}, {"twitter", d2}};
  store.matches = {match_at(a, kD0), match_at(b, kD0), match_at(b, d1),
                   match_at(c, d1)};

  auto rows = match_report(store, {kD0, d1, d2});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].total_matched_items == 2);
  CHECK(rows[0].newly_matched_items == 2);
  CHECK(rows[1].total_matched_items == 2);
  CHECK(rows[1].newly_matched_items == 1);
  CHECK(rows[2].total_matched_items == 0);
  CHECK(rows[2].newly_matched_items == 0);
}

TEST_CASE("newly-matched counts sum to the distinct matched items") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> n_items(1, 8), n_days(1, 5), coin(0, 1);

  for (int round = 0; round < 100; ++round) {
    MatchStore store;
    std::vector<UtcTime> datetimes;
    std::set<std::string> everyone;
    int days = n_days(rng);
    int items = n_items(rng);
    for (int d = 0; d < days; ++d) {
      UtcTime at = kD0 + std::chrono::days(d);
      datetimes.push_back(at);
      store.batches.push_back({"twitter", at});
      for (int i = 0; i < items; ++i) {
        if (coin(rng)) {
          std::string ref = hex_address('a') + ":" + std::to_string(i + 1);
          store.matches.push_back(match_at(ref, at));
          everyone.insert(ref);
        }
      }
    }

    auto rows = match_report(store, datetimes);
    int new_sum = 0;
    for (const auto& row : rows) {
      CHECK(row.newly_matched_items >= 0);
      CHECK(row.newly_matched_items <= row.total_matched_items);
      new_sum += row.newly_matched_items;
    }
    CHECK(new_sum == static_cast<int>(everyone.size()));
  }
}

TEST_CASE("score_matrix reproduces the decaying desk row") {
  std::string a = hex_address('a') + ":1";
  std::vector<ItemProfile> profiles{{a, {"kw"}}};

  MatchStore store;
  store.batches.push_back({"twitter", kD0});
  store.matches.push_back(match_at(a, kD0));  // term 80 at d0

  std::vector<UtcTime> datetimes{kD0, kD0 + std::chrono::days(1),
                                 kD0 + std::chrono::days(2)};
  ScoringConfig config;

  auto matrix = score_matrix(profiles, store, datetimes, config, std::nullopt);
  REQUIRE(matrix.item_ids.size() == 1);
  REQUIRE(matrix.values[0].size() == 3);
  CHECK(matrix.values[0][0] == doctest::Approx(80.0).epsilon(1e-6));
  CHECK(matrix.values[0][1] == doctest::Approx(7.2727).epsilon(1e-4));
  CHECK(matrix.values[0][2] == doctest::Approx(3.8095).epsilon(1e-4));
  CHECK(matrix.values[0][0] > matrix.values[0][1]);
  CHECK(matrix.values[0][1] > matrix.values[0][2]);

  SUBCASE("capping clips from above only") {
    auto capped = score_matrix(profiles, store, datetimes, config, 30.0);
    CHECK(capped.values[0][0] == 30.0);
    CHECK(capped.values[0][1] == doctest::Approx(7.2727).epsilon(1e-4));
    CHECK(capped.values[0][2] == doctest::Approx(3.8095).epsilon(1e-4));
  }
}

TEST_CASE("score_matrix rows order by first match then reference id") {
  std::string early = hex_address('b') + ":1";
  std::string late = hex_address('a') + ":2";
  std::string never = hex_address('a') + ":3";
  UtcTime d1 = kD0 + std::chrono::days(1);

  std::vector<ItemProfile> profiles{
      {never, {"kw"}}, {late, {"kw"}}, {early, {"kw"}}};
  MatchStore store;
  store.batches = {{"twitter", kD0}, {"twitter", d1}};
  store.matches = {match_at(early, kD0), match_at(late, d1)};

  auto matrix =
      score_matrix(profiles, store, {kD0, d1}, ScoringConfig{}, std::nullopt);
  REQUIRE(matrix.item_ids.size() == 3);
  CHECK(matrix.item_ids[0] == early);
  CHECK(matrix.item_ids[1] == late);
  CHECK(matrix.item_ids[2] == never);

  // never-matched rows are all zero
  for (double v : matrix.values[2]) CHECK(v == 0.0);
}

TEST_CASE("matrix cells after the last match are non-increasing") {
  std::mt19937 rng(55);
  UtcTime base = parse_rfc3339_utc("2022-03-15T12:00:00Z");

  for (int round = 0; round < 30; ++round) {
    auto scenario = testutil::random_scenario(rng);
    for (auto& batch : scenario.batches) {
      for (auto& trend : batch.trends) trend.triple = {0.05, 0.15, 0.80};
    }

    std::vector<ItemProfile> profiles;
    for (const auto& item : scenario.items) {
      profiles.push_back({item.reference_id, item.keywords});
    }
    MatchStore store;
    ScoringConfig config = testutil::scenario_config(scenario);
    for (const auto& ob : scenario.batches) {
      std::vector<Trend> trends;
      std::map<std::string, TrendSentiment> sentiments;
      for (const auto& ot : ob.trends) {
        Trend t;
        t.source = ob.source;
        t.name_raw = ot.name;
        t.name_norm = ot.name;
        t.volume = ot.volume;
        t.captured_at = ob.captured_at;
        trends.push_back(std::move(t));
        sentiments[ot.name] = TrendSentiment{
            ot.name, ot.triple, adjust(ot.triple, config.positive_multiplier)};
      }
      auto batch = make_trend_batch(ob.source, ob.captured_at, std::move(trends));
      for (auto& m : enumerate_matches(profiles, batch, sentiments,
                                       scenario.priorities, config)) {
        store.matches.push_back(std::move(m));
      }
      store.batches.push_back({ob.source, ob.captured_at});
    }

    // all columns lie at or after every batch
    std::vector<UtcTime> datetimes{base, base + std::chrono::days(1),
                                   base + std::chrono::days(3)};
    auto matrix = score_matrix(profiles, store, datetimes, config, std::nullopt);
    for (const auto& row : matrix.values) {
      for (std::size_t c = 1; c < row.size(); ++c) {
        CHECK(row[c] <= row[c - 1] + 1e-12);
      }
    }
  }
}

TEST_CASE("capping preserves the order of values below the cap") {
  std::mt19937 rng(66);
  std::uniform_real_distribution<double> value(-50.0, 150.0);
  double cap = 30.0;
  for (int round = 0; round < 200; ++round) {
    double a = value(rng), b = value(rng);
    double ca = std::min(a, cap), cb = std::min(b, cap);
    if (a < cap && b < cap) {
      CHECK((a < b) == (ca < cb));
    }
  }
}

TEST_CASE("csv writers render deterministic text") {
  std::string a = hex_address('a') + ":1";
  ScoreMatrix matrix;
  matrix.item_ids = {a};
  matrix.datetimes = {kD0, kD0 + std::chrono::days(1)};
  matrix.values = {{80.0, 7.272727}};

  CHECK(matrix_to_csv(matrix) ==
        "reference_id,2022-03-01T10:00:00Z,2022-03-02T10:00:00Z\n" + a +
            ",80.0000,7.2727\n");

  std::vector<MatchReportRow> rows{{kD0, 2, 2},
                                   {kD0 + std::chrono::days(1), 2, 1}};
  CHECK(report_to_csv(rows) ==
        "scored_at,total_matched,newly_matched\n"
        "2022-03-01T10:00:00Z,2,2\n"
        "2022-03-02T10:00:00Z,2,1\n");

  CHECK(format_fixed4(0.0) == "0.0000");
  CHECK(format_fixed4(-0.6) == "-0.6000");
  CHECK(format_fixed4(3.80952) == "3.8095");
}

TEST_CASE("match_report and score_matrix validate datetime order") {
  MatchStore store;
  store.batches.push_back({"twitter", kD0});
  std::vector<UtcTime> backwards{kD0 + std::chrono::days(1), kD0};
  CHECK_THROWS_AS(match_report(store, backwards), ConfigurationError);
  CHECK_THROWS_AS(
      score_matrix({}, store, backwards, ScoringConfig{}, std::nullopt),
      ConfigurationError);
}
