#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trendrec/errors.hpp"
#include "trendrec/store.hpp"
#include "support/helpers.hpp"

using namespace trendrec;
using testutil::hex_address;
using testutil::make_trend;
using testutil::read_file;
using testutil::TempDir;
using testutil::write_file;

namespace {

const UtcTime kD0 = parse_rfc3339_utc("2022-03-01T10:00:00Z");

std::string item_row(char fill, const std::string& token,
                     const std::string& name,
                     const std::string& fetched = "2022-03-01T09:00:00Z") {
  return std::string("{\"contract_address\":\"") + hex_address(fill) +
         "\",\"token_id\":\"" + token + "\",\"name\":\"" + name +
         "\",\"description\":\"\",\"collection_name\":\"\","
         "\"collection_description\":\"\",\"fetched_at\":\"" +
         fetched + "\"}\n";
}

std::string trend_row(const std::string& source, const std::string& name,
                      const std::string& volume, const std::string& at) {
  return "{\"source\":\"" + source + "\",\"name\":\"" + name +
         "\",\"volume\":" + volume + ",\"captured_at\":\"" + at +
         "\",\"location\":\"UK\",\"sample_texts\":[]}\n";
}

std::map<std::string, TrendSentiment> neutral_sentiments(
    const TrendBatch& batch) {
  std::map<std::string, TrendSentiment> out;
  for (const Trend& t : batch.trends) {
    out[t.name_norm] = TrendSentiment{t.name_norm, SentimentTriple{}, 1.0};
  }
  return out;
}

}  // namespace

TEST_CASE("load_items parses, validates and deduplicates") {
  TempDir dir;
  auto path = dir.path() / "items.jsonl";

  SUBCASE("valid rows load") {
    write_file(path, item_row('a', "1", "Bitcoin") + item_row('b', "2", "Ape") +
                         item_row('c', "3", "Punk"));
    auto [items, stats] = load_items(path);
    CHECK(items.size() == 3);
    CHECK(stats.loaded == 3);
    CHECK(stats.skipped == 0);
    CHECK(items[0].reference_id == hex_address('a') + ":1");
  }

  SUBCASE("rows missing the token id are skipped with a line number") {
    write_file(path,
               item_row('a', "1", "Bitcoin") +
                   "{\"contract_address\":\"" + hex_address('b') +
                   "\",\"name\":\"NoToken\",\"description\":\"\","
                   "\"collection_name\":\"\",\"collection_description\":\"\","
                   "\"fetched_at\":\"2022-03-01T09:00:00Z\"}\n" +
                   item_row('c', "3", "Punk"));
    auto [items, stats] = load_items(path);
    CHECK(items.size() == 2);
    CHECK(stats.skipped == 1);
    REQUIRE(stats.warnings.size() == 1);
    CHECK(stats.warnings[0].find("line 2") != std::string::npos);
  }

  SUBCASE("duplicate reference ids keep the latest fetched_at") {
    write_file(path,
               item_row('a', "1", "Old", "2022-03-01T09:00:00Z") +
                   item_row('a', "1", "New", "2022-03-02T09:00:00Z") +
                   item_row('a', "1", "Stale", "2022-02-01T09:00:00Z"));
    auto [items, stats] = load_items(path);
    REQUIRE(items.size() == 1);
    CHECK(items[0].name == "New");
  }

  SUBCASE("unreadable file") {
    CHECK_THROWS_AS(load_items(dir.path() / "absent.jsonl"), IoError);
  }

  SUBCASE("more than half invalid rows is a corrupt feed") {
    write_file(path, item_row('a', "1", "Ok") + "{broken\n{also broken\n");
    CHECK_THROWS_AS(load_items(path), CorruptFeedError);
  }
}

TEST_CASE("load_trend_batches groups by source and capture time") {
  TempDir dir;
  auto path = dir.path() / "trends.jsonl";
  write_file(path,
             trend_row("twitter", "#Bitcoin", "10000", "2022-03-01T10:00:00Z") +
                 trend_row("twitter", "Doge", "null", "2022-03-01T10:00:00Z") +
                 trend_row("reddit", "punk", "50", "2022-03-01T10:00:00Z") +
                 trend_row("twitter", "ape", "7", "2022-03-02T10:00:00Z"));

  auto [batches, stats] = load_trend_batches(path);
  REQUIRE(batches.size() == 3);
  CHECK(stats.loaded == 4);

  // ordered by (captured_at, source)
  CHECK(batches[0].source == "reddit");
  CHECK(batches[1].source == "twitter");
  CHECK(batches[2].source == "twitter");
  CHECK(batches[2].captured_at == kD0 + std::chrono::days(1));

  // normalization applied, volumes optional
  REQUIRE(batches[1].trends.size() == 2);
  CHECK(batches[1].trends[0].name_norm == "bitcoin");
  CHECK(batches[1].trends[1].name_norm == "doge");
  CHECK_FALSE(batches[1].trends[1].volume.has_value());
  CHECK(batches[1].median_volume == 10000.0);
}

TEST_CASE("load_trend_batches median conventions") {
  TempDir dir;
  auto path = dir.path() / "trends.jsonl";

  SUBCASE("odd count") {
    write_file(path,
               trend_row("twitter", "a", "10000", "2022-03-01T10:00:00Z") +
                   trend_row("twitter", "b", "20000", "2022-03-01T10:00:00Z") +
                   trend_row("twitter", "c", "50000", "2022-03-01T10:00:00Z"));
    auto [batches, stats] = load_trend_batches(path);
    CHECK(batches[0].median_volume == 20000.0);
  }

  SUBCASE("even count averages the middles") {
    write_file(path,
               trend_row("twitter", "a", "10000", "2022-03-01T10:00:00Z") +
                   trend_row("twitter", "b", "20000", "2022-03-01T10:00:00Z") +
                   trend_row("twitter", "c", "30000", "2022-03-01T10:00:00Z") +
                   trend_row("twitter", "d", "50000", "2022-03-01T10:00:00Z"));
    auto [batches, stats] = load_trend_batches(path);
    CHECK(batches[0].median_volume == 25000.0);
  }

  SUBCASE("all null volumes leave the median absent") {
    write_file(path,
               trend_row("twitter", "a", "null", "2022-03-01T10:00:00Z") +
                   trend_row("twitter", "b", "null", "2022-03-01T10:00:00Z"));
    auto [batches, stats] = load_trend_batches(path);
    CHECK_FALSE(batches[0].median_volume.has_value());
  }

  SUBCASE("invalid trend names are skipped with warnings") {
    write_file(path,
               trend_row("twitter", "###", "5", "2022-03-01T10:00:00Z") +
                   trend_row("twitter", "ok", "5", "2022-03-01T10:00:00Z") +
                   trend_row("twitter", "fine", "5", "2022-03-01T10:00:00Z"));
    auto [batches, stats] = load_trend_batches(path);
    CHECK(stats.skipped == 1);
    CHECK(batches[0].trends.size() == 2);
  }
}

TEST_CASE("load_priorities") {
  TempDir dir;
  auto path = dir.path() / "priorities.jsonl";
  write_file(path,
             "{\"trend_name_norm\":\"bitcoin\",\"priority\":2.5}\n"
             "{\"trend_name_norm\":\"doge\",\"priority\":0.5}\n");
  auto [priorities, stats] = load_priorities(path);
  CHECK(priorities.at("bitcoin") == 2.5);
  CHECK(priorities.at("doge") == 0.5);

  write_file(path, "{\"trend_name_norm\":\"bad\",\"priority\":0}\n");
  CHECK_THROWS_AS(load_priorities(path), CorruptFeedError);
}

TEST_CASE("store round-trips items, profiles, batches and matches") {
  TempDir dir;
  Store store{dir.path() / "store"};

  Item item;
  item.reference_id = hex_address('a') + ":1";
  item.name = "Bitcoin";
  item.description = "digital gold";
  item.fetched_at = kD0;
  ItemProfile profile{item.reference_id, {"bitcoin", "digital gold"}};
  store.put_items({item}, {profile});

  auto items = store.items();
  REQUIRE(items.size() == 1);
  CHECK(items[0].name == "Bitcoin");
  auto profiles = store.profiles();
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].keywords == std::vector<std::string>{"bitcoin",
                                                         "digital gold"});

  TrendBatch batch = make_trend_batch(
      "twitter", kD0,
      {make_trend("twitter", "#Bitcoin", 10000, kD0, {"sample text"}),
       make_trend("twitter", "other", std::nullopt, kD0)});
  auto summary = store.ingest_batch(batch, profiles,
                                    neutral_sentiments(batch), {},
                                    ScoringConfig{});
  CHECK(summary.matches_added == 1);
  CHECK(summary.items_newly_matched == 1);
  CHECK_FALSE(summary.duplicate);

  auto reloaded = store.batches();
  REQUIRE(reloaded.size() == 1);
  CHECK(reloaded[0].source == "twitter");
  CHECK(reloaded[0].captured_at == kD0);
  REQUIRE(reloaded[0].trends.size() == 2);
  CHECK(reloaded[0].trends[0].name_raw == "#Bitcoin");
  CHECK(reloaded[0].trends[0].name_norm == "bitcoin");
  CHECK(reloaded[0].trends[0].sample_texts ==
        std::vector<std::string>{"sample text"});
  CHECK(reloaded[0].median_volume == 10000.0);

  MatchStore matches = store.matches();
  REQUIRE(matches.matches.size() == 1);
  CHECK(matches.matches[0].reference_id == item.reference_id);
  CHECK(matches.matches[0].keyword == "bitcoin");
  CHECK(matches.matches[0].impact == 1.0);
  REQUIRE(matches.batches.size() == 1);
  CHECK(matches.batches[0].source == "twitter");
}

TEST_CASE("re-ingesting a batch is a byte-identical no-op") {
  TempDir dir;
  Store store{dir.path() / "store"};
  ItemProfile profile{hex_address('a') + ":1", {"bitcoin"}};
  store.put_items({Item{profile.reference_id, "Bitcoin", "", "", "", kD0}},
                  {profile});

  TrendBatch batch = make_trend_batch(
      "twitter", kD0, {make_trend("twitter", "bitcoin", 10000, kD0)});
  auto first = store.ingest_batch(batch, {profile}, neutral_sentiments(batch),
                                  {}, ScoringConfig{});
  CHECK(first.matches_added == 1);

  auto matches_before = read_file(dir.path() / "store" / "matches.jsonl");
  auto batch_file =
      dir.path() / "store" / "batches" / "twitter-2022-03-01T10:00:00Z.jsonl";
  REQUIRE(std::filesystem::exists(batch_file));
  auto batch_before = read_file(batch_file);

  auto second = store.ingest_batch(batch, {profile}, neutral_sentiments(batch),
                                   {}, ScoringConfig{});
  CHECK(second.duplicate);
  CHECK(second.matches_added == 0);
  CHECK(read_file(dir.path() / "store" / "matches.jsonl") == matches_before);
  CHECK(read_file(batch_file) == batch_before);
}

TEST_CASE("ingesting accumulates matches append-only across batches") {
  TempDir dir;
  Store store{dir.path() / "store"};
  ItemProfile a{hex_address('a') + ":1", {"bitcoin"}};
  ItemProfile b{hex_address('b') + ":2", {"doge"}};

  TrendBatch day0 = make_trend_batch(
      "twitter", kD0, {make_trend("twitter", "bitcoin", 10000, kD0)});
  auto s0 = store.ingest_batch(day0, {a, b}, neutral_sentiments(day0), {},
                               ScoringConfig{});
  CHECK(s0.matches_added == 1);
  CHECK(s0.items_newly_matched == 1);
  auto snapshot = read_file(dir.path() / "store" / "matches.jsonl");

  UtcTime d1 = kD0 + std::chrono::days(1);
  TrendBatch day1 = make_trend_batch(
      "twitter", d1,
      {make_trend("twitter", "bitcoin", 500, d1),
       make_trend("twitter", "doge", 700, d1)});
  auto s1 = store.ingest_batch(day1, {a, b}, neutral_sentiments(day1), {},
                               ScoringConfig{});
  CHECK(s1.matches_added == 2);
  CHECK(s1.items_newly_matched == 1);  // only b is new

  // the earlier content is still a prefix of the file
  auto grown = read_file(dir.path() / "store" / "matches.jsonl");
  CHECK(grown.substr(0, snapshot.size()) == snapshot);
  CHECK(store.matches().matches.size() == 3);
  CHECK(store.batch_datetimes() == std::vector<UtcTime>{kD0, d1});
}

TEST_CASE("a new source raises the source count for later scoring") {
  TempDir dir;
  Store store{dir.path() / "store"};
  ItemProfile a{hex_address('a') + ":1", {"bitcoin"}};

  TrendBatch twitter = make_trend_batch(
      "twitter", kD0, {make_trend("twitter", "bitcoin", 10, kD0)});
  store.ingest_batch(twitter, {a}, neutral_sentiments(twitter), {},
                     ScoringConfig{});
  CHECK(store.matches().batches.size() == 1);

  Trend r = make_trend("reddit", "bitcoin", 10, kD0);
  TrendBatch reddit = make_trend_batch("reddit", kD0, {r});
  store.ingest_batch(reddit, {a}, neutral_sentiments(reddit), {},
                     ScoringConfig{});

  auto view = store.matches();
  std::set<std::string> sources;
  for (const auto& b : view.batches) sources.insert(b.source);
  CHECK(sources.size() == 2);

  auto scores = score_all({a}, view, kD0, ScoringConfig{});
  CHECK(scores[0].n_sources == 2);
}

TEST_CASE("config round-trips through config.json") {
  TempDir dir;
  Store store{dir.path() / "store"};

  ScoringConfig config;
  CHECK(store.config().mu == config.mu);  // defaults before any save

  config.mu = 0.25;
  config.novolume_policy = NoVolumePolicy::MedianOmit;
  config.match_mode = MatchMode::TokenContainment;
  config.include_negative_in_topn = true;
  config.lookback_days = 14;
  store.save_config(config);

  ScoringConfig loaded = store.config();
  CHECK(loaded.mu == 0.25);
  CHECK(loaded.novolume_policy == NoVolumePolicy::MedianOmit);
  CHECK(loaded.match_mode == MatchMode::TokenContainment);
  CHECK(loaded.include_negative_in_topn);
  CHECK(loaded.lookback_days == 14);
}

TEST_CASE("empty trend feeds produce no batches") {
  TempDir dir;
  auto path = dir.path() / "trends.jsonl";
  write_file(path, "");
  auto [batches, stats] = load_trend_batches(path);
  CHECK(batches.empty());
  CHECK(stats.loaded == 0);
}
