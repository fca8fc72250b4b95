#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "trendrec/matching.hpp"
#include "trendrec/rake.hpp"
#include "trendrec/scoring.hpp"

using namespace trendrec;

namespace {

const UtcTime kAt = parse_rfc3339_utc("2022-03-01T10:00:00Z");

const std::vector<std::string> kVocabulary{
    "bitcoin", "ethereum", "bored ape", "doge",  "punk",   "art blocks",
    "meebits", "azuki",    "moon bird", "pepe",  "degen",  "genesis",
    "mint",    "airdrop",  "metaverse", "pixel", "avatar", "genesis drop"};

std::string synthetic_description(std::mt19937& rng, int sentences) {
  static const std::vector<std::string> words{
      "rare",    "golden", "dragon",  "unique", "the",     "of",
      "and",     "a",      "stunning", "hand",  "drawn",   "pixel",
      "artwork", "from",   "genesis", "series", "limited", "edition"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> len(4, 12);
  std::string out;
  for (int s = 0; s < sentences; ++s) {
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      out += words[pick(rng)];
      out += ' ';
    }
    out += ". ";
  }
  return out;
}

std::vector<ItemProfile> synthetic_profiles(int count) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<std::size_t> pick(0, kVocabulary.size() - 1);
  std::vector<ItemProfile> profiles;
  profiles.reserve(count);
  for (int i = 0; i < count; ++i) {
    ItemProfile p{"0x" + std::string(40, 'a') + ":" + std::to_string(i), {}};
    for (int k = 0; k < 4; ++k) {
      const std::string& kw = kVocabulary[pick(rng)];
      if (std::find(p.keywords.begin(), p.keywords.end(), kw) ==
          p.keywords.end()) {
        p.keywords.push_back(kw);
      }
    }
    profiles.push_back(std::move(p));
  }
  return profiles;
}

TrendBatch synthetic_batch(int trends) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, kVocabulary.size() - 1);
  std::uniform_int_distribution<std::int64_t> volume(1000, 100000);
  std::vector<Trend> out;
  for (int i = 0; i < trends; ++i) {
    Trend t;
    t.source = "twitter";
    t.name_raw = kVocabulary[pick(rng)];
    t.name_norm = t.name_raw;
    t.volume = volume(rng);
    t.captured_at = kAt;
    out.push_back(std::move(t));
  }
  return make_trend_batch("twitter", kAt, std::move(out));
}

void BM_RakeExtract(benchmark::State& state) {
  std::mt19937 rng(7);
  std::string text = synthetic_description(rng, int(state.range(0)));
  RakeConfig config = default_rake_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rake_extract(text, config));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RakeExtract)->Arg(4)->Arg(32);

void BM_EnumerateMatches(benchmark::State& state) {
  auto profiles = synthetic_profiles(int(state.range(0)));
  TrendBatch batch = synthetic_batch(50);
  std::map<std::string, TrendSentiment> sentiments;
  for (const Trend& t : batch.trends) {
    sentiments[t.name_norm] = TrendSentiment{t.name_norm, {}, 1.0};
  }
  ScoringConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        enumerate_matches(profiles, batch, sentiments, {}, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnumerateMatches)->Arg(100)->Arg(1000);

void BM_ScoreAll(benchmark::State& state) {
  auto profiles = synthetic_profiles(int(state.range(0)));
  TrendBatch batch = synthetic_batch(50);
  std::map<std::string, TrendSentiment> sentiments;
  for (const Trend& t : batch.trends) {
    sentiments[t.name_norm] = TrendSentiment{t.name_norm, {}, 1.0};
  }
  ScoringConfig config;
  MatchStore store;
  store.batches.push_back({"twitter", kAt});
  store.matches = enumerate_matches(profiles, batch, sentiments, {}, config);

  UtcTime scored_at = kAt + std::chrono::days(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_all(profiles, store, scored_at, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScoreAll)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
