// trendrec: social-trend-infused item recommendations over JSONL feeds.
//
// Subcommands: ingest-items, ingest-trends, recommend, export-matrix, report.
// Exit codes: 0 success, 1 data or IO failure, 2 usage error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trendrec/errors.hpp"
#include "trendrec/matching.hpp"
#include "trendrec/rake.hpp"
#include "trendrec/recommend.hpp"
#include "trendrec/scoring.hpp"
#include "trendrec/sentiment.hpp"
#include "trendrec/store.hpp"

namespace {

using namespace trendrec;

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

struct ConfigFlags {
  std::optional<double> mu;
  std::optional<std::string> novolume;
  std::optional<double> positive_multiplier;
  std::optional<std::string> match_mode;
  std::optional<int> lookback_days;

  void add_scoring(CLI::App* cmd) {
    cmd->add_option("--mu", mu, "Decay constant (default 0.1)");
    cmd->add_option("--novolume", novolume,
                    "Impact policy for volume-less trends: min|omit")
        ->check(CLI::IsMember({"min", "omit"}));
    cmd->add_option("--lookback-days", lookback_days,
                    "Ignore matches older than this many days")
        ->check(CLI::NonNegativeNumber);
  }

  void add_matching(CLI::App* cmd) {
    cmd->add_option("--match-mode", match_mode,
                    "Keyword/trend comparison: exact|contain")
        ->check(CLI::IsMember({"exact", "contain"}));
    cmd->add_option("--positive-multiplier", positive_multiplier,
                    "Scale applied to positive sentiment (default 2)");
  }

  ScoringConfig apply(ScoringConfig config) const {
    if (mu) config.mu = *mu;
    if (novolume) {
      config.novolume_policy = *novolume == "omit" ? NoVolumePolicy::MedianOmit
                                                   : NoVolumePolicy::MinMinusOne;
    }
    if (positive_multiplier) config.positive_multiplier = *positive_multiplier;
    if (match_mode) {
      config.match_mode = *match_mode == "contain" ? MatchMode::TokenContainment
                                                   : MatchMode::ExactPhrase;
    }
    if (lookback_days) config.lookback_days = *lookback_days;
    config.validate();
    return config;
  }
};

int cmd_ingest_items(const std::string& items_path, const std::string& store_dir,
                     std::optional<int> rake_top_k) {
  Store store{store_dir};

  auto [items, stats] = load_items(items_path);
  print_warnings(stats.warnings);

  RakeConfig rake = default_rake_config();
  if (rake_top_k) rake.top_k_phrases = *rake_top_k;

  std::vector<Item> kept;
  std::vector<ItemProfile> profiles;
  int extraction_skipped = 0;
  for (const Item& item : items) {
    try {
      profiles.push_back(build_item_profile(item, rake));
      kept.push_back(item);
    } catch (const ItemSkippedError& e) {
      ++extraction_skipped;
      std::cerr << "warning: " << e.what() << "\n";
    }
  }

  store.put_items(kept, profiles);
  std::cout << "items: " << kept.size() << " loaded, "
            << stats.skipped + extraction_skipped << " skipped\n";
  return 0;
}

int cmd_ingest_trends(const std::string& trends_path,
                      const std::string& store_dir,
                      const std::string& sentiment_kind,
                      const std::optional<std::string>& sidecar_path,
                      const std::optional<std::string>& lexicon_path,
                      const std::optional<std::string>& priorities_path,
                      const ConfigFlags& flags) {
  Store store{store_dir};
  ScoringConfig config = flags.apply(store.config());
  store.save_config(config);

  std::unique_ptr<SentimentProvider> provider;
  if (sentiment_kind == "sidecar") {
    if (!sidecar_path) {
      throw ConfigurationError("--sentiment sidecar requires --sidecar <path>");
    }
    provider = std::make_unique<SidecarProvider>(load_sidecar(*sidecar_path));
  } else {
    provider = std::make_unique<LexiconProvider>(
        lexicon_path ? load_lexicon(*lexicon_path) : default_lexicon());
  }

  std::map<std::string, double> priorities;
  if (priorities_path) {
    auto [loaded, stats] = load_priorities(*priorities_path);
    print_warnings(stats.warnings);
    priorities = std::move(loaded);
  }

  auto [batches, stats] = load_trend_batches(trends_path);
  print_warnings(stats.warnings);

  std::vector<ItemProfile> profiles = store.profiles();
  if (profiles.empty()) {
    std::cerr << "warning: store has no item profiles; ingest items first\n";
  }

  for (const TrendBatch& batch : batches) {
    std::map<std::string, TrendSentiment> sentiments;
    for (const Trend& trend : batch.trends) {
      try {
        sentiments[trend.name_norm] =
            trend_sentiment(trend, *provider, config.positive_multiplier);
      } catch (const SentimentUnavailableError& e) {
        std::cerr << "warning: " << e.what() << "; using neutral\n";
        sentiments[trend.name_norm] =
            TrendSentiment{trend.name_norm, SentimentTriple{}, 1.0};
      }
    }

    auto summary =
        store.ingest_batch(batch, profiles, sentiments, priorities, config);
    print_warnings(summary.warnings);

    std::cout << "batch " << batch.source << " "
              << format_rfc3339_utc(batch.captured_at) << ": matches: ";
    if (summary.duplicate) {
      std::cout << "+0 (duplicate batch)\n";
    } else {
      std::cout << "+" << summary.matches_added
                << " (items newly matched: " << summary.items_newly_matched
                << ")\n";
    }
  }
  return 0;
}

int cmd_recommend(const std::string& store_dir, const std::string& at,
                  int top_n, bool include_negative, const std::string& format,
                  const ConfigFlags& flags) {
  Store store{store_dir};
  ScoringConfig config = flags.apply(store.config());
  UtcTime scored_at = parse_rfc3339_utc(at);

  auto scores = score_all(store.profiles(), store.matches(), scored_at, config);
  auto ranked = recommend_top_n(
      scores, top_n, include_negative || config.include_negative_in_topn);

  if (format == "csv") {
    std::cout << "rank,reference_id,total_score\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      std::cout << i + 1 << "," << ranked[i].first << ","
                << format_fixed4(ranked[i].second) << "\n";
    }
  } else {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      std::cout << i + 1 << " " << ranked[i].first << " "
                << format_fixed4(ranked[i].second) << "\n";
    }
  }
  return 0;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

int cmd_export_matrix(const std::string& store_dir, const std::string& out_path,
                      std::optional<double> cap, bool at_each_batch,
                      const std::vector<std::string>& at,
                      const ConfigFlags& flags) {
  Store store{store_dir};
  ScoringConfig config = flags.apply(store.config());

  std::vector<UtcTime> datetimes;
  if (!at.empty() && !at_each_batch) {
    for (const std::string& s : at) datetimes.push_back(parse_rfc3339_utc(s));
    std::sort(datetimes.begin(), datetimes.end());
    datetimes.erase(std::unique(datetimes.begin(), datetimes.end()),
                    datetimes.end());
  } else {
    datetimes = store.batch_datetimes();
  }
  if (datetimes.empty()) {
    throw EmptyStoreError("store has no ingested batches");
  }

  MatchStore match_store = store.matches();
  std::set<std::string> matched;
  for (const TrendMatch& m : match_store.matches) matched.insert(m.reference_id);

  // heatmap rows cover items that matched at least once
  std::vector<ItemProfile> profiles;
  for (ItemProfile& p : store.profiles()) {
    if (matched.count(p.reference_id)) profiles.push_back(std::move(p));
  }

  ScoreMatrix matrix = score_matrix(profiles, match_store, datetimes, config, cap);
  write_file(out_path, matrix_to_csv(matrix));
  std::cout << "matrix: " << matrix.item_ids.size() << " items x "
            << matrix.datetimes.size() << " datetimes -> " << out_path << "\n";
  return 0;
}

int cmd_report(const std::string& store_dir, const std::string& out_path) {
  Store store{store_dir};
  std::vector<UtcTime> datetimes = store.batch_datetimes();
  if (datetimes.empty()) {
    throw EmptyStoreError("store has no ingested batches");
  }

  auto rows = match_report(store.matches(), datetimes);
  write_file(out_path, report_to_csv(rows));
  std::cout << "report: " << rows.size() << " rows -> " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social-trend-infused item recommendations"};
  app.require_subcommand(1);

  // ingest-items
  std::string items_path, store_dir;
  std::optional<int> rake_top_k;
  auto* ingest_items = app.add_subcommand(
      "ingest-items", "Load an item feed, extract keywords, persist profiles");
  ingest_items->add_option("--items", items_path, "Item feed (JSONL)")
      ->required();
  ingest_items->add_option("--store", store_dir, "Store directory")->required();
  ingest_items->add_option("--rake-top-k", rake_top_k,
                           "Keep only the K highest-scoring phrases per item");

  // ingest-trends
  std::string trends_path, trends_store, sentiment_kind = "lexicon";
  std::optional<std::string> sidecar_path, lexicon_path, priorities_path;
  ConfigFlags trend_flags;
  auto* ingest_trends = app.add_subcommand(
      "ingest-trends", "Load trend batches, match against profiles, persist");
  ingest_trends->add_option("--trends", trends_path, "Trend feed (JSONL)")
      ->required();
  ingest_trends->add_option("--store", trends_store, "Store directory")
      ->required();
  ingest_trends
      ->add_option("--sentiment", sentiment_kind,
                   "Sentiment provider: lexicon|sidecar")
      ->check(CLI::IsMember({"lexicon", "sidecar"}));
  ingest_trends->add_option("--sidecar", sidecar_path,
                            "Precomputed sentiment sidecar (JSONL)");
  ingest_trends->add_option("--lexicon", lexicon_path,
                            "Custom valence lexicon (word<TAB>valence)");
  ingest_trends->add_option("--priorities", priorities_path,
                            "Per-trend user priorities (JSONL)");
  trend_flags.add_scoring(ingest_trends);
  trend_flags.add_matching(ingest_trends);

  // recommend
  std::string rec_store, rec_at, rec_format = "text";
  int rec_top = 0;
  bool rec_include_negative = false;
  ConfigFlags rec_flags;
  auto* recommend = app.add_subcommand(
      "recommend", "Print the top-N featured items at a datetime");
  recommend->add_option("--store", rec_store, "Store directory")->required();
  recommend->add_option("--at", rec_at, "Scoring datetime (RFC 3339 UTC)")
      ->required();
  recommend->add_option("--top", rec_top, "Number of items")
      ->required()
      ->check(CLI::PositiveNumber);
  recommend->add_flag("--include-negative", rec_include_negative,
                      "Also rank negative-sentiment items");
  recommend->add_option("--format", rec_format, "Output format: text|csv")
      ->check(CLI::IsMember({"text", "csv"}));
  rec_flags.add_scoring(recommend);

  // export-matrix
  std::string matrix_store, matrix_out;
  std::optional<double> matrix_cap;
  bool at_each_batch = false;
  std::vector<std::string> matrix_at;
  ConfigFlags matrix_flags;
  auto* export_matrix = app.add_subcommand(
      "export-matrix", "Write the item x datetime score matrix as CSV");
  export_matrix->add_option("--store", matrix_store, "Store directory")
      ->required();
  export_matrix->add_option("--out", matrix_out, "Output CSV path")->required();
  export_matrix->add_option("--cap", matrix_cap,
                            "Clip exported scores at this maximum");
  export_matrix->add_flag("--at-each-batch", at_each_batch,
                          "Score at every ingested batch datetime (default)");
  export_matrix->add_option("--at", matrix_at,
                            "Explicit scoring datetimes (repeatable)");
  matrix_flags.add_scoring(export_matrix);

  // report
  std::string report_store, report_out;
  auto* report = app.add_subcommand(
      "report", "Write per-datetime total/new matched item counts as CSV");
  report->add_option("--store", report_store, "Store directory")->required();
  report->add_option("--out", report_out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly, usage errors as 2
  }

  try {
    if (app.got_subcommand(ingest_items)) {
      return cmd_ingest_items(items_path, store_dir, rake_top_k);
    }
    if (app.got_subcommand(ingest_trends)) {
      return cmd_ingest_trends(trends_path, trends_store, sentiment_kind,
                               sidecar_path, lexicon_path, priorities_path,
                               trend_flags);
    }
    if (app.got_subcommand(recommend)) {
      return cmd_recommend(rec_store, rec_at, rec_top, rec_include_negative,
                           rec_format, rec_flags);
    }
    if (app.got_subcommand(export_matrix)) {
      return cmd_export_matrix(matrix_store, matrix_out, matrix_cap,
                               at_each_batch, matrix_at, matrix_flags);
    }
    if (app.got_subcommand(report)) {
      return cmd_report(report_store, report_out);
    }
  } catch (const ConfigurationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
