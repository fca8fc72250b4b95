#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "trendrec/model.hpp"
#include "trendrec/scoring.hpp"

namespace trendrec {

// Outcome of a feed load: rows that failed validation are skipped and
// reported as line-numbered warnings.
struct LoadStats {
  int loaded{0};
  int skipped{0};
  std::vector<std::string> warnings;
};

// Loads item rows {contract_address, token_id, name, description,
// collection_name, collection_description, fetched_at} from JSONL. Duplicate
// reference_ids keep the row with the latest fetched_at. Throws IoError on an
// unreadable file, CorruptFeedError when more than half the rows are invalid.
std::pair<std::vector<Item>, LoadStats> load_items(
    const std::filesystem::path& path);

// Loads trend rows {source, name, volume, captured_at, location,
// sample_texts} from JSONL and groups them into batches by (source,
// captured_at), ordered by (captured_at, source). Errors as load_items.
std::pair<std::vector<TrendBatch>, LoadStats> load_trend_batches(
    const std::filesystem::path& path);

// Loads JSONL rows {trend_name_norm, priority} with priority > 0.
std::pair<std::map<std::string, double>, LoadStats> load_priorities(
    const std::filesystem::path& path);

// Append-only on-disk store:
//   <dir>/items.jsonl                      catalog + extracted keywords
//   <dir>/batches/<source>-<RFC3339>.jsonl one file per ingested batch
//   <dir>/matches.jsonl                    accumulated matches
//   <dir>/config.json                      persisted scoring defaults
// Every write goes through a temp file and an atomic rename.
class Store {
 public:
  struct IngestSummary {
    int matches_added{0};
    int items_newly_matched{0};
    bool duplicate{false};
    std::vector<std::string> warnings;
  };

  // Opens the store at dir; the layout is created on first write.
  explicit Store(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  // Replaces the catalog with these items and their profiles (one row per
  // item, sorted by reference_id).
  void put_items(const std::vector<Item>& items,
                 const std::vector<ItemProfile>& profiles);

  std::vector<Item> items() const;
  std::vector<ItemProfile> profiles() const;

  // Matches the batch against the profiles and persists both the matches and
  // the batch. Re-ingesting an already-present (source, captured_at) batch is
  // a no-op reported via IngestSummary::duplicate.
  IngestSummary ingest_batch(const TrendBatch& batch,
                             const std::vector<ItemProfile>& profiles,
                             const std::map<std::string, TrendSentiment>& sentiments,
                             const std::map<std::string, double>& priorities,
                             const ScoringConfig& config);

  bool has_batch(const std::string& source, UtcTime captured_at) const;
  std::vector<TrendBatch> batches() const;

  // Distinct capture datetimes across ingested batches, ascending.
  std::vector<UtcTime> batch_datetimes() const;

  // All persisted matches plus the batch registry.
  MatchStore matches() const;

  // Persisted scoring defaults; defaults when config.json is absent.
  ScoringConfig config() const;
  void save_config(const ScoringConfig& config);

 private:
  std::filesystem::path batch_path(const std::string& source,
                                   UtcTime captured_at) const;
  void ensure_layout() const;  // directories are created on first write

  std::filesystem::path dir_;
};

}  // namespace trendrec
