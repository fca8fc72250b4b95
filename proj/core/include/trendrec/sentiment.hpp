#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "trendrec/model.hpp"

namespace trendrec {

// Scores raw text into class probabilities. Implementations must be
// deterministic and are read-only after construction.
class SentimentProvider {
 public:
  virtual ~SentimentProvider() = default;

  virtual SentimentTriple score_text(const std::string& text) const = 0;

  // Providers that hold precomputed per-trend results resolve the whole trend
  // here and skip the per-text path.
  virtual std::optional<SentimentTriple> score_trend(const Trend&) const {
    return std::nullopt;
  }
};

// Maps a class distribution to the signed scalar used in scoring: the argmax
// class decides the sign and scale (negative -> -neg, neutral -> +neu,
// positive -> positive_multiplier * pos). Ties prefer the more positive class.
double adjust(const SentimentTriple& triple, double positive_multiplier);

// Scores every sample text, adjusts each, and averages. Trends without sample
// texts are fully neutral (adjusted score 1.0). Provider failures are
// rethrown as SentimentUnavailableError carrying the trend name.
TrendSentiment trend_sentiment(const Trend& trend,
                               const SentimentProvider& provider,
                               double positive_multiplier);

// Word-valence lookup: the text's score is the mean valence of lexicon hits
// (0 with no hits), mapped to (neg, neu, pos) = (max(-v,0), 1-|v|, max(v,0)).
class LexiconProvider final : public SentimentProvider {
 public:
  // Valences must lie in [-1, 1]; the lexicon must be non-empty.
  explicit LexiconProvider(std::unordered_map<std::string, double> lexicon);

  SentimentTriple score_text(const std::string& text) const override;

 private:
  std::unordered_map<std::string, double> valence_;
};

// Precomputed triples keyed by (trend_name_norm, captured_at), e.g. the
// output of an offline transformer run. Misses fall back to neutral.
class SidecarProvider final : public SentimentProvider {
 public:
  using Key = std::pair<std::string, UtcTime>;

  explicit SidecarProvider(std::map<Key, SentimentTriple> entries);

  SentimentTriple score_text(const std::string&) const override {
    return SentimentTriple{};  // neutral; sidecars never score raw text
  }
  std::optional<SentimentTriple> score_trend(const Trend& t) const override;

 private:
  std::map<Key, SentimentTriple> entries_;
};

// Loads "word<TAB>valence" lines. Throws IngestError with the line number on
// malformed rows, ConfigurationError when the result is empty.
std::unordered_map<std::string, double> load_lexicon(
    const std::filesystem::path& path);

// The embedded English valence lexicon (core/data/lexicon_en.tsv).
const std::unordered_map<std::string, double>& default_lexicon();

// Loads sidecar JSONL rows {trend_name_norm, captured_at, neg, neu, pos}.
// Throws IngestError with the line number on malformed rows or triples that
// do not sum to 1.
std::map<SidecarProvider::Key, SentimentTriple> load_sidecar(
    const std::filesystem::path& path);

}  // namespace trendrec
