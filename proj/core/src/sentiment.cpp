#include "trendrec/sentiment.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "trendrec/errors.hpp"
#include "trendrec/text.hpp"

namespace trendrec {

double adjust(const SentimentTriple& triple, double positive_multiplier) {
  // argmax with ties preferring the more positive class
  int cls = 0;
  double best = triple.neg;
  if (triple.neu >= best) {
    best = triple.neu;
    cls = 1;
  }
  if (triple.pos >= best) cls = 2;

  switch (cls) {
    case 0:
      return -triple.neg;
    case 1:
      return triple.neu;
    default:
      return positive_multiplier * triple.pos;
  }
}

TrendSentiment trend_sentiment(const Trend& trend,
                               const SentimentProvider& provider,
                               double positive_multiplier) {
  if (auto direct = provider.score_trend(trend)) {
    return {trend.name_norm, *direct, adjust(*direct, positive_multiplier)};
  }

  if (trend.sample_texts.empty()) {
    return {trend.name_norm, SentimentTriple{}, 1.0};
  }

  double neg = 0.0, neu = 0.0, pos = 0.0, adjusted = 0.0;
  for (const std::string& sample : trend.sample_texts) {
    SentimentTriple t;
    try {
      t = provider.score_text(sample);
    } catch (const std::exception&) {
      throw SentimentUnavailableError(trend.name_norm);
    }
    neg += t.neg;
    neu += t.neu;
    pos += t.pos;
    adjusted += adjust(t, positive_multiplier);
  }
  double n = static_cast<double>(trend.sample_texts.size());
  return {trend.name_norm, SentimentTriple{neg / n, neu / n, pos / n},
          adjusted / n};
}

LexiconProvider::LexiconProvider(std::unordered_map<std::string, double> lexicon)
    : valence_(std::move(lexicon)) {
  if (valence_.empty()) throw ConfigurationError("lexicon is empty");
  for (const auto& [word, v] : valence_) {
    if (v < -1.0 || v > 1.0) {
      throw ConfigurationError("lexicon valence for \"" + word +
                               "\" outside [-1, 1]");
    }
  }
}

SentimentTriple LexiconProvider::score_text(const std::string& input) const {
  double sum = 0.0;
  int hits = 0;
  for (const std::string& word : text::words(input)) {
    auto it = valence_.find(word);
    if (it != valence_.end()) {
      sum += it->second;
      ++hits;
    }
  }
  double v = hits == 0 ? 0.0 : sum / hits;
  return SentimentTriple{std::max(-v, 0.0), 1.0 - std::fabs(v),
                         std::max(v, 0.0)};
}

SidecarProvider::SidecarProvider(std::map<Key, SentimentTriple> entries)
    : entries_(std::move(entries)) {}

std::optional<SentimentTriple> SidecarProvider::score_trend(
    const Trend& t) const {
  auto it = entries_.find({t.name_norm, t.captured_at});
  if (it != entries_.end()) return it->second;
  return SentimentTriple{};  // miss: neutral
}

std::unordered_map<std::string, double> load_lexicon(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file " + path.string());

  std::unordered_map<std::string, double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw IngestError("expected \"word<TAB>valence\"", lineno);
    }
    double v;
    try {
      v = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw IngestError("invalid valence number", lineno);
    }
    if (v < -1.0 || v > 1.0) {
      throw IngestError("valence outside [-1, 1]", lineno);
    }
    out[text::to_lower(line.substr(0, tab))] = v;
  }
  if (out.empty()) throw ConfigurationError("lexicon file is empty");
  return out;
}

std::map<SidecarProvider::Key, SentimentTriple> load_sidecar(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sidecar file " + path.string());

  std::map<SidecarProvider::Key, SentimentTriple> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IngestError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    try {
      SentimentTriple triple{row.at("neg").get<double>(),
                             row.at("neu").get<double>(),
                             row.at("pos").get<double>()};
      if (!triple.valid()) {
        throw IngestError("neg+neu+pos must sum to 1", lineno);
      }
      UtcTime at = parse_rfc3339_utc(row.at("captured_at").get<std::string>());
      out[{row.at("trend_name_norm").get<std::string>(), at}] = triple;
    } catch (const IngestError&) {
      throw;
    } catch (const std::exception& e) {
      throw IngestError(e.what(), lineno);
    }
  }
  return out;
}

}  // namespace trendrec
