#include "trendrec/rake.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "trendrec/errors.hpp"
#include "trendrec/text.hpp"

namespace trendrec {

void RakeConfig::validate() const {
  if (max_phrase_words < 1) {
    throw ConfigurationError("max_phrase_words must be >= 1");
  }
  if (min_word_chars < 1) {
    throw ConfigurationError("min_word_chars must be >= 1");
  }
  if (top_k_phrases && *top_k_phrases < 0) {
    throw ConfigurationError("top_k_phrases must be >= 0");
  }
}

RakeConfig default_rake_config() {
  return RakeConfig{default_stopwords(), 3, 2, std::nullopt};
}

namespace {

// Candidate phrases: maximal runs of non-stopword tokens delimited by
// stopwords and punctuation. Tokens shorter than min_word_chars never enter
// the token stream.
std::vector<std::vector<std::string>> candidate_phrases(
    std::string_view input, const RakeConfig& config) {
  std::vector<std::vector<std::string>> candidates;
  std::vector<std::string> current;
  std::string token;

  auto end_token = [&](bool boundary_after) {
    if (token.size() >= static_cast<std::size_t>(config.min_word_chars)) {
      if (config.stopwords.count(token)) {
        if (!current.empty()) candidates.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(token);
      }
    }
    token.clear();
    if (boundary_after && !current.empty()) {
      candidates.push_back(std::move(current));
      current.clear();
    }
  };

  for (unsigned char c : input) {
    if (text::is_word_char(c)) {
      token.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                               : static_cast<char>(c));
    } else {
      // whitespace separates tokens; punctuation also ends the candidate
      end_token(!text::is_space(c));
    }
  }
  end_token(true);
  return candidates;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace

std::vector<RakePhrase> rake_extract(std::string_view input,
                                     const RakeConfig& config) {
  config.validate();
  auto candidates = candidate_phrases(input, config);

  // degree/frequency word scores over all candidates
  std::unordered_map<std::string, double> freq, degree;
  for (const auto& phrase : candidates) {
    for (const auto& word : phrase) {
      freq[word] += 1.0;
      degree[word] += static_cast<double>(phrase.size());
    }
  }

  std::map<std::string, double> scored;  // deduplicated
  for (const auto& phrase : candidates) {
    if (phrase.size() > static_cast<std::size_t>(config.max_phrase_words)) {
      continue;
    }
    double score = 0.0;
    for (const auto& word : phrase) score += degree[word] / freq[word];
    scored.emplace(join(phrase), score);
  }

  std::vector<RakePhrase> out;
  out.reserve(scored.size());
  for (auto& [phrase, score] : scored) out.push_back({phrase, score});
  std::sort(out.begin(), out.end(), [](const RakePhrase& a, const RakePhrase& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.phrase < b.phrase;
  });

  if (config.top_k_phrases &&
      out.size() > static_cast<std::size_t>(*config.top_k_phrases)) {
    out.resize(static_cast<std::size_t>(*config.top_k_phrases));
  }
  return out;
}

ItemProfile build_item_profile(const Item& item, const RakeConfig& config) {
  std::string combined = item.name + ". " + item.description + ". " +
                         item.collection_name + ". " +
                         item.collection_description + ".";

  ItemProfile profile{item.reference_id, {}};
  auto add = [&profile](std::string keyword) {
    if (keyword.empty()) return;
    if (std::find(profile.keywords.begin(), profile.keywords.end(), keyword) ==
        profile.keywords.end()) {
      profile.keywords.push_back(std::move(keyword));
    }
  };

  for (auto& [phrase, score] : rake_extract(combined, config)) {
    (void)score;
    add(phrase);
  }
  // single proper nouns are the most common trend form; keep the full names,
  // unless they consist of stopwords alone
  auto add_verbatim = [&](const std::string& field) {
    for (const std::string& token :
         text::words(field, static_cast<std::size_t>(config.min_word_chars))) {
      if (!config.stopwords.count(token)) {
        add(text::normalize_phrase(field));
        return;
      }
    }
  };
  add_verbatim(item.name);
  add_verbatim(item.collection_name);

  if (profile.keywords.empty()) throw ItemSkippedError(item.reference_id);
  return profile;
}

}  // namespace trendrec
