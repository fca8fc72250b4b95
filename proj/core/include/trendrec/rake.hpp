#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trendrec/model.hpp"

namespace trendrec {

struct RakeConfig {
  std::set<std::string> stopwords;  // lowercase
  int max_phrase_words{3};
  int min_word_chars{2};
  std::optional<int> top_k_phrases;

  void validate() const;  // throws ConfigurationError
};

// The embedded English stopword list (core/data/stopwords_en.txt).
const std::set<std::string>& default_stopwords();

// RakeConfig with the embedded stopword list and default limits.
RakeConfig default_rake_config();

struct RakePhrase {
  std::string phrase;
  double score{0.0};
};

// Classic RAKE: candidate phrases are maximal runs of non-stopword tokens
// between stopwords and punctuation; word score = degree/frequency; phrase
// score = sum of member word scores. Output is sorted by score descending,
// ties broken lexicographically. Phrases longer than max_phrase_words are
// dropped from the output after scoring.
std::vector<RakePhrase> rake_extract(std::string_view input,
                                     const RakeConfig& config);

// Extracts keywords from "name. description. collection_name.
// collection_description." and appends the normalized full name and
// collection name verbatim. Throws ItemSkippedError when nothing survives.
ItemProfile build_item_profile(const Item& item, const RakeConfig& config);

}  // namespace trendrec
