#include <set>
#include <sstream>
#include <string>
#include <unordered_map>

#include "trendrec/generated/lexicon_en.hpp"
#include "trendrec/generated/stopwords_en.hpp"

namespace trendrec {

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> stopwords = [] {
    std::set<std::string> out;
    std::istringstream in{detail::kStopwordsEn};
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
        line.pop_back();
      }
      if (!line.empty()) out.insert(line);
    }
    return out;
  }();
  return stopwords;
}

const std::unordered_map<std::string, double>& default_lexicon() {
  static const std::unordered_map<std::string, double> lexicon = [] {
    std::unordered_map<std::string, double> out;
    std::istringstream in{detail::kLexiconEn};
    std::string line;
    while (std::getline(in, line)) {
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      out[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
    }
    return out;
  }();
  return lexicon;
}

}  // namespace trendrec
