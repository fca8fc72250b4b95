#include "trendrec/text.hpp"

#include <cctype>

namespace trendrec::text {

bool is_word_char(unsigned char c) {
  return c >= 0x80 || std::isalnum(c);
}

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                           : static_cast<char>(c));
  }
  return out;
}

std::string normalize_phrase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                           : static_cast<char>(c));
  }
  return out;
}

std::vector<std::string> words(std::string_view s, std::size_t min_chars) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (current.size() >= min_chars) out.push_back(current);
    current.clear();
  };
  for (unsigned char c : s) {
    if (is_word_char(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                                 : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(' ', start);
    if (end == std::string_view::npos) end = s.size();
    if (end > start) out.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace trendrec::text
