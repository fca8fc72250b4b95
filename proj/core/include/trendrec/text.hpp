#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace trendrec::text {

// Character classes are ASCII; bytes >= 0x80 (UTF-8 continuations and leads)
// count as word characters and pass through untouched.
bool is_word_char(unsigned char c);
bool is_space(unsigned char c);

std::string to_lower(std::string_view s);

// Lowercase + trim + collapse internal whitespace runs to single spaces.
std::string normalize_phrase(std::string_view s);

// Maximal runs of word characters, lowercased. Tokens shorter than min_chars
// are dropped.
std::vector<std::string> words(std::string_view s, std::size_t min_chars = 1);

// Splits an already-normalized phrase on single spaces.
std::vector<std::string> split_ws(std::string_view s);

}  // namespace trendrec::text
