#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace forge::text {

// All offsets in the data model are counted in Unicode scalar values, not
// bytes. The helpers below translate between the two. Decoding is permissive:
// an invalid byte decodes to U+FFFD and advances one byte, so every function
// is total on arbitrary input.

std::size_t scalar_count(std::string_view utf8);
std::vector<char32_t> decode(std::string_view utf8);

// Byte offset of each scalar, plus one past-the-end entry (size = count + 1).
std::vector<std::size_t> scalar_byte_starts(std::string_view utf8);

// Substring by scalar offsets [start, end). Clamps to the text length.
std::string slice(std::string_view utf8, std::size_t start, std::size_t end);

std::string encode(char32_t c);
std::string encode(const std::u32string& s);

bool is_space(char32_t c);
bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_alnum(char32_t c);

// Whitespace-delimited maximal non-whitespace runs.
std::size_t count_words(std::string_view utf8);

std::string lower_ascii(std::string_view s);
std::string trim(std::string_view s);

}  // namespace forge::text
