#include "forge/common/text.hpp"

#include <algorithm>
#include <array>

namespace forge::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes the scalar starting at byte i; advances i past it.
char32_t decode_one(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t c = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    c = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    c = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    c = b0 & 0x07;
  } else {
    ++i;
    return kReplacement;
  }
  if (i + len > s.size()) {
    ++i;
    return kReplacement;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return kReplacement;
    }
    c = (c << 6) | (b & 0x3F);
  }
  i += len;
  return c;
}

// Non-ASCII punctuation we care about in web text. Everything else above
// 0x7F that is not a space counts as a letter; a full Unicode category table
// is not needed for the markup kinds and genres handled here.
bool is_extended_punct(char32_t c) {
  switch (c) {
    case 0x00A1:  // inverted exclamation
    case 0x00AB:  // left guillemet
    case 0x00B7:  // middle dot
    case 0x00BB:  // right guillemet
    case 0x00BF:  // inverted question
    case 0x2010:
    case 0x2011:
    case 0x2012:
    case 0x2013:  // en dash
    case 0x2014:  // em dash
    case 0x2015:
    case 0x2018:
    case 0x2019:  // curly apostrophe (letter-joining handled by tokenizer)
    case 0x201A:
    case 0x201C:
    case 0x201D:
    case 0x201E:
    case 0x2022:  // bullet
    case 0x2026:  // ellipsis
    case 0x2039:
    case 0x203A:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<char32_t> decode(std::string_view utf8) {
  std::vector<char32_t> out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) out.push_back(decode_one(utf8, i));
  return out;
}

std::size_t scalar_count(std::string_view utf8) {
  std::size_t i = 0, n = 0;
  while (i < utf8.size()) {
    decode_one(utf8, i);
    ++n;
  }
  return n;
}

std::vector<std::size_t> scalar_byte_starts(std::string_view utf8) {
  std::vector<std::size_t> starts;
  starts.reserve(utf8.size() + 1);
  std::size_t i = 0;
  while (i < utf8.size()) {
    starts.push_back(i);
    decode_one(utf8, i);
  }
  starts.push_back(utf8.size());
  return starts;
}

std::string slice(std::string_view utf8, std::size_t start, std::size_t end) {
  if (start >= end) return {};
  std::size_t i = 0, n = 0;
  std::size_t byte_start = utf8.size();
  while (i < utf8.size() && n < end) {
    if (n == start) byte_start = i;
    decode_one(utf8, i);
    ++n;
  }
  const std::size_t byte_end = (n >= end) ? i : utf8.size();
  if (byte_start >= byte_end) return {};
  return std::string(utf8.substr(byte_start, byte_end - byte_start));
}

std::string encode(char32_t c) {
  std::string out;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
  return out;
}

std::string encode(const std::u32string& s) {
  std::string out;
  for (char32_t c : s) out += encode(c);
  return out;
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\v':
    case U'\f':
    case 0x00A0:
    case 0x2028:
    case 0x2029:
    case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_letter(char32_t c) {
  if (c < 0x80) return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
  return !is_space(c) && !is_extended_punct(c);
}

bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }

std::size_t count_words(std::string_view utf8) {
  std::size_t words = 0;
  bool in_word = false;
  std::size_t i = 0;
  while (i < utf8.size()) {
    const char32_t c = decode_one(utf8, i);
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  return words;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (static_cast<unsigned char>(s[a]) <= ' ')) ++a;
  while (b > a && (static_cast<unsigned char>(s[b - 1]) <= ' ')) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace forge::text
