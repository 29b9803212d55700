#include "forge/tokenize/tokenizer.hpp"

#include <algorithm>

#include "forge/common/text.hpp"

namespace forge::tokenize {

namespace {

using corpus::MarkupKind;
using corpus::MarkupSpan;
using corpus::Token;

bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

// (letter '.')+ shape, e.g. U.S — single letters alternating with periods.
bool acronym_shape(const std::vector<char32_t>& s, std::size_t start, std::size_t end) {
  if (end <= start) return false;
  for (std::size_t i = start; i < end; ++i) {
    const bool letter_pos = ((i - start) % 2) == 0;
    if (letter_pos && !text::is_letter(s[i])) return false;
    if (!letter_pos && s[i] != U'.') return false;
  }
  return text::is_letter(s[end - 1]) || s[end - 1] == U'.';
}

std::string lower_form(const std::vector<char32_t>& s, std::size_t start, std::size_t end) {
  std::u32string u;
  for (std::size_t i = start; i < end; ++i) {
    char32_t c = s[i];
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    u += c;
  }
  return text::encode(u);
}

struct RawSpan {
  std::size_t start;
  std::size_t end;
};

}  // namespace

const std::set<std::string>& default_abbreviations() {
  static const std::set<std::string> abbrevs = {
      "mr",  "mrs", "ms",  "dr",   "prof", "st",  "mt",  "etc", "vs",  "cf",
      "al",  "fig", "no",  "vol",  "pp",   "ca",  "jan", "feb", "mar", "apr",
      "jun", "jul", "aug", "sep",  "sept", "oct", "nov", "dec", "inc", "ltd",
      "co",  "corp", "dept", "univ", "ed",  "eds", "approx", "est"};
  return abbrevs;
}

std::vector<Token> tokenize(std::string_view raw, const std::vector<MarkupSpan>& markup,
                            const TokenizerOptions& options) {
  const auto& abbrevs =
      options.abbreviations.empty() ? default_abbreviations() : options.abbreviations;
  const std::vector<char32_t> s = text::decode(raw);
  const std::size_t n = s.size();

  // Hard boundaries a token may not cross.
  std::vector<std::size_t> hard;
  for (const auto& span : markup) {
    if (span.kind == MarkupKind::heading || span.kind == MarkupKind::paragraph ||
        span.kind == MarkupKind::caption || span.kind == MarkupKind::speaker) {
      hard.push_back(span.start);
      hard.push_back(span.end);
    }
  }
  std::sort(hard.begin(), hard.end());
  hard.erase(std::unique(hard.begin(), hard.end()), hard.end());
  auto next_hard = [&](std::size_t i) {
    auto it = std::upper_bound(hard.begin(), hard.end(), i);
    return it == hard.end() ? n : std::min(*it, n);
  };

  std::vector<RawSpan> spans;
  std::size_t i = 0;
  while (i < n) {
    if (text::is_space(s[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const std::size_t limit = next_hard(i);
    std::size_t j = i + 1;
    if (text::is_alnum(s[i])) {
      while (j < limit) {
        const char32_t c = s[j];
        if (text::is_alnum(c)) {
          ++j;
        } else if ((c == U'.' || c == U',' || c == U':') && j + 1 < limit &&
                   text::is_digit(s[j - 1]) && text::is_digit(s[j + 1])) {
          ++j;  // 3.14  1,000  9:30
        } else if (c == U'.' && j + 1 < limit && text::is_letter(s[j + 1]) &&
                   acronym_shape(s, start, j)) {
          ++j;  // U.S
        } else if (c == U'-' && j + 1 < limit && text::is_letter(s[j - 1]) &&
                   text::is_letter(s[j + 1])) {
          ++j;  // state-of-the-art
        } else if (is_apostrophe(c) && j + 1 < limit && text::is_letter(s[j - 1]) &&
                   text::is_letter(s[j + 1])) {
          ++j;  // don't, o'clock (clitics split below)
        } else {
          break;
        }
      }
      // Attach a trailing period to abbreviations, single letters and
      // dotted acronyms.
      if (j < limit && s[j] == U'.') {
        const bool single_letter = (j - start == 1) && text::is_letter(s[start]);
        const bool acronym = acronym_shape(s, start, j) && (j - start) >= 3;
        if (single_letter || acronym || abbrevs.count(lower_form(s, start, j))) ++j;
      }
    } else {
      // Group runs of '.' and '-' ("...", "--"); other punctuation stands alone.
      if (s[i] == U'.' || s[i] == U'-')
        while (j < limit && s[j] == s[i]) ++j;
    }
    spans.push_back({start, j});
    i = j;
  }

  // Clitic pass, over scalars so curly apostrophes behave like ASCII ones.
  std::vector<RawSpan> final_spans;
  final_spans.reserve(spans.size());
  auto low_at = [&](std::size_t i) {
    char32_t c = s[i];
    return (c >= U'A' && c <= U'Z') ? c - U'A' + U'a' : c;
  };
  for (const auto& sp : spans) {
    const std::size_t len = sp.end - sp.start;
    const std::string low = lower_form(s, sp.start, sp.end);
    auto push_split = [&](std::size_t split_scalars_from_end) {
      final_spans.push_back({sp.start, sp.end - split_scalars_from_end});
      final_spans.push_back({sp.end - split_scalars_from_end, sp.end});
    };
    const char32_t last = len ? low_at(sp.end - 1) : 0;
    const char32_t last2 = len > 1 ? low_at(sp.end - 2) : 0;
    if (len > 3 && is_apostrophe(s[sp.end - 2]) && low_at(sp.end - 3) == U'n' && last == U't') {
      push_split(3);  // do|n't, wo|n't
    } else if (len > 2 && is_apostrophe(s[sp.end - 2]) &&
               (last == U's' || last == U'd' || last == U'm')) {
      push_split(2);  // John|'s, I|'m, she|'d
    } else if (len > 3 && is_apostrophe(s[sp.end - 3]) &&
               ((last2 == U'r' && last == U'e') || (last2 == U'v' && last == U'e') ||
                (last2 == U'l' && last == U'l'))) {
      push_split(3);  // they|'re, we|'ve, he|'ll
    } else if (low == "cannot") {
      push_split(3);
    } else if (low == "gonna" || low == "wanna" || low == "gotta") {
      push_split(2);
    } else {
      final_spans.push_back(sp);
    }
  }

  std::vector<Token> out;
  out.reserve(final_spans.size());
  const auto bytes = text::scalar_byte_starts(raw);
  for (std::size_t k = 0; k < final_spans.size(); ++k) {
    Token t;
    t.index = k;
    t.start = final_spans[k].start;
    t.end = final_spans[k].end;
    t.form = std::string(raw.substr(bytes[t.start], bytes[t.end] - bytes[t.start]));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace forge::tokenize
