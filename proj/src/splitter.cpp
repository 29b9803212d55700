#include "forge/split/splitter.hpp"

#include <algorithm>

#include "forge/common/error.hpp"
#include "forge/common/text.hpp"
#include "forge/tokenize/tokenizer.hpp"

namespace forge::split {

namespace {

using corpus::DepArc;
using corpus::MarkupKind;
using corpus::MarkupSpan;
using corpus::Sentence;
using corpus::SentenceType;
using corpus::Token;

bool is_terminal_punct(const std::string& form) {
  if (form.empty()) return false;
  if (form == "\xE2\x80\xA6") return true;  // …
  for (char c : form)
    if (c != '.' && c != '!' && c != '?') return false;
  return true;
}

bool is_closer(const std::string& form) {
  return form == ")" || form == "]" || form == "\"" || form == "'" ||
         form == "\xE2\x80\x9D" ||  // ”
         form == "\xE2\x80\x99" ||  // ’
         form == "\xC2\xBB";        // »
}

std::string strip_period(const std::string& form) {
  if (!form.empty() && form.back() == '.') return form.substr(0, form.size() - 1);
  return form;
}

bool is_wh_word(const std::string& low) {
  return low == "who" || low == "what" || low == "when" || low == "where" || low == "why" ||
         low == "which" || low == "how" || low == "whom" || low == "whose";
}

bool is_finite_tag(const std::string& xpos) {
  return xpos == "VBD" || xpos == "VBP" || xpos == "VBZ" || xpos == "MD";
}

bool is_punct_form(const std::string& form) {
  for (char32_t c : text::decode(form))
    if (text::is_alnum(c)) return false;
  return true;
}

}  // namespace

std::set<std::size_t> detect_boundaries(const std::vector<Token>& tokens,
                                        const std::vector<std::string>& xpos,
                                        const SplitterOptions& options) {
  if (xpos.size() != tokens.size())
    throw Error("alignment", "xpos tags do not align with tokens: " +
                                 std::to_string(xpos.size()) + " vs " +
                                 std::to_string(tokens.size()));
  const auto& abbrevs = options.abbreviations.empty() ? tokenize::default_abbreviations()
                                                      : options.abbreviations;
  std::set<std::size_t> starts;
  if (tokens.empty()) return starts;
  starts.insert(0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& form = tokens[i].form;
    if (!is_terminal_punct(form)) continue;
    // "Mr. Smith": a lone period after an abbreviation does not end the
    // sentence. Abbreviation tokens with the period attached are not
    // terminal punctuation in the first place.
    if (form == "." && i > 0) {
      const std::string prev = text::lower_ascii(strip_period(tokens[i - 1].form));
      if (abbrevs.count(prev)) continue;
    }
    std::size_t j = i;
    while (j + 1 < tokens.size() && is_closer(tokens[j + 1].form)) ++j;
    if (j + 1 < tokens.size()) starts.insert(j + 1);
  }
  return starts;
}

std::set<std::size_t> force_boundaries(std::set<std::size_t> starts,
                                       const std::vector<Token>& tokens,
                                       const std::vector<MarkupSpan>& markup) {
  if (tokens.empty()) return {};
  starts.insert(0);
  for (const auto& span : markup) {
    switch (span.kind) {
      case MarkupKind::paragraph:
      case MarkupKind::heading:
      case MarkupKind::caption:
      case MarkupKind::item:
      case MarkupKind::speaker:
        break;
      default:
        continue;
    }
    const std::size_t kNone = static_cast<std::size_t>(-1);
    std::size_t first = kNone, last = kNone;
    for (std::size_t t = 0; t < tokens.size(); ++t)
      if (tokens[t].start >= span.start && tokens[t].end <= span.end) {
        if (first == kNone) first = t;
        last = t;
      }
    if (first == kNone) continue;
    starts.insert(first);
    if (last + 1 < tokens.size()) starts.insert(last + 1);
  }
  // Drop anything out of range.
  std::set<std::size_t> clipped;
  for (std::size_t s : starts)
    if (s < tokens.size()) clipped.insert(s);
  return clipped;
}

SentenceType classify_sentence_type(const std::vector<Token>& tokens,
                                    const std::vector<std::string>& xpos,
                                    const std::vector<DepArc>* arcs) {
  if (xpos.size() != tokens.size())
    throw Error("alignment", "xpos tags do not align with tokens");
  if (tokens.empty()) return SentenceType::other;

  const std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t first_word = kNone;
  std::size_t last_word = kNone;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (!is_punct_form(tokens[i].form)) {
      if (first_word == kNone) first_word = i;
      last_word = i;
    }

  const std::string last_form = tokens.back().form;
  const bool ends_question = last_form == "?" || last_form == "?!" || last_form == "!?";

  if (ends_question) {
    if (first_word != kNone && is_wh_word(text::lower_ascii(tokens[first_word].form)))
      return SentenceType::wh;
    return SentenceType::q;
  }

  // Root-based subordinate/infinitival detection when arcs are available.
  if (arcs) {
    long root = -1;
    std::size_t lo = tokens.front().index, hi = tokens.back().index;
    for (const auto& a : *arcs)
      if (a.head == corpus::kRootHead && a.dependent >= lo && a.dependent <= hi)
        root = static_cast<long>(a.dependent);
    if (root >= 0) {
      const std::size_t root_local = static_cast<std::size_t>(root) - lo;
      std::string to_mark;
      bool has_mark = false;
      for (const auto& a : *arcs) {
        if (a.head == root && a.dependent >= lo && a.dependent <= hi && a.deprel == "mark") {
          has_mark = true;
          if (text::lower_ascii(tokens[a.dependent - lo].form) == "to") to_mark = "to";
        }
      }
      if (root_local < xpos.size()) {
        if (has_mark && to_mark == "to" && xpos[root_local] == "VB") return SentenceType::inf;
        if (has_mark && xpos[root_local] != "VB") return SentenceType::sub;
      }
    }
  }

  // Imperative: base-form verb opens the sentence.
  if (first_word != kNone && xpos[first_word] == "VB") return SentenceType::imp;

  bool any_finite = false;
  bool all_interjections = last_word != kNone;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_finite_tag(xpos[i])) any_finite = true;
    if (!is_punct_form(tokens[i].form) && xpos[i] != "UH") all_interjections = false;
  }
  if (!any_finite) {
    if (all_interjections && first_word != kNone) return SentenceType::intj;
    return SentenceType::frag;
  }
  return SentenceType::decl;
}

namespace {

std::vector<Sentence> build_sentences(const std::set<std::size_t>& starts,
                                      const std::vector<Token>& tokens,
                                      const std::vector<std::string>& xpos) {
  std::vector<Sentence> out;
  if (tokens.empty()) return out;
  std::vector<std::size_t> ordered(starts.begin(), starts.end());
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    const std::size_t first = ordered[k];
    const std::size_t last = (k + 1 < ordered.size() ? ordered[k + 1] : tokens.size()) - 1;
    std::vector<Token> sent_tokens(tokens.begin() + first, tokens.begin() + last + 1);
    std::vector<std::string> sent_tags(xpos.begin() + first, xpos.begin() + last + 1);
    Sentence s;
    s.first_token = first;
    s.last_token = last;
    s.stype = classify_sentence_type(sent_tokens, sent_tags);
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<Sentence> split_sentences(const std::vector<Token>& tokens,
                                      const std::vector<std::string>& xpos,
                                      const std::vector<MarkupSpan>& markup,
                                      const SplitterOptions& options) {
  auto starts = force_boundaries(detect_boundaries(tokens, xpos, options), tokens, markup);
  return build_sentences(starts, tokens, xpos);
}

std::vector<Sentence> split_sentences_with(const std::set<std::size_t>& starts,
                                           const std::vector<Token>& tokens,
                                           const std::vector<std::string>& xpos,
                                           const std::vector<MarkupSpan>& markup) {
  if (xpos.size() != tokens.size())
    throw Error("alignment", "xpos tags do not align with tokens");
  auto forced = force_boundaries(starts, tokens, markup);
  return build_sentences(forced, tokens, xpos);
}

}  // namespace forge::split
