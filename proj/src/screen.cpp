#include "forge/acquire/screen.hpp"

#include <regex>

#include "forge/common/error.hpp"
#include "forge/common/text.hpp"

namespace forge::acquire {

std::string_view to_string(FilterReason r) {
  switch (r) {
    case FilterReason::ok: return "ok";
    case FilterReason::no_fiction_keyword: return "no_fiction_keyword";
    case FilterReason::archaic_form: return "archaic_form";
    case FilterReason::broken_hyphenation: return "broken_hyphenation";
    case FilterReason::stoplist_hit: return "stoplist_hit";
    case FilterReason::link_density: return "link_density";
    case FilterReason::email_density: return "email_density";
    case FilterReason::too_short: return "too_short";
    case FilterReason::boilerplate_only: return "boilerplate_only";
  }
  return "ok";
}

const std::set<std::string>& archaic_forms() {
  static const std::set<std::string> forms = {"thou", "thee", "thy", "hath", "doth", "ye"};
  return forms;
}

FilterVerdict screen_fiction(std::string_view body_text,
                             const std::set<std::string>& metadata_keywords,
                             const std::set<std::string>& stoplist) {
  bool has_fiction = false;
  for (const auto& k : metadata_keywords)
    if (text::lower_ascii(k) == "fiction") {
      has_fiction = true;
      break;
    }
  if (!has_fiction) return FilterVerdict::reject(FilterReason::no_fiction_keyword);

  // Whole-word scan over maximal letter runs.
  const auto scalars = text::decode(body_text);
  std::size_t i = 0;
  while (i < scalars.size()) {
    if (!text::is_letter(scalars[i])) {
      ++i;
      continue;
    }
    std::u32string w;
    while (i < scalars.size() && text::is_letter(scalars[i])) {
      char32_t c = scalars[i];
      if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
      w += c;
      ++i;
    }
    const std::string word = text::encode(w);
    if (archaic_forms().count(word))
      return FilterVerdict::reject(FilterReason::archaic_form, word);
    if (stoplist.count(word)) return FilterVerdict::reject(FilterReason::stoplist_hit, word);
  }

  // Word-internal trailing hyphen at end of line ("disre-\ngard").
  for (std::size_t k = 0; k + 1 < scalars.size(); ++k) {
    if (scalars[k] != U'-') continue;
    const bool at_eol = scalars[k + 1] == U'\n' || scalars[k + 1] == U'\r';
    if (at_eol && k > 0 && text::is_letter(scalars[k - 1]))
      return FilterVerdict::reject(FilterReason::broken_hyphenation);
  }
  return FilterVerdict::accept();
}

namespace {

void concat_bodies(const ThreadNode& node, std::string& out) {
  if (!out.empty()) out += "\n";
  out += node.body;
  for (const auto& c : node.children) concat_bodies(c, out);
}

bool looks_like_url(const std::string& tok) {
  return tok.rfind("http://", 0) == 0 || tok.rfind("https://", 0) == 0 ||
         tok.rfind("www.", 0) == 0;
}

bool looks_like_email(const std::string& tok) {
  static const std::regex re(R"(^[^@\s]+@[^@\s]+\.[A-Za-z]{2,}[[:punct:]]?$)");
  return std::regex_match(tok, re);
}

}  // namespace

FilterVerdict screen_forum(const ThreadNode& thread, double max_link_ratio,
                           std::size_t max_email_count) {
  if (!(max_link_ratio > 0.0 && max_link_ratio <= 1.0))
    throw Error("config", "max_link_ratio must lie in (0,1]");

  std::string all;
  concat_bodies(thread, all);

  std::size_t total = 0, links = 0, emails = 0;
  std::size_t pos = 0;
  while (pos < all.size()) {
    while (pos < all.size() && static_cast<unsigned char>(all[pos]) <= ' ') ++pos;
    if (pos >= all.size()) break;
    std::size_t end = pos;
    while (end < all.size() && static_cast<unsigned char>(all[end]) > ' ') ++end;
    const std::string tok = all.substr(pos, end - pos);
    ++total;
    if (looks_like_url(tok)) ++links;
    if (looks_like_email(tok)) ++emails;
    pos = end;
  }

  if (total > 0 && static_cast<double>(links) / static_cast<double>(total) > max_link_ratio)
    return FilterVerdict::reject(
        FilterReason::link_density,
        std::to_string(links) + "/" + std::to_string(total) + " url tokens");
  if (emails > max_email_count)
    return FilterVerdict::reject(FilterReason::email_density,
                                 std::to_string(emails) + " email tokens");
  return FilterVerdict::accept();
}

std::set<std::string> stoplist_from_text(std::string_view content) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    std::string line = text::trim(content.substr(start, nl - start));
    if (!line.empty() && line[0] != '#') out.insert(text::lower_ascii(line));
    if (nl == content.size()) break;
    start = nl + 1;
  }
  return out;
}

}  // namespace forge::acquire
