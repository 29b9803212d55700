#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::acquire {

enum class FilterReason {
  ok,
  no_fiction_keyword,
  archaic_form,
  broken_hyphenation,
  stoplist_hit,
  link_density,
  email_density,
  too_short,
  boilerplate_only,
};

std::string_view to_string(FilterReason r);

struct FilterVerdict {
  bool accepted = true;
  FilterReason reason = FilterReason::ok;
  std::string detail;  // offending form / measured counts

  static FilterVerdict accept() { return {}; }
  static FilterVerdict reject(FilterReason r, std::string detail = {}) {
    return {false, r, std::move(detail)};
  }
};

struct ThreadNode {
  std::string id;
  std::string author;
  std::string body;
  std::vector<ThreadNode> children;
};

// Built-in archaic forms; matches against these report archaic_form, matches
// against additional stoplist entries report stoplist_hit.
const std::set<std::string>& archaic_forms();

// Rejects when "fiction" is missing from the metadata keywords, when an
// archaic or stoplisted form occurs as a whole word, or when a line ends in
// a word-internal hyphen ("disre-"). Stoplist entries must be lowercase.
FilterVerdict screen_fiction(std::string_view body_text,
                             const std::set<std::string>& metadata_keywords,
                             const std::set<std::string>& stoplist);

// Rejects when URL tokens / total tokens > max_link_ratio, or when more than
// max_email_count email-shaped tokens occur, counted over all post bodies.
FilterVerdict screen_forum(const ThreadNode& thread, double max_link_ratio,
                           std::size_t max_email_count);

// One lowercase form per line; blank lines and '#' comments skipped.
std::set<std::string> stoplist_from_text(std::string_view content);

}  // namespace forge::acquire
