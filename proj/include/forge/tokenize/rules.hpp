#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::tokenize {

enum class RuleAction { keep_together, split_at, retag_hint };

// Postprocessing rule over the token sequence. Patterns are full-match
// regular expressions over the surface string. keep_together merges maximal
// runs of adjacent, text-contiguous tokens whose joined surface matches;
// split_at splits a matching token at the given relative scalar offsets;
// retag_hint stamps the xpos of a matching token.
struct TokenRule {
  std::string id;
  std::optional<corpus::Genre> genre;  // rule fires only on this genre if set
  std::string pattern;
  RuleAction action = RuleAction::keep_together;
  std::vector<std::size_t> offsets;  // split_at
  std::string tag;                   // retag_hint
  int priority = 0;
};

// Parse/serialize the JSON rule file: an array of
// {id, genre?, pattern, action, offsets?, tag?, priority}.
std::vector<TokenRule> rules_from_json(std::string_view json_text);
std::string rules_to_json(const std::vector<TokenRule>& rules);

// Keep only rules applicable to a genre (no genre restriction, or matching).
std::vector<TokenRule> rules_for_genre(const std::vector<TokenRule>& rules, corpus::Genre genre);

// Applies rules in descending priority order, each over the whole sequence,
// left to right. Re-indexes the result; offsets always reference `text`.
// Throws Error("rule") naming the rule when a split would produce an empty
// token, Error("rule-file") for non-unique priorities or broken patterns.
std::vector<corpus::Token> apply_rules(std::string_view text,
                                       const std::vector<corpus::Token>& tokens,
                                       const std::vector<TokenRule>& rules);

}  // namespace forge::tokenize
