#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::tokenize {

struct TokenizerOptions {
  // Lowercased abbreviations without the trailing period ("mr", "etc", ...).
  // A trailing period is attached to a word when word+'.' is listed here.
  std::set<std::string> abbreviations;
};

const std::set<std::string>& default_abbreviations();

// Rule-based segmentation over Unicode scalars. Guarantees:
//  - tokens cover every non-whitespace scalar exactly once, in order;
//  - no token crosses a heading/paragraph/caption/speaker span boundary;
//  - English clitics split per Penn conventions (do|n't, John|'s, can|not).
// Alphanumeric runs stay whole ("9AM", "B2"), as do digit groups joined by
// . , : ("3.14", "1,000", "9:30"), letter runs joined by single hyphens or
// apostrophes, and dotted acronyms ("U.S."). Runs of '.' or '-' form one
// token ("...", "--"); any other punctuation scalar is its own token.
std::vector<corpus::Token> tokenize(std::string_view text,
                                    const std::vector<corpus::MarkupSpan>& markup,
                                    const TokenizerOptions& options = {});

}  // namespace forge::tokenize
