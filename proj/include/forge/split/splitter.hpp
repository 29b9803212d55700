#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::split {

struct SplitterOptions {
  // Lowercased abbreviations without the trailing period; a "." token after
  // one of these, or an attached "xyz." token listed here, never ends a
  // sentence.
  std::set<std::string> abbreviations;
};

// Sentence starts from terminal punctuation (. ! ? and ellipses, with
// closing quotes/brackets pulled into the sentence), abbreviation-aware.
std::set<std::size_t> detect_boundaries(const std::vector<corpus::Token>& tokens,
                                        const std::vector<std::string>& xpos,
                                        const SplitterOptions& options = {});

// Mandatory constraint pass: adds sentence starts at every paragraph,
// heading, caption, item and speaker edge (plus token 0). Never removes a
// start. External boundary predictions enter through `starts`.
std::set<std::size_t> force_boundaries(std::set<std::size_t> starts,
                                       const std::vector<corpus::Token>& tokens,
                                       const std::vector<corpus::MarkupSpan>& markup);

// detect + force + classify. xpos must align 1:1 with tokens
// (Error("alignment") otherwise); empty strings are allowed tags.
std::vector<corpus::Sentence> split_sentences(const std::vector<corpus::Token>& tokens,
                                              const std::vector<std::string>& xpos,
                                              const std::vector<corpus::MarkupSpan>& markup,
                                              const SplitterOptions& options = {});

// Same, but seeded with external boundary predictions instead of the
// built-in detector.
std::vector<corpus::Sentence> split_sentences_with(const std::set<std::size_t>& starts,
                                                   const std::vector<corpus::Token>& tokens,
                                                   const std::vector<std::string>& xpos,
                                                   const std::vector<corpus::MarkupSpan>& markup);

// Deterministic rule cascade over one sentence. `tokens`/`xpos` cover just
// the sentence; `arcs` (document-wide, optional) refine sub/inf detection.
corpus::SentenceType classify_sentence_type(const std::vector<corpus::Token>& tokens,
                                            const std::vector<std::string>& xpos,
                                            const std::vector<corpus::DepArc>* arcs = nullptr);

}  // namespace forge::split
