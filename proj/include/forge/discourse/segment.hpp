#pragma once

#include <set>
#include <string>
#include <vector>

#include "forge/corpus/types.hpp"
#include "forge/corpus/validate.hpp"

namespace forge::discourse {

// Refines a candidate EDU segmentation (token ordinals where an EDU starts)
// with the mandatory constraints: every sentence start, and the first-token /
// past-last-token edge of every heading, caption and speaker span, becomes a
// boundary. Purely additive; candidates out of range are ignored. Idempotent.
std::vector<corpus::Edu> constrain_segmentation(const std::set<std::size_t>& candidate_starts,
                                                const std::vector<corpus::Token>& tokens,
                                                const std::vector<corpus::Sentence>& sentences,
                                                const std::vector<corpus::MarkupSpan>& markup);

// One token ordinal per line (external segmenter output).
std::set<std::size_t> boundaries_from_text(std::string_view content);
std::string boundaries_to_text(const std::set<std::size_t>& starts);

struct ExternalColumn {
  std::string name;
  std::vector<std::string> values;  // one per EDU
};

struct FeatureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_tsv() const;
};

// Per-EDU feature vectors: structural markup flags, genre and sentence-type
// one-hots, length bucket, position decile, plus pass-through external
// columns (discourse-function labels, sentiment, subjectivity, ...).
// Throws Error("alignment") when an external column length mismatches.
FeatureTable featurize_edus(const std::vector<corpus::Edu>& edus,
                            const std::vector<corpus::Token>& tokens,
                            const std::vector<corpus::Sentence>& sentences,
                            const std::vector<corpus::MarkupSpan>& markup, corpus::Genre genre,
                            const std::vector<ExternalColumn>& external = {});

// All RST well-formedness violations (leaf/EDU bijection, child tiling,
// nuclearity placement, multinuclear relation consistency, root coverage).
corpus::ValidationReport validate_rst_tree(const corpus::RstNode& tree,
                                           const std::vector<corpus::Edu>& edus);

}  // namespace forge::discourse
