#pragma once

#include <string>
#include <vector>

#include "forge/common/rng.hpp"
#include "forge/corpus/blocks.hpp"
#include "forge/corpus/types.hpp"
#include "forge/metrics/coref.hpp"

namespace forge::testgen {

// Random words (some with unicode), sentences, punctuation.
std::string random_word(Rng& rng);
std::string random_text(Rng& rng, std::size_t max_scalars = 400);

// A random block-structured body (headings, paragraphs, lists, turns).
std::vector<corpus::BlockSpec> random_blocks(Rng& rng, std::size_t min_blocks = 1,
                                             std::size_t max_blocks = 6);

struct DocGenOptions {
  bool with_sentences = true;
  bool with_arcs = false;
  bool with_entities = false;
  bool with_edus = false;
  bool with_rst = false;
  std::size_t max_blocks = 6;
};

// A fully consistent random document: text+markup assembled from random
// blocks, tokens from the real tokenizer, sentences from the real splitter,
// and optional random-but-valid higher layers.
corpus::Document random_document(Rng& rng, const DocGenOptions& options = {});

// Convention-conforming random RST tree over EDUs 1..n (mononuclear nodes:
// nucleus child carries "span", satellite carries a satellite relation;
// multinuclear nodes: all-nucleus children sharing one multinuclear
// relation). Root carries nuc=root and an empty label.
corpus::RstNode random_rst_tree(Rng& rng, int n_edus);

// Internal non-root nodes of a tree, as mutable pointers (for flip fixtures).
std::vector<corpus::RstNode*> internal_nodes(corpus::RstNode& root);

// Random coreference side: chains over a shared span universe.
std::vector<metrics::Chain> random_chains(Rng& rng, std::size_t max_mentions,
                                          std::size_t max_chains);

}  // namespace forge::testgen
