#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/acquire/screen.hpp"
#include "forge/corpus/types.hpp"

namespace forge::acquire {

struct Snippet {
  std::string doc_id;
  std::size_t start_char = 0;
  std::size_t end_char = 0;
  std::size_t word_count = 0;
  std::optional<std::string> anchor;   // heading text the slice starts at
  std::vector<std::string> provenance; // applied rules, in order
};

enum class SnippetReject { none, too_short, no_anchor, no_root, unreachable_size };

std::string_view to_string(SnippetReject r);

struct SnippetResult {
  std::optional<Snippet> snippet;
  SnippetReject reject = SnippetReject::none;
};

// Word counter: whitespace-delimited runs over the top-level blocks; figure
// content contributes nothing. Whole body when the document already fits
// [min_words, cap_words]. Longer documents are sliced from a seeded-random
// main heading, accumulating whole blocks until the word total exceeds
// cap_words (the overshooting block is kept), then trailing headings whose
// following paragraph is not included are dropped. For fiction, a heading
// immediately followed by another heading is not an eligible anchor.
SnippetResult extract_snippet(const corpus::Document& doc, std::uint64_t rng_seed,
                              std::size_t min_words = 400, std::size_t cap_words = 1000);

struct ThreadSampleOptions {
  std::size_t root_min_words = 25;
  std::size_t root_max_words = 500;
  std::size_t total_min_words = 500;   // strict lower bound, see trace below
  std::size_t total_max_words = 1000;
};

struct ThreadSample {
  Snippet snippet;
  corpus::Document doc;  // assembled posts with speaker + paragraph spans
  std::vector<std::string> post_ids;
};

struct ThreadSampleResult {
  std::optional<ThreadSample> sample;
  SnippetReject reject = SnippetReject::none;
};

// Picks a seeded-random root post of root_min..root_max words, then keeps
// drawing a uniform untaken response reachable from the selected set. A draw
// that would push the total past total_max is discarded; the walk succeeds
// as soon as the total exceeds total_min (root 100 + three 200-word replies
// stops at 700 words, four posts). no_root when no root qualifies,
// unreachable_size when the reachable set cannot exceed total_min.
ThreadSampleResult sample_thread(const std::vector<ThreadNode>& root_candidates,
                                 std::uint64_t rng_seed, const ThreadSampleOptions& options = {});

}  // namespace forge::acquire
