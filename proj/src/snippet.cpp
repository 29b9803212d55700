#include "forge/acquire/snippet.hpp"

#include <algorithm>

#include "forge/common/rng.hpp"
#include "forge/common/text.hpp"

namespace forge::acquire {

namespace {

using corpus::Document;
using corpus::MarkupKind;
using corpus::MarkupSpan;

struct Block {
  std::size_t start, end;
  bool heading = false;
  bool figure = false;
  bool paragraph = false;
  std::size_t words = 0;
};

bool is_block_kind(MarkupKind k) {
  switch (k) {
    case MarkupKind::heading:
    case MarkupKind::paragraph:
    case MarkupKind::figure:
    case MarkupKind::list:
    case MarkupKind::caption:
    case MarkupKind::speaker:
      return true;
    default:
      return false;
  }
}

std::vector<Block> top_level_blocks(const Document& doc) {
  std::vector<const MarkupSpan*> top;
  for (const auto& s : doc.markup) {
    if (!is_block_kind(s.kind)) continue;
    bool nested = false;
    for (const auto& o : doc.markup) {
      if (&o == &s || !is_block_kind(o.kind)) continue;
      if (o.start <= s.start && s.end <= o.end && (o.start != s.start || o.end != s.end))
        nested = true;
    }
    if (!nested) top.push_back(&s);
  }
  std::stable_sort(top.begin(), top.end(), [](const MarkupSpan* a, const MarkupSpan* b) {
    if (a->start != b->start) return a->start < b->start;
    return a->end > b->end;
  });
  std::vector<Block> blocks;
  for (const MarkupSpan* s : top) {
    if (!blocks.empty() && blocks.back().start == s->start && blocks.back().end == s->end) {
      Block& b = blocks.back();
      b.heading |= s->kind == MarkupKind::heading;
      b.figure |= s->kind == MarkupKind::figure;
      b.paragraph |= s->kind == MarkupKind::paragraph;
      continue;
    }
    Block b;
    b.start = s->start;
    b.end = s->end;
    b.heading = s->kind == MarkupKind::heading;
    b.figure = s->kind == MarkupKind::figure;
    b.paragraph = s->kind == MarkupKind::paragraph;
    blocks.push_back(b);
  }
  for (auto& b : blocks)
    b.words = b.figure ? 0 : text::count_words(text::slice(doc.raw_text, b.start, b.end));
  return blocks;
}

}  // namespace

std::string_view to_string(SnippetReject r) {
  switch (r) {
    case SnippetReject::none: return "none";
    case SnippetReject::too_short: return "too_short";
    case SnippetReject::no_anchor: return "no_anchor";
    case SnippetReject::no_root: return "no_root";
    case SnippetReject::unreachable_size: return "unreachable_size";
  }
  return "none";
}

SnippetResult extract_snippet(const Document& doc, std::uint64_t rng_seed, std::size_t min_words,
                              std::size_t cap_words) {
  const std::vector<Block> blocks = top_level_blocks(doc);
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.words;

  if (total < min_words) return {std::nullopt, SnippetReject::too_short};

  if (total <= cap_words) {
    // Whole body; a snippet still never ends in a heading.
    std::size_t last = blocks.size();
    std::size_t words = total;
    Snippet s;
    s.provenance = {"whole_body"};
    while (last > 0 && blocks[last - 1].heading) {
      words -= blocks[last - 1].words;
      --last;
      s.provenance.push_back("dropped_trailing_heading");
    }
    if (last == 0 || words < min_words) return {std::nullopt, SnippetReject::too_short};
    s.doc_id = doc.id;
    s.start_char = blocks.front().start;
    s.end_char = blocks[last - 1].end;
    s.word_count = words;
    return {std::move(s), SnippetReject::none};
  }

  // Anchor candidates; for fiction a heading directly followed by another
  // heading is disallowed (front matter, tables of contents).
  std::vector<std::size_t> anchors;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!blocks[i].heading) continue;
    if (doc.genre == corpus::Genre::fiction && i + 1 < blocks.size() && blocks[i + 1].heading)
      continue;
    anchors.push_back(i);
  }

  Rng rng(rng_seed);
  rng.shuffle(anchors);

  for (std::size_t anchor : anchors) {
    std::size_t words = 0;
    std::size_t last = anchor;
    bool overshoot = false;
    for (std::size_t j = anchor; j < blocks.size(); ++j) {
      words += blocks[j].words;
      last = j;
      if (words > cap_words) {
        overshoot = true;
        break;
      }
    }
    Snippet s;
    s.doc_id = doc.id;
    s.provenance.push_back("anchor:" + std::to_string(anchor));
    if (overshoot) s.provenance.push_back("cap_exceeded_kept_block");
    // A snippet never ends in a heading whose following paragraph was cut.
    while (last > anchor && blocks[last].heading) {
      words -= blocks[last].words;
      --last;
      s.provenance.push_back("dropped_trailing_heading");
    }
    if (words < min_words || last == anchor) continue;
    s.start_char = blocks[anchor].start;
    s.end_char = blocks[last].end;
    s.word_count = words;
    s.anchor = text::trim(text::slice(doc.raw_text, blocks[anchor].start, blocks[anchor].end));
    return {std::move(s), SnippetReject::none};
  }
  return {std::nullopt, SnippetReject::no_anchor};
}

ThreadSampleResult sample_thread(const std::vector<ThreadNode>& root_candidates,
                                 std::uint64_t rng_seed, const ThreadSampleOptions& options) {
  std::vector<const ThreadNode*> eligible;
  for (const auto& r : root_candidates) {
    const std::size_t w = text::count_words(r.body);
    if (w >= options.root_min_words && w <= options.root_max_words) eligible.push_back(&r);
  }
  if (eligible.empty()) return {std::nullopt, SnippetReject::no_root};

  Rng rng(rng_seed);
  rng.shuffle(eligible);

  // Walk from the drawn root; when a root's reachable set cannot clear the
  // size window, the next seeded draw is tried.
  std::vector<const ThreadNode*> selected;
  std::size_t total = 0;
  bool reached = false;
  for (const ThreadNode* root : eligible) {
    selected = {root};
    std::vector<const ThreadNode*> frontier(root->children.size());
    for (std::size_t i = 0; i < root->children.size(); ++i) frontier[i] = &root->children[i];
    total = text::count_words(root->body);
    if (total > options.total_max_words) continue;
    while (total <= options.total_min_words && !frontier.empty()) {
      const std::size_t pick = rng.below(frontier.size());
      const ThreadNode* node = frontier[pick];
      frontier.erase(frontier.begin() + static_cast<long>(pick));
      const std::size_t w = text::count_words(node->body);
      if (total + w > options.total_max_words) continue;  // skip, draw another
      selected.push_back(node);
      total += w;
      for (const auto& c : node->children) frontier.push_back(&c);
    }
    if (total > options.total_min_words) {
      reached = true;
      break;
    }
  }
  if (!reached) return {std::nullopt, SnippetReject::unreachable_size};

  ThreadSample sample;
  sample.doc.genre = corpus::Genre::forum;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (i > 0) {
      sample.doc.raw_text += "\n\n";
      pos += 2;
    }
    const ThreadNode* post = selected[i];
    const std::size_t start = pos;
    sample.doc.raw_text += post->body;
    pos += text::scalar_count(post->body);
    MarkupSpan speaker{MarkupKind::speaker, start, pos, {}};
    if (!post->author.empty()) speaker.attrs["who"] = post->author;
    sample.doc.markup.push_back(speaker);
    sample.doc.markup.push_back({MarkupKind::paragraph, start, pos, {}});
    sample.post_ids.push_back(post->id);
    sample.snippet.provenance.push_back("post:" + post->id);
  }
  sample.doc.id = selected.front()->id;
  sample.snippet.doc_id = selected.front()->id;
  sample.snippet.start_char = 0;
  sample.snippet.end_char = pos;
  sample.snippet.word_count = total;
  return {std::move(sample), SnippetReject::none};
}

}  // namespace forge::acquire
