#include "support/generators.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "forge/discourse/segment.hpp"
#include "forge/split/splitter.hpp"
#include "forge/tokenize/tokenizer.hpp"

namespace forge::testgen {

using corpus::BlockSpec;
using corpus::Document;
using corpus::MarkupKind;
using corpus::RstNode;

namespace {

const std::vector<std::string> kLexicon = {
    "the",   "quick",  "river",  "walked", "under",  "bridge", "stone",  "light",
    "seven", "harbor", "blue",   "signal", "garden", "quiet",  "winter", "path",
    "naïve", "café",   "Zürich", "answer", "travel", "north",  "window", "field"};

const std::vector<std::string> kPunct = {".", ",", "!", "?", ";", ":", "—", "–", "\"", "'"};

}  // namespace

std::string random_word(Rng& rng) {
  if (rng.chance(0.15)) {
    // Synthetic distinctive word.
    static const char* alpha = "abcdefghijklmnopqrstuvwxyz";
    std::string w;
    const std::size_t len = 3 + rng.below(8);
    for (std::size_t i = 0; i < len; ++i) w += alpha[rng.below(26)];
    if (rng.chance(0.2)) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  }
  std::string w = rng.pick(kLexicon);
  if (rng.chance(0.1)) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

std::string random_text(Rng& rng, std::size_t max_scalars) {
  std::string out;
  while (out.size() < max_scalars) {
    const double roll = rng.unit();
    if (roll < 0.55) {
      if (!out.empty() && out.back() != ' ' && out.back() != '\n') out += ' ';
      out += random_word(rng);
    } else if (roll < 0.70) {
      out += rng.pick(kPunct);
    } else if (roll < 0.80) {
      out += ' ';
    } else if (roll < 0.85) {
      out += '\n';
    } else if (roll < 0.93) {
      if (!out.empty() && out.back() != ' ') out += ' ';
      out += std::to_string(rng.below(10000));
    } else {
      if (!out.empty() && out.back() != ' ') out += ' ';
      out += rng.chance(0.5) ? "don't" : "9AM";
    }
  }
  return out;
}

namespace {

std::string sentence_of(Rng& rng, std::size_t words) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += random_word(rng);
  }
  s += rng.chance(0.8) ? "." : (rng.chance(0.5) ? "!" : "?");
  return s;
}

std::string paragraph_of(Rng& rng, std::size_t sentences) {
  std::string p;
  for (std::size_t i = 0; i < sentences; ++i) {
    if (i) p += ' ';
    p += sentence_of(rng, 3 + rng.below(9));
  }
  return p;
}

}  // namespace

std::vector<BlockSpec> random_blocks(Rng& rng, std::size_t min_blocks, std::size_t max_blocks) {
  const std::size_t n = min_blocks + rng.below(max_blocks - min_blocks + 1);
  std::vector<BlockSpec> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    BlockSpec b;
    const double roll = rng.unit();
    if (roll < 0.2) {
      b.kind = MarkupKind::heading;
      b.text = sentence_of(rng, 1 + rng.below(4));
    } else if (roll < 0.75) {
      b.kind = MarkupKind::paragraph;
      b.text = paragraph_of(rng, 1 + rng.below(4));
    } else if (roll < 0.85) {
      b.kind = MarkupKind::list;
      const std::size_t items = 2 + rng.below(3);
      for (std::size_t k = 0; k < items; ++k) b.items.push_back(sentence_of(rng, 2 + rng.below(4)));
    } else if (roll < 0.93) {
      b.kind = MarkupKind::caption;
      b.text = sentence_of(rng, 2 + rng.below(5));
    } else {
      b.kind = MarkupKind::speaker;
      b.who = random_word(rng);
      b.text = paragraph_of(rng, 1 + rng.below(3));
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

Document random_document(Rng& rng, const DocGenOptions& options) {
  Document doc;
  doc.id = "doc" + std::to_string(rng.below(1000000));
  doc.genre = rng.pick(std::vector<corpus::Genre>(corpus::kAllGenres.begin(),
                                                  corpus::kAllGenres.end()));
  doc.source = "generated";
  auto assembled = corpus::assemble_blocks(random_blocks(rng, 1, options.max_blocks));
  doc.raw_text = std::move(assembled.text);
  doc.markup = std::move(assembled.markup);

  auto tokens = tokenize::tokenize(doc.raw_text, doc.markup);
  if (tokens.empty()) {
    // Guarantee at least one token for layer generators.
    doc.raw_text = "alpha beta.";
    doc.markup = {{MarkupKind::paragraph, 0, 11, {}}};
    tokens = tokenize::tokenize(doc.raw_text, doc.markup);
  }
  // Random lemma/xpos annotations, exercising the lemma==form path.
  static const std::vector<std::string> kTags = {"NN", "VB", "DT", "JJ", "IN", "CD", "."};
  for (auto& t : tokens) {
    if (rng.chance(0.5)) t.lemma = rng.chance(0.5) ? t.form : random_word(rng);
    if (rng.chance(0.8)) t.xpos = rng.pick(kTags);
  }
  doc.tokens = std::move(tokens);

  if (!options.with_sentences) return doc;
  std::vector<std::string> tags;
  for (const auto& t : *doc.tokens) tags.push_back(t.xpos);
  doc.sentences = split::split_sentences(*doc.tokens, tags, doc.markup);

  if (options.with_arcs) {
    std::vector<corpus::DepArc> arcs;
    static const std::vector<std::string> kRels = {"nsubj", "obj", "det", "amod", "advmod"};
    for (const auto& s : *doc.sentences) {
      const std::size_t root = s.first_token + rng.below(s.last_token - s.first_token + 1);
      for (std::size_t t = s.first_token; t <= s.last_token; ++t) {
        if (t == root) {
          arcs.push_back({t, corpus::kRootHead, "root"});
        } else {
          std::size_t head = s.first_token + rng.below(s.last_token - s.first_token + 1);
          if (head == t) head = root;
          arcs.push_back({t, static_cast<long>(head), rng.pick(kRels)});
        }
      }
    }
    doc.arcs = std::move(arcs);
  }

  if (options.with_entities) {
    std::vector<corpus::EntityMention> mentions;
    const std::size_t n = doc.tokens->size();
    const std::size_t target = std::min<std::size_t>(1 + rng.below(6), n);
    // Non-crossing by construction: either nested inside the previous
    // mention or starting after it.
    std::size_t next_free = 0;
    for (std::size_t i = 0; i < target && next_free < n; ++i) {
      const std::size_t first = next_free + rng.below(n - next_free);
      const std::size_t last = first + rng.below(std::min<std::size_t>(n - first, 4));
      corpus::EntityMention m;
      m.id = "m" + std::to_string(mentions.size());
      m.first_token = first;
      m.last_token = last;
      m.etype = rng.pick(std::vector<corpus::EntityType>(corpus::kAllEntityTypes.begin(),
                                                         corpus::kAllEntityTypes.end()));
      mentions.push_back(m);
      if (last + 1 > first && rng.chance(0.3) && last > first) {
        corpus::EntityMention inner = m;
        inner.id = "m" + std::to_string(mentions.size());
        inner.first_token = first;
        inner.last_token = last - 1;
        inner.etype = rng.pick(std::vector<corpus::EntityType>(corpus::kAllEntityTypes.begin(),
                                                               corpus::kAllEntityTypes.end()));
        mentions.push_back(inner);
      }
      next_free = last + 1;
    }
    std::sort(mentions.begin(), mentions.end(), corpus::mention_before);
    for (std::size_t i = 0; i < mentions.size(); ++i) mentions[i].id = "m" + std::to_string(i);

    std::vector<corpus::CorefChain> chains;
    std::size_t i = 0;
    int chain_no = 0;
    while (i < mentions.size()) {
      const std::size_t size = 1 + rng.below(std::min<std::size_t>(mentions.size() - i, 3));
      if (size >= 2 || rng.chance(0.4)) {
        corpus::CorefChain c;
        c.id = "c" + std::to_string(chain_no++);
        for (std::size_t k = i; k < i + size; ++k) {
          c.mentions.push_back(mentions[k].id);
          mentions[k].chain = c.id;
        }
        chains.push_back(std::move(c));
      }
      i += size;
    }
    doc.mentions = std::move(mentions);
    doc.chains = std::move(chains);
  }

  if (options.with_edus) {
    std::set<std::size_t> candidates;
    const std::size_t n = doc.tokens->size();
    for (std::size_t c = 0; c < n / 4; ++c) candidates.insert(rng.below(n));
    doc.edus = discourse::constrain_segmentation(candidates, *doc.tokens, *doc.sentences,
                                                 doc.markup);
    if (options.with_rst && !doc.edus->empty())
      doc.rst = random_rst_tree(rng, static_cast<int>(doc.edus->size()));
  }
  return doc;
}

namespace {

const std::vector<std::string> kSatelliteRels = {"elaboration", "background", "cause",
                                                 "condition",   "purpose",    "evidence",
                                                 "concession"};
const std::vector<std::string> kMultinucRels = {"joint", "sequence", "contrast"};

RstNode build_tree(Rng& rng, int first, int last) {
  RstNode node;
  node.first_edu = first;
  node.last_edu = last;
  if (first == last) return node;  // leaf; parent assigns nuclearity/relation

  const int len = last - first + 1;
  const bool multinuclear = len >= 2 && rng.chance(0.3);
  if (multinuclear) {
    const int parts = 2 + static_cast<int>(rng.below(std::min(len - 1, 3)));
    std::set<int> cuts;
    while (static_cast<int>(cuts.size()) < parts - 1) {
      cuts.insert(first + 1 + static_cast<int>(rng.below(len - 1)));
    }
    const std::string rel = rng.pick(kMultinucRels);
    int lo = first;
    std::vector<int> edges(cuts.begin(), cuts.end());
    edges.push_back(last + 1);
    for (int edge : edges) {
      RstNode child = build_tree(rng, lo, edge - 1);
      child.nuclearity = corpus::Nuclearity::nucleus;
      child.relation = rel;
      node.children.push_back(std::move(child));
      lo = edge;
    }
  } else {
    const int cut = first + 1 + static_cast<int>(rng.below(len - 1));
    RstNode left = build_tree(rng, first, cut - 1);
    RstNode right = build_tree(rng, cut, last);
    const bool left_nucleus = rng.chance(0.5);
    (left_nucleus ? left : right).nuclearity = corpus::Nuclearity::nucleus;
    (left_nucleus ? left : right).relation = "span";
    (left_nucleus ? right : left).nuclearity = corpus::Nuclearity::satellite;
    (left_nucleus ? right : left).relation = rng.pick(kSatelliteRels);
    node.children.push_back(std::move(left));
    node.children.push_back(std::move(right));
  }
  return node;
}

void collect_internal(RstNode& node, bool is_root, std::vector<RstNode*>& out) {
  if (!is_root && !node.is_leaf()) out.push_back(&node);
  for (auto& c : node.children) collect_internal(c, false, out);
}

}  // namespace

RstNode random_rst_tree(Rng& rng, int n_edus) {
  RstNode root = build_tree(rng, 1, n_edus);
  root.nuclearity = corpus::Nuclearity::root;
  root.relation.clear();
  return root;
}

std::vector<RstNode*> internal_nodes(RstNode& root) {
  std::vector<RstNode*> out;
  collect_internal(root, true, out);
  return out;
}

std::vector<metrics::Chain> random_chains(Rng& rng, std::size_t max_mentions,
                                          std::size_t max_chains) {
  // Mention universe: spans (i, i+1..i+2) over a small token range; each
  // side uses a random subset partitioned into chains.
  std::vector<metrics::Span> universe;
  for (std::size_t i = 0; i < max_mentions; ++i)
    universe.push_back({i * 3, i * 3 + 1 + rng.below(2)});
  rng.shuffle(universe);
  const std::size_t take = 1 + rng.below(universe.size());
  universe.resize(take);

  const std::size_t n_chains = 1 + rng.below(std::min(max_chains, take));
  std::vector<metrics::Chain> chains(n_chains);
  for (std::size_t i = 0; i < universe.size(); ++i)
    chains[rng.below(n_chains)].push_back(universe[i]);
  chains.erase(std::remove_if(chains.begin(), chains.end(),
                              [](const metrics::Chain& c) { return c.empty(); }),
               chains.end());
  return chains;
}

}  // namespace forge::testgen
