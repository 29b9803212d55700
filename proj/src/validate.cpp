#include "forge/corpus/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "forge/common/text.hpp"

namespace forge::corpus {

namespace {

std::string num(std::size_t v) { return std::to_string(v); }

class Collector {
 public:
  explicit Collector(ValidationReport& report) : report_(report) {}

  void add(std::string rule, std::string layer, std::string location,
           std::string message) {
    report_.violations.push_back(
        {std::move(rule), std::move(layer), std::move(location), std::move(message)});
  }

 private:
  ValidationReport& report_;
};

void check_markup(const Document& doc, std::size_t n_scalars, Collector& out) {
  const auto& spans = doc.markup;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (s.start >= s.end || s.end > n_scalars)
      out.add("markup.bounds", "markup", num(i),
              "span [" + num(s.start) + "," + num(s.end) + ") out of bounds for text of length " +
                  num(n_scalars));
  }
  // Same-kind spans may nest but not cross.
  for (std::size_t i = 0; i < spans.size(); ++i) {
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      if (spans[i].kind != spans[j].kind) continue;
      const auto& a = spans[i].start < spans[j].start ? spans[i] : spans[j];
      const auto& b = spans[i].start < spans[j].start ? spans[j] : spans[i];
      if (b.start < a.end && a.end < b.end)
        out.add("markup.crossing", "markup", num(i) + "," + num(j),
                std::string("partially overlapping ") + std::string(to_string(a.kind)) + " spans");
    }
  }
}

void check_tokens(const Document& doc, std::size_t n_scalars, Collector& out) {
  const auto& toks = *doc.tokens;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto& t = toks[i];
    if (t.index != i)
      out.add("token.index", "tokens", num(i), "index " + num(t.index) + " != position " + num(i));
    if (t.start >= t.end || t.end > n_scalars) {
      out.add("token.bounds", "tokens", num(i),
              "span [" + num(t.start) + "," + num(t.end) + ") out of bounds");
      continue;
    }
    if (i > 0 && toks[i - 1].end > t.start)
      out.add("token.order", "tokens", num(i), "overlaps or precedes previous token");
    if (text::slice(doc.raw_text, t.start, t.end) != t.form)
      out.add("token.form", "tokens", num(i), "form does not equal raw_text slice");
  }
}

void check_sentences(const Document& doc, Collector& out) {
  const auto& sents = *doc.sentences;
  const auto& toks = *doc.tokens;
  std::size_t expected = 0;
  for (std::size_t i = 0; i < sents.size(); ++i) {
    const auto& s = sents[i];
    if (s.first_token != expected || s.last_token < s.first_token ||
        s.last_token >= toks.size()) {
      out.add("sentence.partition", "sentences", num(i),
              "sentence [" + num(s.first_token) + "," + num(s.last_token) +
                  "] does not continue the partition at token " + num(expected));
      expected = std::max(expected, s.last_token + 1);
      continue;
    }
    expected = s.last_token + 1;
  }
  if (!sents.empty() && expected != toks.size())
    out.add("sentence.partition", "sentences", num(sents.size()),
            "sentences end at token " + num(expected) + " of " + num(toks.size()));

  // No sentence crosses a paragraph or heading boundary.
  for (std::size_t i = 0; i < sents.size(); ++i) {
    const auto& s = sents[i];
    if (s.last_token >= toks.size() || s.first_token > s.last_token) continue;
    for (const auto& span : doc.markup) {
      if (span.kind != MarkupKind::paragraph && span.kind != MarkupKind::heading) continue;
      std::size_t inside = 0;
      for (std::size_t t = s.first_token; t <= s.last_token; ++t)
        if (toks[t].start >= span.start && toks[t].end <= span.end) ++inside;
      const std::size_t n = s.last_token - s.first_token + 1;
      if (inside > 0 && inside < n) {
        out.add("sentence.block_bound", "sentences", num(i),
                std::string("crosses a ") + std::string(to_string(span.kind)) + " boundary");
        break;
      }
    }
  }
}

void check_arcs(const Document& doc, Collector& out) {
  const auto& arcs = *doc.arcs;
  const auto& toks = *doc.tokens;
  const auto& sents = *doc.sentences;
  if (arcs.size() != toks.size()) {
    out.add("arc.per_token", "arcs", "-",
            num(arcs.size()) + " arcs for " + num(toks.size()) + " tokens");
    return;
  }
  std::vector<int> seen(toks.size(), 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].dependent >= toks.size()) {
      out.add("arc.per_token", "arcs", num(i), "dependent out of range");
      return;
    }
    ++seen[arcs[i].dependent];
  }
  for (std::size_t t = 0; t < seen.size(); ++t)
    if (seen[t] != 1) {
      out.add("arc.per_token", "arcs", num(t), "token has " + num(seen[t]) + " arcs");
      return;
    }

  // Sentence lookup per token.
  std::vector<std::size_t> sent_of(toks.size(), 0);
  for (std::size_t s = 0; s < sents.size(); ++s)
    for (std::size_t t = sents[s].first_token; t <= sents[s].last_token && t < toks.size(); ++t)
      sent_of[t] = s;

  std::vector<std::size_t> roots(sents.size(), 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (a.head == kRootHead) {
      ++roots[sent_of[a.dependent]];
      continue;
    }
    if (a.head < 0 || static_cast<std::size_t>(a.head) >= toks.size()) {
      out.add("arc.head_bounds", "arcs", num(a.dependent), "head out of range");
      continue;
    }
    if (sent_of[static_cast<std::size_t>(a.head)] != sent_of[a.dependent])
      out.add("arc.cross_sentence", "arcs", num(a.dependent), "head lies in another sentence");
  }
  for (std::size_t s = 0; s < roots.size(); ++s)
    if (roots[s] != 1)
      out.add("arc.root_count", "arcs", num(s),
              "sentence has " + num(roots[s]) + " root-headed tokens");
}

void check_mentions(const Document& doc, Collector& out) {
  const auto& mentions = *doc.mentions;
  const std::size_t n = doc.tokens->size();
  std::set<std::string> ids;
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const auto& m = mentions[i];
    if (!ids.insert(m.id).second)
      out.add("mention.id_dup", "mentions", m.id, "duplicate mention id");
    if (m.first_token > m.last_token || m.last_token >= n)
      out.add("mention.bounds", "mentions", m.id, "token span out of range");
  }
  // Nesting allowed, crossing forbidden: no pair with a < c <= b < d.
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    for (std::size_t j = 0; j < mentions.size(); ++j) {
      if (i == j) continue;
      const auto& a = mentions[i];
      const auto& b = mentions[j];
      if (a.first_token < b.first_token && b.first_token <= a.last_token &&
          a.last_token < b.last_token)
        out.add("mention.crossing", "mentions", a.id + "," + b.id, "mention spans cross");
    }
  }
}

void check_chains(const Document& doc, Collector& out) {
  const auto& chains = *doc.chains;
  const auto& mentions = *doc.mentions;
  std::map<std::string, const EntityMention*> by_id;
  for (const auto& m : mentions) by_id.emplace(m.id, &m);

  std::map<std::string, std::string> chain_of;  // mention id -> chain id
  std::set<std::string> chain_ids;
  for (const auto& c : chains) {
    if (!chain_ids.insert(c.id).second)
      out.add("chain.id_dup", "chains", c.id, "duplicate chain id");
    if (c.mentions.empty()) {
      out.add("chain.empty", "chains", c.id, "chain has no mentions");
      continue;
    }
    const EntityMention* prev = nullptr;
    for (const auto& mid : c.mentions) {
      auto it = by_id.find(mid);
      if (it == by_id.end()) {
        out.add("chain.unresolved", "chains", c.id, "unknown mention id " + mid);
        continue;
      }
      auto [pos, inserted] = chain_of.emplace(mid, c.id);
      if (!inserted)
        out.add("chain.overlap", "chains", mid,
                "mention belongs to chains " + pos->second + " and " + c.id);
      if (it->second->chain != c.id)
        out.add("chain.backref", "chains", mid,
                "mention.chain is '" + it->second->chain + "', expected '" + c.id + "'");
      if (prev && !mention_before(*prev, *it->second) && !(*prev == *it->second))
        out.add("chain.order", "chains", c.id, "mentions not in document order");
      prev = it->second;
    }
  }
  for (const auto& m : mentions)
    if (!m.chain.empty() && !chain_of.count(m.id))
      out.add("chain.backref", "chains", m.id,
              "mention names chain '" + m.chain + "' but no chain lists it");
}

void check_edus(const Document& doc, Collector& out) {
  const auto& edus = *doc.edus;
  const auto& sents = *doc.sentences;
  const std::size_t n = doc.tokens->size();
  std::size_t expected = 0;
  for (std::size_t i = 0; i < edus.size(); ++i) {
    const auto& e = edus[i];
    if (e.id != static_cast<int>(i) + 1)
      out.add("edu.id", "edus", num(i), "ids must be 1-based and sequential");
    if (e.first_token != expected || e.last_token < e.first_token || e.last_token >= n) {
      out.add("edu.partition", "edus", num(i + 1), "EDUs do not partition the token sequence");
      expected = std::max(expected, e.last_token + 1);
      continue;
    }
    expected = e.last_token + 1;
  }
  if (!edus.empty() && expected != n)
    out.add("edu.partition", "edus", num(edus.size()), "EDUs end before the last token");

  for (std::size_t i = 0; i < edus.size(); ++i) {
    const auto& e = edus[i];
    bool inside_one = false;
    for (const auto& s : sents)
      if (e.first_token >= s.first_token && e.last_token <= s.last_token) {
        inside_one = true;
        break;
      }
    if (!inside_one)
      out.add("edu.sentence_bound", "edus", num(i + 1), "EDU does not lie within one sentence");
  }
}

void collect_leaves(const RstNode& node, std::vector<const RstNode*>& leaves) {
  if (node.is_leaf()) {
    leaves.push_back(&node);
    return;
  }
  for (const auto& c : node.children) collect_leaves(c, leaves);
}

void check_rst_node(const RstNode& node, bool is_root, std::vector<Violation>& out) {
  const std::string loc = "[" + std::to_string(node.first_edu) + "," +
                          std::to_string(node.last_edu) + "]";
  if (is_root) {
    if (node.nuclearity != Nuclearity::root)
      out.push_back({"rst.nuclearity", "rst", loc, "root node must carry root nuclearity"});
  } else if (node.nuclearity == Nuclearity::root) {
    out.push_back({"rst.nuclearity", "rst", loc, "non-root node carries root nuclearity"});
  }
  if (node.first_edu > node.last_edu)
    out.push_back({"rst.span", "rst", loc, "inverted span"});

  if (node.is_leaf()) {
    if (node.first_edu != node.last_edu)
      out.push_back({"rst.leaf_span", "rst", loc, "leaf must cover exactly one EDU"});
    return;
  }

  // Children must tile the parent span contiguously, in order.
  int expected = node.first_edu;
  for (const auto& c : node.children) {
    if (c.first_edu != expected) {
      out.push_back({"rst.tiling", "rst", loc,
                     "child span starts at " + std::to_string(c.first_edu) + ", expected " +
                         std::to_string(expected)});
      expected = std::max(expected, c.last_edu + 1);
      continue;
    }
    expected = c.last_edu + 1;
  }
  if (expected != node.last_edu + 1)
    out.push_back({"rst.tiling", "rst", loc, "children do not tile the parent span"});

  std::size_t nuclei = 0;
  std::set<std::string> nucleus_relations;
  for (const auto& c : node.children)
    if (c.nuclearity == Nuclearity::nucleus) {
      ++nuclei;
      nucleus_relations.insert(c.relation);
    }
  if (nuclei == 0)
    out.push_back({"rst.no_nucleus", "rst", loc, "internal node has no nucleus child"});
  if (nuclei >= 2 && nucleus_relations.size() != 1)
    out.push_back({"rst.multinuclear", "rst", loc,
                   "nucleus children of a multinuclear node must share one relation"});

  for (const auto& c : node.children) check_rst_node(c, false, out);
}

}  // namespace

std::vector<Violation> validate_rst(const RstNode& root, std::size_t edu_count) {
  std::vector<Violation> out;
  if (root.first_edu != 1 || root.last_edu != static_cast<int>(edu_count))
    out.push_back({"rst.root_span", "rst", "-",
                   "root covers [" + std::to_string(root.first_edu) + "," +
                       std::to_string(root.last_edu) + "], expected [1," +
                       std::to_string(edu_count) + "]"});
  check_rst_node(root, true, out);

  std::vector<const RstNode*> leaves;
  collect_leaves(root, leaves);
  if (leaves.size() != edu_count) {
    out.push_back({"rst.leaf_count", "rst", "-",
                   std::to_string(leaves.size()) + " leaves for " +
                       std::to_string(edu_count) + " EDUs"});
  } else {
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (leaves[i]->first_edu != static_cast<int>(i) + 1)
        out.push_back({"rst.leaf_order", "rst", std::to_string(i + 1),
                       "in-order leaves must equal the EDU sequence"});
  }
  return out;
}

ValidationReport validate_document(const Document& doc) {
  ValidationReport report;
  Collector out(report);
  const std::size_t n_scalars = text::scalar_count(doc.raw_text);

  check_markup(doc, n_scalars, out);

  // Layer prerequisites: a layer is only meaningful when the layers it
  // references are present.
  const bool has_tokens = doc.tokens.has_value();
  const bool has_sents = doc.sentences.has_value();
  if (has_sents && !has_tokens)
    out.add("layer.prereq", "sentences", "-", "sentences require tokens");
  if (doc.arcs && !has_sents) out.add("layer.prereq", "arcs", "-", "arcs require sentences");
  if (doc.mentions && !has_tokens)
    out.add("layer.prereq", "mentions", "-", "mentions require tokens");
  if (doc.chains && !doc.mentions)
    out.add("layer.prereq", "chains", "-", "chains require mentions");
  if (doc.edus && !has_sents) out.add("layer.prereq", "edus", "-", "EDUs require sentences");
  if (doc.rst && !doc.edus) out.add("layer.prereq", "rst", "-", "rst requires EDUs");

  if (has_tokens) check_tokens(doc, n_scalars, out);
  if (has_tokens && has_sents) check_sentences(doc, out);
  if (has_tokens && has_sents && doc.arcs) check_arcs(doc, out);
  if (has_tokens && doc.mentions) check_mentions(doc, out);
  if (has_tokens && doc.mentions && doc.chains) check_chains(doc, out);
  if (has_tokens && has_sents && doc.edus) check_edus(doc, out);
  if (doc.edus && doc.rst)
    for (auto& v : validate_rst(*doc.rst, doc.edus->size()))
      report.violations.push_back(std::move(v));

  return report;
}

}  // namespace forge::corpus
