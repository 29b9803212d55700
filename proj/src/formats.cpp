#include "forge/corpus/formats.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "forge/common/error.hpp"

namespace forge::corpus {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string col(const std::string& v) { return v.empty() ? "_" : v; }
std::string uncol(std::string_view v) { return v == "_" ? std::string() : std::string(v); }

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string> split_lines(std::string_view tsv) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= tsv.size()) {
    std::size_t nl = tsv.find('\n', start);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string line(tsv.substr(start, nl - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (nl == tsv.size()) break;
    start = nl + 1;
  }
  return lines;
}

std::string attrs_json(const std::map<std::string, std::string>& attrs) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : attrs) j[k] = v;
  return j.dump();
}

std::map<std::string, std::string> attrs_from_json(std::string_view s) {
  std::map<std::string, std::string> out;
  if (s.empty()) return out;
  auto j = ordered_json::parse(s, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error("format", "bad attrs json: " + std::string(s));
  for (auto& [k, v] : j.items()) out[k] = v.get<std::string>();
  return out;
}

std::string markup_comment_payload(const MarkupSpan& s) {
  std::string line = std::string(to_string(s.kind)) + " " + std::to_string(s.start) + " " +
                     std::to_string(s.end);
  if (!s.attrs.empty()) line += " " + attrs_json(s.attrs);
  return line;
}

}  // namespace

std::string tokens_to_tsv(const Document& doc) {
  std::ostringstream out;
  out << "# newdoc id = " << doc.id << "\n";
  out << "# genre = " << to_string(doc.genre) << "\n";

  const auto& toks = doc.tokens ? *doc.tokens : std::vector<Token>{};

  // First covered token of each markup span (tokens fully inside the span).
  const std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::pair<std::size_t, std::size_t>> covered(doc.markup.size(), {kNone, kNone});
  for (std::size_t m = 0; m < doc.markup.size(); ++m) {
    const auto& span = doc.markup[m];
    for (std::size_t t = 0; t < toks.size(); ++t) {
      if (toks[t].start >= span.start && toks[t].end <= span.end) {
        if (covered[m].first == kNone) covered[m].first = t;
        covered[m].second = t;
      }
    }
  }

  // Markup ordering: openings by (start, -end), closings by (end, -start).
  std::vector<std::size_t> order(doc.markup.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto open_less = [&](std::size_t a, std::size_t b) {
    const auto& x = doc.markup[a];
    const auto& y = doc.markup[b];
    if (x.start != y.start) return x.start < y.start;
    if (x.end != y.end) return x.end > y.end;
    return a < b;
  };

  // Arc lookup by dependent.
  std::map<std::size_t, const DepArc*> arc_of;
  if (doc.arcs)
    for (const auto& a : *doc.arcs) arc_of[a.dependent] = &a;

  auto emit_token = [&](const Token& t) {
    out << t.index << '\t' << t.form << '\t' << col(t.lemma) << '\t' << col(t.upos) << '\t'
        << col(t.xpos) << '\t' << col(t.feats) << '\t';
    auto it = arc_of.find(t.index);
    if (it != arc_of.end())
      out << it->second->head << '\t' << col(it->second->deprel);
    else
      out << "_\t_";
    out << '\t' << t.start << '\t' << t.end << "\n";
  };

  std::vector<std::size_t> opens = order, closes = order;
  std::sort(opens.begin(), opens.end(), open_less);
  std::sort(closes.begin(), closes.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = doc.markup[a];
    const auto& y = doc.markup[b];
    if (x.end != y.end) return x.end < y.end;
    if (x.start != y.start) return x.start > y.start;
    return a < b;
  });

  if (!doc.sentences || toks.empty()) {
    for (std::size_t m : opens)
      out << "# markup-open = " << markup_comment_payload(doc.markup[m]) << "\n";
    for (const auto& t : toks) emit_token(t);
    for (std::size_t m : closes)
      out << "# markup-close = " << std::string(to_string(doc.markup[m].kind)) << " "
          << doc.markup[m].start << " " << doc.markup[m].end << "\n";
    return out.str();
  }

  const auto& sents = *doc.sentences;
  // Sentence index of the first/last covered token of each span; spans with
  // no covered tokens open before the first sentence.
  std::vector<std::size_t> sent_of(toks.size(), 0);
  for (std::size_t s = 0; s < sents.size(); ++s)
    for (std::size_t t = sents[s].first_token; t <= sents[s].last_token && t < toks.size(); ++t)
      sent_of[t] = s;

  for (std::size_t s = 0; s < sents.size(); ++s) {
    if (s > 0) out << "\n";
    for (std::size_t m : opens) {
      const std::size_t first = covered[m].first;
      const std::size_t open_at = (first == kNone) ? 0 : sent_of[first];
      if (open_at == s) out << "# markup-open = " << markup_comment_payload(doc.markup[m]) << "\n";
    }
    out << "# s_type = " << to_string(sents[s].stype) << "\n";
    for (std::size_t t = sents[s].first_token; t <= sents[s].last_token && t < toks.size(); ++t)
      emit_token(toks[t]);
    for (std::size_t m : closes) {
      const std::size_t last = covered[m].second;
      const std::size_t close_at = (last == kNone) ? 0 : sent_of[last];
      if (close_at == s)
        out << "# markup-close = " << std::string(to_string(doc.markup[m].kind)) << " "
            << doc.markup[m].start << " " << doc.markup[m].end << "\n";
    }
  }
  return out.str();
}

void tokens_from_tsv(std::string_view tsv, Document& doc) {
  std::vector<Token> tokens;
  std::vector<Sentence> sentences;
  std::vector<DepArc> arcs;
  std::vector<MarkupSpan> markup;
  bool saw_stype = false;
  bool has_arcs = false;
  bool in_sentence = false;
  std::size_t sent_first = 0;
  SentenceType pending_stype = SentenceType::other;

  auto close_sentence = [&]() {
    if (in_sentence && !tokens.empty()) {
      sentences.push_back({sent_first, tokens.back().index, pending_stype});
      in_sentence = false;
    }
  };

  for (const auto& line : split_lines(tsv)) {
    if (line.empty()) {
      close_sentence();
      continue;
    }
    if (line[0] == '#') {
      const std::string body = line.substr(1);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      // trim
      auto trim = [](std::string& s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
      };
      trim(key);
      trim(value);
      if (key == "newdoc id") {
        doc.id = value;
      } else if (key == "genre") {
        if (auto g = genre_from_string(value)) doc.genre = *g;
      } else if (key == "s_type") {
        close_sentence();
        if (auto t = sentence_type_from_string(value)) pending_stype = *t;
        saw_stype = true;
        in_sentence = false;
      } else if (key == "markup-open") {
        std::istringstream is(value);
        std::string kind;
        std::size_t a = 0, b = 0;
        is >> kind >> a >> b;
        std::string rest;
        std::getline(is, rest);
        while (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
        auto k = markup_kind_from_string(kind);
        if (!k) throw Error("format", "unknown markup kind: " + kind);
        markup.push_back({*k, a, b, attrs_from_json(rest)});
      }
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 10) throw Error("format", "token line must have 10 columns: " + line);
    Token t;
    t.index = std::stoull(cols[0]);
    t.form = cols[1];
    t.lemma = uncol(cols[2]);
    t.upos = uncol(cols[3]);
    t.xpos = uncol(cols[4]);
    t.feats = uncol(cols[5]);
    t.start = std::stoull(cols[8]);
    t.end = std::stoull(cols[9]);
    if (cols[6] != "_") {
      arcs.push_back({t.index, std::stol(cols[6]), uncol(cols[7])});
      has_arcs = true;
    }
    if (!in_sentence) {
      in_sentence = true;
      sent_first = t.index;
    }
    tokens.push_back(std::move(t));
  }
  close_sentence();

  doc.tokens = std::move(tokens);
  if (saw_stype) doc.sentences = std::move(sentences);
  if (has_arcs) doc.arcs = std::move(arcs);
  if (doc.markup.empty()) doc.markup = std::move(markup);
}

std::string markup_to_tsv(const std::vector<MarkupSpan>& spans) {
  std::ostringstream out;
  for (const auto& s : spans)
    out << to_string(s.kind) << '\t' << s.start << '\t' << s.end << '\t' << attrs_json(s.attrs)
        << "\n";
  return out.str();
}

std::vector<MarkupSpan> markup_from_tsv(std::string_view tsv) {
  std::vector<MarkupSpan> out;
  for (const auto& line : split_lines(tsv)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 4) throw Error("format", "markup line must have 4 columns: " + line);
    auto k = markup_kind_from_string(cols[0]);
    if (!k) throw Error("format", "unknown markup kind: " + cols[0]);
    out.push_back({*k, std::stoull(cols[1]), std::stoull(cols[2]), attrs_from_json(cols[3])});
  }
  return out;
}

std::string entities_to_tsv(const Document& doc) {
  std::ostringstream out;
  if (!doc.mentions) return out.str();
  std::vector<EntityMention> sorted = *doc.mentions;
  std::sort(sorted.begin(), sorted.end(), mention_before);
  for (const auto& m : sorted)
    out << m.id << '\t' << m.first_token << '\t' << m.last_token << '\t' << to_string(m.etype)
        << '\t' << col(m.chain) << "\n";
  return out.str();
}

void entities_from_tsv(std::string_view tsv, Document& doc) {
  std::vector<EntityMention> mentions;
  for (const auto& line : split_lines(tsv)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 5) throw Error("format", "entity line must have 5 columns: " + line);
    auto t = entity_type_from_string(cols[3]);
    if (!t) throw Error("format", "unknown entity type: " + cols[3]);
    mentions.push_back({cols[0], std::stoull(cols[1]), std::stoull(cols[2]), *t, uncol(cols[4])});
  }
  // Rebuild chains from the chain column, members in document order.
  std::vector<EntityMention> sorted = mentions;
  std::sort(sorted.begin(), sorted.end(), mention_before);
  std::vector<CorefChain> chains;
  std::map<std::string, std::size_t> chain_index;
  for (const auto& m : sorted) {
    if (m.chain.empty()) continue;
    auto [it, inserted] = chain_index.emplace(m.chain, chains.size());
    if (inserted) chains.push_back({m.chain, {}});
    chains[it->second].mentions.push_back(m.id);
  }
  std::sort(chains.begin(), chains.end(),
            [](const CorefChain& a, const CorefChain& b) { return a.id < b.id; });
  doc.mentions = std::move(mentions);
  doc.chains = std::move(chains);
}

std::string edus_to_tsv(const std::vector<Edu>& edus) {
  std::ostringstream out;
  for (const auto& e : edus)
    out << e.id << '\t' << e.first_token << '\t' << e.last_token << "\n";
  return out.str();
}

std::vector<Edu> edus_from_tsv(std::string_view tsv) {
  std::vector<Edu> out;
  for (const auto& line : split_lines(tsv)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 3) throw Error("format", "EDU line must have 3 columns: " + line);
    out.push_back({std::stoi(cols[0]), std::stoull(cols[1]), std::stoull(cols[2])});
  }
  return out;
}

namespace {

void write_rst(const RstNode& node, std::string& out) {
  out += "(rel=";
  out += node.relation;
  out += " nuc=";
  switch (node.nuclearity) {
    case Nuclearity::nucleus: out += 'N'; break;
    case Nuclearity::satellite: out += 'S'; break;
    case Nuclearity::root: out += 'R'; break;
  }
  out += ' ';
  if (node.is_leaf()) {
    out += "(edu " + std::to_string(node.first_edu) + ")";
  } else {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i > 0) out += ' ';
      write_rst(node.children[i], out);
    }
  }
  out += ')';
}

struct RstParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error("rst-format", why + " at offset " + std::to_string(pos));
  }
  void expect(std::string_view lit) {
    if (s.substr(pos, lit.size()) != lit) fail("expected '" + std::string(lit) + "'");
    pos += lit.size();
  }
  void skip_spaces() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\n' || s[pos] == '\t')) ++pos;
  }

  RstNode parse_node() {
    expect("(");
    expect("rel=");
    std::string label;
    while (pos < s.size() && s[pos] != ' ' && s[pos] != '(' && s[pos] != ')') label += s[pos++];
    expect(" nuc=");
    if (pos >= s.size()) fail("truncated node");
    Nuclearity nuc;
    switch (s[pos]) {
      case 'N': nuc = Nuclearity::nucleus; break;
      case 'S': nuc = Nuclearity::satellite; break;
      case 'R': nuc = Nuclearity::root; break;
      default: fail("nuclearity must be N, S or R");
    }
    ++pos;
    expect(" ");
    RstNode node;
    node.relation = label;
    node.nuclearity = nuc;
    if (s.substr(pos, 5) == "(edu ") {
      pos += 5;
      std::size_t start = pos;
      while (pos < s.size() && s[pos] != ')') ++pos;
      if (pos >= s.size()) fail("unterminated edu marker");
      node.first_edu = node.last_edu = std::stoi(std::string(s.substr(start, pos - start)));
      ++pos;  // ')'
    } else {
      while (pos < s.size() && s[pos] == '(') {
        node.children.push_back(parse_node());
        skip_spaces();
      }
      if (node.children.empty()) fail("node has no body");
      node.first_edu = node.children.front().first_edu;
      node.last_edu = node.children.back().last_edu;
    }
    expect(")");
    return node;
  }
};

}  // namespace

std::string rst_to_text(const RstNode& root) {
  std::string out;
  write_rst(root, out);
  out += "\n";
  return out;
}

RstNode rst_from_text(std::string_view s) {
  RstParser p{s, 0};
  p.skip_spaces();
  RstNode root = p.parse_node();
  p.skip_spaces();
  if (p.pos != s.size()) throw Error("rst-format", "trailing content after the tree");
  return root;
}

std::string manifest_to_jsonl(const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    ordered_json j;
    j["id"] = e.id;
    j["genre"] = std::string(to_string(e.genre));
    j["source"] = e.source;
    j["dir"] = e.dir;
    out += j.dump();
    out += "\n";
  }
  return out;
}

std::vector<ManifestEntry> manifest_from_jsonl(std::string_view jsonl) {
  std::vector<ManifestEntry> out;
  for (const auto& line : split_lines(jsonl)) {
    if (line.empty()) continue;
    auto j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error("format", "bad manifest line: " + line);
    ManifestEntry e;
    e.id = j.at("id").get<std::string>();
    auto g = genre_from_string(j.at("genre").get<std::string>());
    if (!g) throw Error("format", "unknown genre in manifest: " + line);
    e.genre = *g;
    e.source = j.value("source", std::string());
    e.dir = j.value("dir", std::string());
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace forge::corpus
