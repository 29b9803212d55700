#include "forge/discourse/segment.hpp"

#include <algorithm>
#include <sstream>

#include "forge/common/error.hpp"
#include "forge/common/text.hpp"

namespace forge::discourse {

namespace {

using corpus::Edu;
using corpus::Genre;
using corpus::MarkupKind;
using corpus::MarkupSpan;
using corpus::Sentence;
using corpus::SentenceType;
using corpus::Token;

}  // namespace

std::vector<Edu> constrain_segmentation(const std::set<std::size_t>& candidate_starts,
                                        const std::vector<Token>& tokens,
                                        const std::vector<Sentence>& sentences,
                                        const std::vector<MarkupSpan>& markup) {
  const std::size_t n = tokens.size();
  if (n == 0) return {};

  std::set<std::size_t> starts;
  starts.insert(0);
  for (std::size_t c : candidate_starts)
    if (c < n) starts.insert(c);
  for (const auto& s : sentences) starts.insert(s.first_token);
  for (const auto& span : markup) {
    if (span.kind != MarkupKind::heading && span.kind != MarkupKind::caption &&
        span.kind != MarkupKind::speaker)
      continue;
    const std::size_t kNone = static_cast<std::size_t>(-1);
    std::size_t first = kNone, last = kNone;
    for (std::size_t t = 0; t < n; ++t)
      if (tokens[t].start >= span.start && tokens[t].end <= span.end) {
        if (first == kNone) first = t;
        last = t;
      }
    if (first == kNone) continue;
    starts.insert(first);
    if (last + 1 < n) starts.insert(last + 1);
  }

  std::vector<Edu> edus;
  std::vector<std::size_t> ordered(starts.begin(), starts.end());
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    Edu e;
    e.id = static_cast<int>(k) + 1;
    e.first_token = ordered[k];
    e.last_token = (k + 1 < ordered.size() ? ordered[k + 1] : n) - 1;
    edus.push_back(e);
  }
  return edus;
}

std::set<std::size_t> boundaries_from_text(std::string_view content) {
  std::set<std::size_t> out;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.insert(std::stoull(t));
  }
  return out;
}

std::string boundaries_to_text(const std::set<std::size_t>& starts) {
  std::string out;
  for (std::size_t s : starts) out += std::to_string(s) + "\n";
  return out;
}

std::string FeatureTable::to_tsv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "\t" : "") << columns[c];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "\t" : "") << row[c];
    out << "\n";
  }
  return out.str();
}

FeatureTable featurize_edus(const std::vector<Edu>& edus, const std::vector<Token>& tokens,
                            const std::vector<Sentence>& sentences,
                            const std::vector<MarkupSpan>& markup, Genre genre,
                            const std::vector<ExternalColumn>& external) {
  for (const auto& col : external)
    if (col.values.size() != edus.size())
      throw Error("alignment", "external column '" + col.name + "' has " +
                                   std::to_string(col.values.size()) + " values for " +
                                   std::to_string(edus.size()) + " EDUs");

  FeatureTable table;
  table.columns = {"edu",        "is_heading",      "is_caption",    "is_turn",
                   "starts_paragraph", "ends_paragraph", "in_list_item", "len_bucket",
                   "decile"};
  for (Genre g : corpus::kAllGenres)
    table.columns.push_back("genre_" + std::string(to_string(g)));
  static constexpr SentenceType kTypes[] = {
      SentenceType::decl, SentenceType::imp,  SentenceType::wh,
      SentenceType::q,    SentenceType::frag, SentenceType::sub,
      SentenceType::inf,  SentenceType::intj, SentenceType::other};
  for (SentenceType t : kTypes) table.columns.push_back("stype_" + std::string(to_string(t)));
  for (const auto& col : external) table.columns.push_back(col.name);

  auto inside = [&](const Edu& e, const MarkupSpan& span) {
    return tokens[e.first_token].start >= span.start && tokens[e.last_token].end <= span.end;
  };

  for (std::size_t i = 0; i < edus.size(); ++i) {
    const Edu& e = edus[i];
    bool is_heading = false, is_caption = false, is_turn = false, in_item = false;
    bool starts_par = false, ends_par = false;
    for (const auto& span : markup) {
      const bool in = inside(e, span);
      switch (span.kind) {
        case MarkupKind::heading: is_heading |= in; break;
        case MarkupKind::caption: is_caption |= in; break;
        case MarkupKind::speaker: is_turn |= in; break;
        case MarkupKind::item: in_item |= in; break;
        case MarkupKind::paragraph: {
          // First/last covered token of the paragraph.
          const std::size_t kNone = static_cast<std::size_t>(-1);
          std::size_t first = kNone, last = kNone;
          for (std::size_t t = 0; t < tokens.size(); ++t)
            if (tokens[t].start >= span.start && tokens[t].end <= span.end) {
              if (first == kNone) first = t;
              last = t;
            }
          if (first != kNone) {
            starts_par |= e.first_token == first;
            ends_par |= e.last_token == last;
          }
          break;
        }
        default: break;
      }
    }
    const std::size_t len = e.last_token - e.first_token + 1;
    int len_bucket;
    if (len <= 2)
      len_bucket = 0;
    else if (len <= 5)
      len_bucket = 1;
    else if (len <= 10)
      len_bucket = 2;
    else if (len <= 20)
      len_bucket = 3;
    else
      len_bucket = 4;
    const int decile = static_cast<int>((i * 10) / edus.size());

    SentenceType stype = SentenceType::other;
    for (const auto& s : sentences)
      if (e.first_token >= s.first_token && e.last_token <= s.last_token) {
        stype = s.stype;
        break;
      }

    std::vector<std::string> row;
    row.push_back(std::to_string(e.id));
    row.push_back(is_heading ? "1" : "0");
    row.push_back(is_caption ? "1" : "0");
    row.push_back(is_turn ? "1" : "0");
    row.push_back(starts_par ? "1" : "0");
    row.push_back(ends_par ? "1" : "0");
    row.push_back(in_item ? "1" : "0");
    row.push_back(std::to_string(len_bucket));
    row.push_back(std::to_string(decile));
    for (Genre g : corpus::kAllGenres) row.push_back(g == genre ? "1" : "0");
    for (SentenceType t : kTypes) row.push_back(t == stype ? "1" : "0");
    for (const auto& col : external) row.push_back(col.values[i]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

corpus::ValidationReport validate_rst_tree(const corpus::RstNode& tree,
                                           const std::vector<Edu>& edus) {
  corpus::ValidationReport report;
  report.violations = corpus::validate_rst(tree, edus.size());
  return report;
}

}  // namespace forge::discourse
