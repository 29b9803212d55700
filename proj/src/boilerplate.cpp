#include "forge/acquire/boilerplate.hpp"

#include <algorithm>
#include <regex>

#include "forge/common/error.hpp"
#include "forge/common/text.hpp"

namespace forge::acquire {

namespace {

using corpus::Document;
using corpus::MarkupKind;
using corpus::MarkupSpan;

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

bool contains(const MarkupSpan& outer, const MarkupSpan& inner) {
  return outer.start <= inner.start && inner.end <= outer.end &&
         (outer.start != inner.start || outer.end != inner.end);
}

}  // namespace

StripResult strip_boilerplate(const Document& doc, const BoilerplateOptions& options) {
  if (doc.markup.empty()) throw Error("input", "strip_boilerplate requires markup");

  // Top-level blocks: block-kind spans not strictly inside another block-kind
  // span, in document order.
  std::vector<std::size_t> top;
  for (std::size_t i = 0; i < doc.markup.size(); ++i) {
    if (!is_block_kind(doc.markup[i].kind)) continue;
    bool nested = false;
    for (std::size_t j = 0; j < doc.markup.size(); ++j) {
      if (i == j || !is_block_kind(doc.markup[j].kind)) continue;
      if (contains(doc.markup[j], doc.markup[i]) &&
          !(doc.markup[i].kind == doc.markup[j].kind && doc.markup[i].start == doc.markup[j].start))
        nested = true;
    }
    if (!nested) top.push_back(i);
  }
  std::stable_sort(top.begin(), top.end(), [&](std::size_t a, std::size_t b) {
    if (doc.markup[a].start != doc.markup[b].start) return doc.markup[a].start < doc.markup[b].start;
    return doc.markup[a].end > doc.markup[b].end;
  });
  // Spans sharing one range (figure+caption, speaker's turn+paragraph) form a
  // single block carrying all their kinds.
  struct Block {
    std::size_t start, end;
    std::set<MarkupKind> kinds;
  };
  std::vector<Block> blocks;
  for (std::size_t idx : top) {
    const auto& s = doc.markup[idx];
    if (!blocks.empty() && blocks.back().start == s.start && blocks.back().end == s.end) {
      blocks.back().kinds.insert(s.kind);
      continue;
    }
    blocks.push_back({s.start, s.end, {s.kind}});
  }

  std::vector<std::regex> patterns;
  for (const auto& p : options.block_patterns) patterns.emplace_back(p, std::regex::ECMAScript);

  auto block_text = [&](const Block& b) {
    return text::trim(text::slice(doc.raw_text, b.start, b.end));
  };
  auto is_heading = [](const Block& b) { return b.kinds.count(MarkupKind::heading) > 0; };
  auto is_paragraph = [](const Block& b) { return b.kinds.count(MarkupKind::paragraph) > 0; };
  auto heading_is_boilerplate = [&](const Block& b) {
    const std::string low = text::lower_ascii(block_text(b));
    return std::find(options.section_headings.begin(), options.section_headings.end(), low) !=
           options.section_headings.end();
  };

  const std::size_t n = blocks.size();
  std::vector<bool> drop(n, false);

  // Boilerplate sections: the heading and everything until the next heading.
  for (std::size_t b = 0; b < n; ++b) {
    if (!is_heading(blocks[b]) || !heading_is_boilerplate(blocks[b])) continue;
    drop[b] = true;
    for (std::size_t k = b + 1; k < n && !is_heading(blocks[k]); ++k) drop[k] = true;
  }

  // Empty sections: a heading with no paragraph before the next heading
  // (judged on the original block sequence).
  for (std::size_t b = 0; b < n; ++b) {
    if (!is_heading(blocks[b]) || drop[b]) continue;
    bool has_paragraph = false;
    for (std::size_t k = b + 1; k < n && !is_heading(blocks[k]); ++k)
      if (is_paragraph(blocks[k]) && !drop[k]) has_paragraph = true;
    if (!has_paragraph) drop[b] = true;
  }

  // Pattern-matched blocks.
  for (std::size_t b = 0; b < n; ++b) {
    if (drop[b]) continue;
    const std::string low = text::lower_ascii(block_text(blocks[b]));
    for (const auto& re : patterns)
      if (std::regex_match(low, re)) {
        drop[b] = true;
        break;
      }
  }

  if (std::none_of(drop.begin(), drop.end(), [](bool d) { return d; })) {
    StripResult r;
    r.doc = doc;
    r.verdict = FilterVerdict::accept();
    return r;
  }
  if (std::all_of(drop.begin(), drop.end(), [](bool d) { return d; })) {
    StripResult r;
    r.verdict = FilterVerdict::reject(FilterReason::boilerplate_only);
    return r;
  }

  // Rebuild: surviving blocks joined with a blank line; every span inside a
  // surviving block shifts with it.
  Document out;
  out.id = doc.id;
  out.genre = doc.genre;
  out.source = doc.source;

  std::size_t pos = 0;
  bool first = true;
  for (std::size_t b = 0; b < n; ++b) {
    if (drop[b]) continue;
    const Block& blk = blocks[b];
    if (!first) {
      out.raw_text += "\n\n";
      pos += 2;
    }
    first = false;
    const long shift = static_cast<long>(pos) - static_cast<long>(blk.start);
    for (const auto& span : doc.markup)
      if (span.start >= blk.start && span.end <= blk.end)
        out.markup.push_back({span.kind, static_cast<std::size_t>(span.start + shift),
                              static_cast<std::size_t>(span.end + shift), span.attrs});
    out.raw_text += text::slice(doc.raw_text, blk.start, blk.end);
    pos += blk.end - blk.start;
  }

  StripResult r;
  r.doc = std::move(out);
  r.verdict = FilterVerdict::accept();
  return r;
}

}  // namespace forge::acquire
