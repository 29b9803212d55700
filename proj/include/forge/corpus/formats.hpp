#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::corpus {

// ---------------------------------------------------------------------------
// Token layer: 10 tab-separated columns per token
//   ordinal  form  lemma  upos  xpos  feats  head  deprel  char_start  char_end
// with a blank line between sentences. Comment lines carry the doc id, genre,
// sentence type and markup openings/closings:
//   # newdoc id = <id>
//   # genre = <genre>
//   # s_type = <stype>
//   # markup-open = <kind> <start> <end> [<attrs json>]
//   # markup-close = <kind> <start> <end>
// Ordinals and heads are document-wide 0-based; head -1 marks the sentence
// root; "_" marks an absent column. Offsets are Unicode scalar offsets.
// ---------------------------------------------------------------------------
std::string tokens_to_tsv(const Document& doc);

// Fills tokens (and sentences/arcs when present in the file) of `doc`.
// Markup comments are parsed into doc.markup only when it is empty.
void tokens_from_tsv(std::string_view tsv, Document& doc);

// Markup layer: kind <TAB> start <TAB> end <TAB> attrs-json
std::string markup_to_tsv(const std::vector<MarkupSpan>& spans);
std::vector<MarkupSpan> markup_from_tsv(std::string_view tsv);

// Entity/coref layer: mention id, first, last, etype, chain id ("_" = none).
// Chains are reconstructed from the chain column, members in document order.
std::string entities_to_tsv(const Document& doc);
void entities_from_tsv(std::string_view tsv, Document& doc);

// EDU layer: id <TAB> first_token <TAB> last_token
std::string edus_to_tsv(const std::vector<Edu>& edus);
std::vector<Edu> edus_from_tsv(std::string_view tsv);

// RST constituent tree, single line. Grammar (exact):
//   tree  := node
//   node  := "(" "rel=" LABEL " nuc=" NUC " " body ")"
//   body  := "(edu " INT ")" | node { " " node }
//   NUC   := "N" | "S" | "R"
//   LABEL := any characters except space and parentheses; may be empty
// A node whose body is an edu marker is a leaf. The root carries nuc=R and an
// empty label.
std::string rst_to_text(const RstNode& root);
RstNode rst_from_text(std::string_view s);

struct ManifestEntry {
  std::string id;
  Genre genre = Genre::news;
  std::string source;
  std::string dir;  // per-document state directory, relative to the manifest

  bool operator==(const ManifestEntry&) const = default;
};

std::string manifest_to_jsonl(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> manifest_from_jsonl(std::string_view jsonl);

}  // namespace forge::corpus
