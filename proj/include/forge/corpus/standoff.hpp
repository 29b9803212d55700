#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/common/error.hpp"
#include "forge/corpus/types.hpp"
#include "forge/corpus/validate.hpp"

namespace forge::corpus {

// A distributable bundle: offsets and layer labels only, no running text.
// Token forms are dropped; a lemma equal to its form is stored as a flag so
// the bundle carries no recoverable text through the lemma column either.
struct StandoffToken {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string lemma;  // only when it differs from the form
  bool lemma_is_form = false;
  std::string xpos;
  std::string upos;
  std::string feats;

  bool operator==(const StandoffToken&) const = default;
};

struct StandoffBundle {
  std::string doc_id;
  Genre genre = Genre::news;
  std::string source;
  std::string text_hash;       // hex SHA-256 of the UTF-8 text bytes
  std::size_t text_scalars = 0;
  std::vector<MarkupSpan> markup;
  std::optional<std::vector<StandoffToken>> tokens;
  std::optional<std::vector<Sentence>> sentences;
  std::optional<std::vector<DepArc>> arcs;
  std::optional<std::vector<EntityMention>> mentions;
  std::optional<std::vector<CorefChain>> chains;
  std::optional<std::vector<Edu>> edus;
  std::optional<RstNode> rst;

  bool operator==(const StandoffBundle&) const = default;
};

class InvalidDocumentError : public Error {
 public:
  InvalidDocumentError(std::string doc_id, ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Throws InvalidDocumentError when the document does not validate.
StandoffBundle to_standoff(const Document& doc);

// Throws Error("hash-mismatch") naming the doc id when digest(text) differs
// from the bundle hash, Error("corrupt-bundle") when offsets do not fit the
// recovered text. rehydrate(to_standoff(d), d.raw_text) == d for valid d.
Document rehydrate(const StandoffBundle& bundle, std::string_view raw_text);

std::string bundle_to_json(const StandoffBundle& bundle);
StandoffBundle bundle_from_json(std::string_view json_text);

}  // namespace forge::corpus
