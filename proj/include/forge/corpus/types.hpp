#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forge::corpus {

// ---------------------------------------------------------------------------
// Closed enums. Serialized as lowercase ASCII names.
// ---------------------------------------------------------------------------

enum class Genre {
  academic,
  biography,
  fiction,
  forum,
  howto,
  interview,
  news,
  travel,
};

constexpr std::array<Genre, 8> kAllGenres = {
    Genre::academic, Genre::biography, Genre::fiction,   Genre::forum,
    Genre::howto,    Genre::interview, Genre::news,      Genre::travel,
};

std::string_view to_string(Genre g);
std::optional<Genre> genre_from_string(std::string_view s);

enum class MarkupKind {
  heading,
  paragraph,
  figure,
  caption,
  list,
  item,
  speaker,
  bold,
  italic,
};

std::string_view to_string(MarkupKind k);
std::optional<MarkupKind> markup_kind_from_string(std::string_view s);

enum class SentenceType { decl, imp, wh, q, frag, sub, inf, intj, other };

std::string_view to_string(SentenceType t);
std::optional<SentenceType> sentence_type_from_string(std::string_view s);

enum class EntityType {
  person,
  place,
  organization,
  object,
  event,
  time,
  abstract,
  animal,
  plant,
  substance,
  quantity,
};

constexpr std::array<EntityType, 11> kAllEntityTypes = {
    EntityType::person,   EntityType::place, EntityType::organization,
    EntityType::object,   EntityType::event, EntityType::time,
    EntityType::abstract, EntityType::animal, EntityType::plant,
    EntityType::substance, EntityType::quantity,
};

std::string_view to_string(EntityType t);
std::optional<EntityType> entity_type_from_string(std::string_view s);

enum class Nuclearity { nucleus, satellite, root };

// ---------------------------------------------------------------------------
// Layers. All character offsets are Unicode scalar offsets into raw_text,
// start inclusive, end exclusive. Token ordinals are document-wide, 0-based.
// ---------------------------------------------------------------------------

struct MarkupSpan {
  MarkupKind kind = MarkupKind::paragraph;
  std::size_t start = 0;
  std::size_t end = 0;
  std::map<std::string, std::string> attrs;

  bool operator==(const MarkupSpan&) const = default;
};

struct Token {
  std::size_t index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string form;
  // Optional annotation columns; empty string means absent ("_" on disk).
  std::string lemma;
  std::string xpos;
  std::string upos;
  std::string feats;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::size_t first_token = 0;
  std::size_t last_token = 0;  // inclusive
  SentenceType stype = SentenceType::other;

  bool operator==(const Sentence&) const = default;
};

// Head is a document-wide token ordinal, or kRootHead for the sentence root.
inline constexpr long kRootHead = -1;

struct DepArc {
  std::size_t dependent = 0;
  long head = kRootHead;
  std::string deprel;

  bool operator==(const DepArc&) const = default;
};

struct EntityMention {
  std::string id;
  std::size_t first_token = 0;
  std::size_t last_token = 0;  // inclusive
  EntityType etype = EntityType::abstract;
  std::string chain;  // empty = not in any chain

  bool operator==(const EntityMention&) const = default;
};

struct CorefChain {
  std::string id;
  std::vector<std::string> mentions;  // mention ids, document order

  bool operator==(const CorefChain&) const = default;
};

struct Edu {
  int id = 0;  // 1-based
  std::size_t first_token = 0;
  std::size_t last_token = 0;  // inclusive

  bool operator==(const Edu&) const = default;
};

struct RstNode {
  int first_edu = 0;
  int last_edu = 0;  // inclusive
  Nuclearity nuclearity = Nuclearity::nucleus;
  std::string relation;  // empty for the root
  std::vector<RstNode> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const RstNode&) const = default;
};

struct Document {
  std::string id;
  Genre genre = Genre::news;
  std::string source;
  std::string raw_text;
  std::vector<MarkupSpan> markup;
  std::optional<std::vector<Token>> tokens;
  std::optional<std::vector<Sentence>> sentences;
  std::optional<std::vector<DepArc>> arcs;
  std::optional<std::vector<EntityMention>> mentions;
  std::optional<std::vector<CorefChain>> chains;
  std::optional<std::vector<Edu>> edus;
  std::optional<RstNode> rst;

  bool operator==(const Document&) const = default;
};

// Document-order comparator for mentions: by first token, then last.
inline bool mention_before(const EntityMention& a, const EntityMention& b) {
  if (a.first_token != b.first_token) return a.first_token < b.first_token;
  if (a.last_token != b.last_token) return a.last_token < b.last_token;
  return a.id < b.id;
}

}  // namespace forge::corpus
