#include "forge/corpus/types.hpp"

namespace forge::corpus {

std::string_view to_string(Genre g) {
  switch (g) {
    case Genre::academic: return "academic";
    case Genre::biography: return "biography";
    case Genre::fiction: return "fiction";
    case Genre::forum: return "forum";
    case Genre::howto: return "howto";
    case Genre::interview: return "interview";
    case Genre::news: return "news";
    case Genre::travel: return "travel";
  }
  return "news";
}

std::optional<Genre> genre_from_string(std::string_view s) {
  for (Genre g : kAllGenres)
    if (to_string(g) == s) return g;
  return std::nullopt;
}

std::string_view to_string(MarkupKind k) {
  switch (k) {
    case MarkupKind::heading: return "heading";
    case MarkupKind::paragraph: return "paragraph";
    case MarkupKind::figure: return "figure";
    case MarkupKind::caption: return "caption";
    case MarkupKind::list: return "list";
    case MarkupKind::item: return "item";
    case MarkupKind::speaker: return "speaker";
    case MarkupKind::bold: return "bold";
    case MarkupKind::italic: return "italic";
  }
  return "paragraph";
}

std::optional<MarkupKind> markup_kind_from_string(std::string_view s) {
  static constexpr MarkupKind kinds[] = {
      MarkupKind::heading, MarkupKind::paragraph, MarkupKind::figure,
      MarkupKind::caption, MarkupKind::list,      MarkupKind::item,
      MarkupKind::speaker, MarkupKind::bold,      MarkupKind::italic};
  for (MarkupKind k : kinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::string_view to_string(SentenceType t) {
  switch (t) {
    case SentenceType::decl: return "decl";
    case SentenceType::imp: return "imp";
    case SentenceType::wh: return "wh";
    case SentenceType::q: return "q";
    case SentenceType::frag: return "frag";
    case SentenceType::sub: return "sub";
    case SentenceType::inf: return "inf";
    case SentenceType::intj: return "intj";
    case SentenceType::other: return "other";
  }
  return "other";
}

std::optional<SentenceType> sentence_type_from_string(std::string_view s) {
  static constexpr SentenceType types[] = {
      SentenceType::decl, SentenceType::imp,  SentenceType::wh,
      SentenceType::q,    SentenceType::frag, SentenceType::sub,
      SentenceType::inf,  SentenceType::intj, SentenceType::other};
  for (SentenceType t : types)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

std::string_view to_string(EntityType t) {
  switch (t) {
    case EntityType::person: return "person";
    case EntityType::place: return "place";
    case EntityType::organization: return "organization";
    case EntityType::object: return "object";
    case EntityType::event: return "event";
    case EntityType::time: return "time";
    case EntityType::abstract: return "abstract";
    case EntityType::animal: return "animal";
    case EntityType::plant: return "plant";
    case EntityType::substance: return "substance";
    case EntityType::quantity: return "quantity";
  }
  return "abstract";
}

std::optional<EntityType> entity_type_from_string(std::string_view s) {
  for (EntityType t : kAllEntityTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

}  // namespace forge::corpus
