#include <doctest.h>

#include "forge/common/error.hpp"
#include "forge/common/rng.hpp"
#include "forge/corpus/blocks.hpp"
#include "forge/corpus/validate.hpp"
#include "forge/split/splitter.hpp"
#include "forge/tokenize/tokenizer.hpp"
#include "support/generators.hpp"

using namespace forge;
using namespace forge::split;
using corpus::MarkupKind;
using corpus::MarkupSpan;
using corpus::SentenceType;
using corpus::Token;

namespace {

struct Prepared {
  std::string text;
  std::vector<MarkupSpan> markup;
  std::vector<Token> tokens;
  std::vector<std::string> tags;
};

Prepared prepare(const std::string& text, std::vector<MarkupSpan> markup = {}) {
  Prepared p;
  p.text = text;
  p.markup = std::move(markup);
  p.tokens = tokenize::tokenize(p.text, p.markup);
  p.tags.assign(p.tokens.size(), "");
  return p;
}

std::vector<std::string> tags_for(const std::vector<Token>& toks,
                                  const std::vector<std::pair<std::string, std::string>>& lex) {
  std::vector<std::string> tags(toks.size(), "NN");
  for (std::size_t i = 0; i < toks.size(); ++i)
    for (const auto& [form, tag] : lex)
      if (toks[i].form == form) tags[i] = tag;
  return tags;
}

}  // namespace

TEST_CASE("heading forces a boundary regardless of punctuation") {
  auto assembled = corpus::assemble_blocks(
      {{MarkupKind::heading, "Introduction", {}, ""},
       {MarkupKind::paragraph, "no capital no period here", {}, ""}});
  Prepared p = prepare(assembled.text, assembled.markup);
  const auto sents = split_sentences(p.tokens, p.tags, p.markup);
  REQUIRE(sents.size() == 2);
  CHECK(sents[0].first_token == 0);
  CHECK(sents[0].last_token == 0);
  CHECK(sents[1].first_token == 1);
}

TEST_CASE("abbreviation suppresses the boundary") {
  Prepared p = prepare("Mr. Smith left. He ran.");
  const auto sents = split_sentences(p.tokens, p.tags, p.markup);
  REQUIRE(sents.size() == 2);
  // "Mr." is one token (abbreviation-attached period), so sentence one is
  // Mr. Smith left . == tokens 0..3.
  CHECK(sents[0].first_token == 0);
  CHECK(sents[0].last_token == 3);
  CHECK(sents[1].first_token == 4);
}

TEST_CASE("single token document is one sentence") {
  Prepared p = prepare("Stop");
  const auto sents = split_sentences(p.tokens, p.tags, p.markup);
  REQUIRE(sents.size() == 1);
  CHECK(sents[0].first_token == 0);
  CHECK(sents[0].last_token == 0);
}

TEST_CASE("closing quotes stay with the sentence") {
  Prepared p = prepare("He said \"go.\" Then left.");
  const auto sents = split_sentences(p.tokens, p.tags, p.markup);
  REQUIRE(sents.size() == 2);
  // Tokens: He said " go . " Then left .
  CHECK(sents[0].last_token == 5);
  CHECK(sents[1].first_token == 6);
}

TEST_CASE("tag misalignment is an error") {
  Prepared p = prepare("One two.");
  std::vector<std::string> bad(p.tokens.size() + 1, "");
  CHECK_THROWS_AS(split_sentences(p.tokens, bad, p.markup), Error);
}

TEST_CASE("external boundaries are kept and markup constraints still added") {
  auto assembled = corpus::assemble_blocks(
      {{MarkupKind::paragraph, "alpha beta gamma delta", {}, ""},
       {MarkupKind::paragraph, "epsilon zeta", {}, ""}});
  Prepared p = prepare(assembled.text, assembled.markup);
  // External predictor says token 2 starts a sentence; paragraph edge at 4
  // must be added, never removed.
  const auto sents = split_sentences_with({2}, p.tokens, p.tags, p.markup);
  REQUIRE(sents.size() == 3);
  CHECK(sents[0].first_token == 0);
  CHECK(sents[1].first_token == 2);
  CHECK(sents[2].first_token == 4);
}

TEST_CASE("classify_sentence_type cascade") {
  SUBCASE("imperative: verb-initial, no subject") {
    Prepared p = prepare("Open the door .");
    const auto tags = tags_for(p.tokens, {{"Open", "VB"}, {"the", "DT"}, {"door", "NN"}});
    CHECK(classify_sentence_type(p.tokens, tags) == SentenceType::imp);
  }
  SUBCASE("wh-question") {
    Prepared p = prepare("Where is it ?");
    const auto tags = tags_for(p.tokens, {{"Where", "WRB"}, {"is", "VBZ"}, {"it", "PRP"}});
    CHECK(classify_sentence_type(p.tokens, tags) == SentenceType::wh);
  }
  SUBCASE("plain question") {
    Prepared p = prepare("It works ?");
    const auto tags = tags_for(p.tokens, {{"It", "PRP"}, {"works", "VBZ"}});
    CHECK(classify_sentence_type(p.tokens, tags) == SentenceType::q);
  }
  SUBCASE("declarative") {
    Prepared p = prepare("It rains .");
    const auto tags = tags_for(p.tokens, {{"It", "PRP"}, {"rains", "VBZ"}});
    CHECK(classify_sentence_type(p.tokens, tags) == SentenceType::decl);
  }
  SUBCASE("fragment: no finite verb") {
    Prepared p = prepare("The old harbor .");
    const auto tags = tags_for(p.tokens, {{"The", "DT"}, {"old", "JJ"}, {"harbor", "NN"}});
    CHECK(classify_sentence_type(p.tokens, tags) == SentenceType::frag);
  }
  SUBCASE("interjection-only") {
    Prepared p = prepare("Wow !");
    const auto tags = tags_for(p.tokens, {{"Wow", "UH"}});
    CHECK(classify_sentence_type(p.tokens, tags) == SentenceType::intj);
  }
  SUBCASE("subordinate clause via arcs") {
    Prepared p = prepare("Because he left .");
    const auto tags =
        tags_for(p.tokens, {{"Because", "IN"}, {"he", "PRP"}, {"left", "VBD"}});
    std::vector<corpus::DepArc> arcs = {{0, 2, "mark"},
                                        {1, 2, "nsubj"},
                                        {2, corpus::kRootHead, "root"},
                                        {3, 2, "punct"}};
    CHECK(classify_sentence_type(p.tokens, tags, &arcs) == SentenceType::sub);
  }
  SUBCASE("infinitival root via arcs") {
    Prepared p = prepare("To open the door .");
    const auto tags = tags_for(p.tokens, {{"To", "TO"}, {"open", "VB"}, {"the", "DT"},
                                          {"door", "NN"}});
    std::vector<corpus::DepArc> arcs = {{0, 1, "mark"},
                                        {1, corpus::kRootHead, "root"},
                                        {2, 3, "det"},
                                        {3, 1, "obj"},
                                        {4, 1, "punct"}};
    CHECK(classify_sentence_type(p.tokens, tags, &arcs) == SentenceType::inf);
  }
  SUBCASE("classification is pure") {
    Prepared p = prepare("It rains .");
    const auto tags = tags_for(p.tokens, {{"It", "PRP"}, {"rains", "VBZ"}});
    const auto a = classify_sentence_type(p.tokens, tags);
    const auto b = classify_sentence_type(p.tokens, tags);
    CHECK(a == b);
  }
}

TEST_CASE("no sentence crosses a block edge on fuzzed documents") {
  Rng rng(8899);
  for (int i = 0; i < 200; ++i) {
    auto assembled = corpus::assemble_blocks(testgen::random_blocks(rng, 1, 6));
    Prepared p = prepare(assembled.text, assembled.markup);
    if (p.tokens.empty()) continue;
    const auto sents = split_sentences(p.tokens, p.tags, p.markup);
    // Validator owns the crossing check.
    corpus::Document doc;
    doc.id = "d";
    doc.raw_text = p.text;
    doc.markup = p.markup;
    doc.tokens = p.tokens;
    doc.sentences = sents;
    const auto report = corpus::validate_document(doc);
    for (const auto& v : report.violations) {
      CHECK(v.rule != "sentence.block_bound");
      CHECK(v.rule != "sentence.partition");
    }
    // Every token in exactly one sentence.
    std::size_t covered = 0;
    for (const auto& s : sents) covered += s.last_token - s.first_token + 1;
    CHECK(covered == p.tokens.size());
    // Also against caption/item/speaker edges (stronger than the validator).
    for (const auto& s : sents) {
      for (const auto& span : p.markup) {
        if (span.kind == MarkupKind::bold || span.kind == MarkupKind::italic ||
            span.kind == MarkupKind::figure || span.kind == MarkupKind::list)
          continue;
        std::size_t inside = 0;
        for (std::size_t t = s.first_token; t <= s.last_token; ++t)
          if (p.tokens[t].start >= span.start && p.tokens[t].end <= span.end) ++inside;
        const std::size_t n = s.last_token - s.first_token + 1;
        CHECK((inside == 0 || inside == n));
      }
    }
  }
}
