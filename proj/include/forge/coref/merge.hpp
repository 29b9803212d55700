#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::coref {

struct NerPrediction {
  std::size_t first_token = 0;
  std::size_t last_token = 0;  // inclusive
  corpus::EntityType etype = corpus::EntityType::abstract;
  std::optional<double> score;  // confidence in [0,1]
};

struct InjectOutcome {
  std::vector<corpus::EntityMention> mentions;
  std::vector<std::string> log;  // resolved span-type ambiguities
};

// Replaces the type of every mention whose token span exactly equals an NER
// span; spans, ids and chain membership never change. Conflicting NER
// predictions on one span resolve by higher score (missing = 0), then input
// order, and are logged.
InjectOutcome inject_types(std::vector<corpus::EntityMention> mentions,
                           const std::vector<NerPrediction>& ner);

// Within each chain all mentions receive one type: the modal type, ties
// broken by the earliest member's type. Singletons and unchained mentions
// are untouched.
std::vector<corpus::EntityMention> harmonize_chain_types(
    std::vector<corpus::EntityMention> mentions, const std::vector<corpus::CorefChain>& chains);

// Removes chains of size one; mention records keep their types. Used on the
// scoring path only — corpus output keeps singletons.
std::vector<corpus::CorefChain> drop_singletons(std::vector<corpus::CorefChain> chains);

// NER file: first <TAB> last <TAB> etype <TAB> score ("_" = no score).
std::vector<NerPrediction> ner_from_tsv(std::string_view tsv);
std::string ner_to_tsv(const std::vector<NerPrediction>& preds);

}  // namespace forge::coref
