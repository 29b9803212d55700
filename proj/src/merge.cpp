#include "forge/coref/merge.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "forge/common/error.hpp"

namespace forge::coref {

using corpus::CorefChain;
using corpus::EntityMention;
using corpus::EntityType;

InjectOutcome inject_types(std::vector<EntityMention> mentions,
                           const std::vector<NerPrediction>& ner) {
  InjectOutcome out;
  std::map<std::pair<std::size_t, std::size_t>, const NerPrediction*> chosen;
  for (const auto& p : ner) {
    const auto span = std::make_pair(p.first_token, p.last_token);
    auto it = chosen.find(span);
    if (it == chosen.end()) {
      chosen.emplace(span, &p);
      continue;
    }
    if (it->second->etype == p.etype) continue;
    const double held = it->second->score.value_or(0.0);
    const double cand = p.score.value_or(0.0);
    out.log.push_back("span [" + std::to_string(p.first_token) + "," +
                      std::to_string(p.last_token) + "]: " +
                      std::string(to_string(it->second->etype)) + " vs " +
                      std::string(to_string(p.etype)) + " -> " +
                      std::string(to_string(cand > held ? p.etype : it->second->etype)));
    if (cand > held) it->second = &p;
  }
  for (auto& m : mentions) {
    auto it = chosen.find({m.first_token, m.last_token});
    if (it != chosen.end()) m.etype = it->second->etype;
  }
  out.mentions = std::move(mentions);
  return out;
}

std::vector<EntityMention> harmonize_chain_types(std::vector<EntityMention> mentions,
                                                 const std::vector<CorefChain>& chains) {
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < mentions.size(); ++i) index_of[mentions[i].id] = i;

  for (const auto& chain : chains) {
    if (chain.mentions.size() < 2) continue;
    std::map<EntityType, std::size_t> counts;
    bool have_first = false;
    EntityType first_type = EntityType::abstract;
    for (const auto& mid : chain.mentions) {
      auto it = index_of.find(mid);
      if (it == index_of.end()) continue;
      ++counts[mentions[it->second].etype];
      if (!have_first) {
        first_type = mentions[it->second].etype;
        have_first = true;
      }
    }
    if (counts.empty()) continue;
    std::size_t modal = 0;
    for (const auto& [t, n] : counts) modal = std::max(modal, n);
    std::size_t holders = 0;
    EntityType modal_type = first_type;
    for (const auto& [t, n] : counts)
      if (n == modal) {
        ++holders;
        modal_type = t;
      }
    const EntityType target = holders == 1 ? modal_type : first_type;
    for (const auto& mid : chain.mentions) {
      auto it = index_of.find(mid);
      if (it != index_of.end()) mentions[it->second].etype = target;
    }
  }
  return mentions;
}

std::vector<CorefChain> drop_singletons(std::vector<CorefChain> chains) {
  std::vector<CorefChain> out;
  out.reserve(chains.size());
  for (auto& c : chains)
    if (c.mentions.size() > 1) out.push_back(std::move(c));
  return out;
}

std::vector<NerPrediction> ner_from_tsv(std::string_view tsv) {
  std::vector<NerPrediction> out;
  std::istringstream in{std::string(tsv)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() != 4) throw Error("format", "NER line must have 4 columns: " + line);
    auto t = corpus::entity_type_from_string(cols[2]);
    if (!t) throw Error("format", "unknown entity type: " + cols[2]);
    NerPrediction p;
    p.first_token = std::stoull(cols[0]);
    p.last_token = std::stoull(cols[1]);
    p.etype = *t;
    if (cols[3] != "_") p.score = std::stod(cols[3]);
    out.push_back(p);
  }
  return out;
}

std::string ner_to_tsv(const std::vector<NerPrediction>& preds) {
  std::ostringstream out;
  for (const auto& p : preds) {
    out << p.first_token << '\t' << p.last_token << '\t' << to_string(p.etype) << '\t';
    if (p.score)
      out << *p.score;
    else
      out << '_';
    out << "\n";
  }
  return out.str();
}

}  // namespace forge::coref
