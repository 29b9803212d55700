#include "forge/metrics/scores.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "forge/common/error.hpp"

namespace forge::metrics {

Prf Prf::from_counts(double matched, double pred_n, double gold_n) {
  Prf r;
  if (pred_n <= 0 && gold_n <= 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return r;
  }
  r.precision = pred_n > 0 ? matched / pred_n : 0.0;
  r.recall = gold_n > 0 ? matched / gold_n : 0.0;
  r.f1 = (r.precision + r.recall) > 0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

MatchCounts tokenization_counts(const std::vector<Span>& gold, const std::vector<Span>& pred) {
  std::set<Span> gold_set(gold.begin(), gold.end());
  double matched = 0;
  std::set<Span> seen;
  for (const auto& p : pred)
    if (gold_set.count(p) && seen.insert(p).second) ++matched;
  return {matched, static_cast<double>(pred.size()), static_cast<double>(gold.size())};
}

Prf score_tokenization(const std::vector<Span>& gold, const std::vector<Span>& pred) {
  return tokenization_counts(gold, pred).prf();
}

MatchCounts token_boundary_counts(const std::vector<Span>& gold, const std::vector<Span>& pred) {
  auto edges = [](const std::vector<Span>& spans) {
    std::set<std::size_t> out;
    for (const auto& s : spans) {
      out.insert(s.first);
      out.insert(s.second);
    }
    return out;
  };
  const auto g = edges(gold);
  const auto p = edges(pred);
  double matched = 0;
  for (std::size_t e : p)
    if (g.count(e)) ++matched;
  return {matched, static_cast<double>(p.size()), static_cast<double>(g.size())};
}

TagCounts tagging_counts(const std::vector<std::string>& gold,
                         const std::vector<std::string>& pred) {
  if (gold.size() != pred.size())
    throw Error("alignment", "tag sequences differ in length: " + std::to_string(gold.size()) +
                                 " vs " + std::to_string(pred.size()));
  TagCounts c;
  c.total = static_cast<double>(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (gold[i] == pred[i]) ++c.correct;
  return c;
}

double score_tagging(const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
  if (gold.empty()) throw Error("alignment", "empty tag sequences");
  return tagging_counts(gold, pred).accuracy();
}

AttachmentCounts attachment_counts(const std::vector<corpus::DepArc>& gold,
                                   const std::vector<corpus::DepArc>& pred) {
  if (gold.size() != pred.size())
    throw Error("alignment", "arc counts differ: " + std::to_string(gold.size()) + " vs " +
                                 std::to_string(pred.size()));
  std::map<std::size_t, const corpus::DepArc*> pred_of;
  for (const auto& a : pred)
    if (!pred_of.emplace(a.dependent, &a).second)
      throw Error("alignment", "duplicate predicted arc for token " + std::to_string(a.dependent));
  AttachmentCounts c;
  c.total = static_cast<double>(gold.size());
  std::set<std::size_t> seen;
  for (const auto& g : gold) {
    if (!seen.insert(g.dependent).second)
      throw Error("alignment", "duplicate gold arc for token " + std::to_string(g.dependent));
    auto it = pred_of.find(g.dependent);
    if (it == pred_of.end())
      throw Error("alignment", "no predicted arc for token " + std::to_string(g.dependent));
    if (it->second->head == g.head) {
      ++c.head_correct;
      if (it->second->deprel == g.deprel) ++c.both_correct;
    }
  }
  return c;
}

AttachmentScores score_attachment(const std::vector<corpus::DepArc>& gold,
                                  const std::vector<corpus::DepArc>& pred) {
  if (gold.empty()) throw Error("alignment", "empty arc sets");
  return attachment_counts(gold, pred).scores();
}

MatchCounts nested_entity_counts(const std::vector<corpus::EntityMention>& gold,
                                 const std::vector<corpus::EntityMention>& pred) {
  using Triple = std::tuple<std::size_t, std::size_t, corpus::EntityType>;
  std::map<Triple, std::size_t> gold_counts;
  for (const auto& m : gold) ++gold_counts[{m.first_token, m.last_token, m.etype}];
  double matched = 0;
  for (const auto& m : pred) {
    auto it = gold_counts.find({m.first_token, m.last_token, m.etype});
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return {matched, static_cast<double>(pred.size()), static_cast<double>(gold.size())};
}

Prf score_nested_entities(const std::vector<corpus::EntityMention>& gold,
                          const std::vector<corpus::EntityMention>& pred) {
  return nested_entity_counts(gold, pred).prf();
}

}  // namespace forge::metrics
