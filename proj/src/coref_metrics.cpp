#include "forge/metrics/coref.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "forge/common/error.hpp"
#include "forge/metrics/assignment.hpp"

namespace forge::metrics {

namespace {

constexpr int kNoChain = -1;

// Span -> chain index; throws on duplicate spans within the side.
std::map<Span, int> chain_index(const std::vector<Chain>& side, const char* name) {
  std::map<Span, int> index;
  for (std::size_t c = 0; c < side.size(); ++c)
    for (const auto& span : side[c])
      if (!index.emplace(span, static_cast<int>(c)).second)
        throw Error("input", std::string("duplicate mention span in ") + name + " side");
  return index;
}

// MUC recall numerator/denominator with `key` as the reference partition:
// for each key chain, the number of cells the response partitions it into,
// counting unaligned mentions as singleton cells.
void muc_side(const std::vector<Chain>& key, const std::map<Span, int>& response_of, double& num,
              double& den) {
  for (const auto& k : key) {
    if (k.empty()) continue;
    std::set<int> response_chains;
    std::size_t unaligned = 0;
    for (const auto& span : k) {
      auto it = response_of.find(span);
      if (it == response_of.end())
        ++unaligned;
      else
        response_chains.insert(it->second);
    }
    const double cells = static_cast<double>(response_chains.size() + unaligned);
    num += static_cast<double>(k.size()) - cells;
    den += static_cast<double>(k.size()) - 1.0;
  }
}

// B3 numerator with `key` as the side being scored: for each key mention,
// |K ∩ R| / |K| where K is its key chain and R its response chain (zero when
// the mention is twinless).
void b3_side(const std::vector<Chain>& key, const std::map<Span, int>& response_of, double& num,
             double& den) {
  for (const auto& k : key) {
    std::map<int, std::size_t> overlap;  // response chain -> common mentions
    for (const auto& span : k) {
      auto it = response_of.find(span);
      if (it != response_of.end()) ++overlap[it->second];
    }
    for (const auto& span : k) {
      den += 1.0;
      auto it = response_of.find(span);
      if (it == response_of.end()) continue;
      num += static_cast<double>(overlap[it->second]) / static_cast<double>(k.size());
    }
  }
}

double phi4(const Chain& k, const Chain& r) {
  if (k.empty() && r.empty()) return 0.0;
  std::set<Span> ks(k.begin(), k.end());
  double common = 0;
  for (const auto& span : r)
    if (ks.count(span)) ++common;
  return 2.0 * common / static_cast<double>(k.size() + r.size());
}

Prf ratio_pair(double pn, double pd, double rn, double rd) {
  Prf out;
  if (pd <= 0 && rd <= 0) {
    out.precision = out.recall = out.f1 = 1.0;
    return out;
  }
  out.precision = pd > 0 ? pn / pd : 0.0;
  out.recall = rd > 0 ? rn / rd : 0.0;
  out.f1 = (out.precision + out.recall) > 0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

}  // namespace

void CorefCounts::add(const CorefCounts& o) {
  muc_rn += o.muc_rn;
  muc_rd += o.muc_rd;
  muc_pn += o.muc_pn;
  muc_pd += o.muc_pd;
  b3_rn += o.b3_rn;
  b3_rd += o.b3_rd;
  b3_pn += o.b3_pn;
  b3_pd += o.b3_pd;
  ceaf_phi += o.ceaf_phi;
  ceaf_gold += o.ceaf_gold;
  ceaf_pred += o.ceaf_pred;
}

CorefScores CorefCounts::finish() const {
  CorefScores s;
  s.muc = ratio_pair(muc_pn, muc_pd, muc_rn, muc_rd);
  s.b3 = ratio_pair(b3_pn, b3_pd, b3_rn, b3_rd);
  s.ceaf_e = ratio_pair(ceaf_phi, ceaf_pred, ceaf_phi, ceaf_gold);
  s.avg_f1 = (s.muc.f1 + s.b3.f1 + s.ceaf_e.f1) / 3.0;
  return s;
}

CorefCounts coref_counts(std::vector<Chain> gold, std::vector<Chain> pred, bool keep_singletons) {
  if (!keep_singletons) {
    auto drop = [](std::vector<Chain>& side) {
      side.erase(std::remove_if(side.begin(), side.end(),
                                [](const Chain& c) { return c.size() <= 1; }),
                 side.end());
    };
    drop(gold);
    drop(pred);
  }
  const auto gold_of = chain_index(gold, "gold");
  const auto pred_of = chain_index(pred, "pred");

  CorefCounts c;
  muc_side(gold, pred_of, c.muc_rn, c.muc_rd);
  muc_side(pred, gold_of, c.muc_pn, c.muc_pd);
  b3_side(gold, pred_of, c.b3_rn, c.b3_rd);
  b3_side(pred, gold_of, c.b3_pn, c.b3_pd);

  std::vector<std::vector<double>> phi(gold.size(), std::vector<double>(pred.size(), 0.0));
  for (std::size_t g = 0; g < gold.size(); ++g)
    for (std::size_t p = 0; p < pred.size(); ++p) phi[g][p] = phi4(gold[g], pred[p]);
  c.ceaf_phi = max_assignment(phi);
  c.ceaf_gold = static_cast<double>(gold.size());
  c.ceaf_pred = static_cast<double>(pred.size());
  return c;
}

CorefScores score_coref(std::vector<Chain> gold, std::vector<Chain> pred, bool keep_singletons) {
  return coref_counts(std::move(gold), std::move(pred), keep_singletons).finish();
}

}  // namespace forge::metrics
