#include "forge/metrics/rst.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "forge/common/error.hpp"

namespace forge::metrics {

namespace {

using corpus::Nuclearity;
using corpus::RstNode;

struct Constituent {
  int first, last;
  Nuclearity nuc;
  std::string relation;
};

void collect(const RstNode& node, bool is_root, std::vector<Constituent>& out) {
  if (!is_root && !node.is_leaf())
    out.push_back({node.first_edu, node.last_edu, node.nuclearity, node.relation});
  for (const auto& c : node.children) collect(c, false, out);
}

int leaf_count(const RstNode& node) {
  if (node.is_leaf()) return 1;
  int n = 0;
  for (const auto& c : node.children) n += leaf_count(c);
  return n;
}

template <typename Key>
MatchCounts multiset_match(const std::vector<Constituent>& gold,
                           const std::vector<Constituent>& pred, Key key) {
  std::map<decltype(key(gold.front())), std::size_t> counts;
  for (const auto& g : gold) ++counts[key(g)];
  double matched = 0;
  for (const auto& p : pred) {
    auto it = counts.find(key(p));
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return {matched, static_cast<double>(pred.size()), static_cast<double>(gold.size())};
}

}  // namespace

RstCounts rst_counts(const RstNode& gold, const RstNode& pred) {
  if (leaf_count(gold) != leaf_count(pred))
    throw Error("segmentation-mismatch",
                "trees cover " + std::to_string(leaf_count(gold)) + " vs " +
                    std::to_string(leaf_count(pred)) + " EDUs");

  std::vector<Constituent> g, p;
  collect(gold, true, g);
  collect(pred, true, p);

  RstCounts c;
  if (g.empty() && p.empty()) {
    // Root-plus-leaves trees have no scorable constituents; identical
    // structure counts as full agreement.
    c.span = c.nuclearity = c.relation = MatchCounts{0, 0, 0};
    return c;
  }
  c.span = multiset_match(g, p, [](const Constituent& x) {
    return std::make_tuple(x.first, x.last);
  });
  c.nuclearity = multiset_match(g, p, [](const Constituent& x) {
    return std::make_tuple(x.first, x.last, static_cast<int>(x.nuc));
  });
  c.relation = multiset_match(g, p, [](const Constituent& x) {
    return std::make_tuple(x.first, x.last, x.relation);
  });
  return c;
}

RstScores score_rst(const RstNode& gold, const RstNode& pred) {
  return rst_counts(gold, pred).scores();
}

}  // namespace forge::metrics
