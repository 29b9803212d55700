#pragma once

#include "forge/corpus/types.hpp"
#include "forge/metrics/scores.hpp"

namespace forge::metrics {

struct RstScores {
  double span = 0.0;
  double nuclearity = 0.0;
  double relation = 0.0;
};

struct RstCounts {
  MatchCounts span, nuclearity, relation;
  void add(const RstCounts& o) {
    span.add(o.span);
    nuclearity.add(o.nuclearity);
    relation.add(o.relation);
  }
  RstScores scores() const {
    return {span.prf().f1, nuclearity.prf().f1, relation.prf().f1};
  }
};

// Scores over the multiset of non-root internal constituents as
// (span, nuclearity, relation) triples: span F1 on span matches, nuclearity
// on (span, nuclearity), relation on (span, relation). Both trees must
// cover the same EDU sequence (gold segmentation);
// Error("segmentation-mismatch") otherwise.
RstCounts rst_counts(const corpus::RstNode& gold, const corpus::RstNode& pred);
RstScores score_rst(const corpus::RstNode& gold, const corpus::RstNode& pred);

}  // namespace forge::metrics
