#pragma once

#include <vector>

#include "forge/metrics/scores.hpp"

namespace forge::metrics {

// A chain is the set of its mention spans; a document side is a list of
// chains. Mention spans must be unique within a side (Error("input")).
using Chain = std::vector<Span>;

struct CorefScores {
  Prf muc;
  Prf b3;
  Prf ceaf_e;       // CEAF with phi4 similarity under the optimal alignment
  double avg_f1 = 0.0;
};

// Summable numerators/denominators for micro-averaged corpus scores.
struct CorefCounts {
  double muc_rn = 0, muc_rd = 0, muc_pn = 0, muc_pd = 0;
  double b3_rn = 0, b3_rd = 0, b3_pn = 0, b3_pd = 0;
  double ceaf_phi = 0, ceaf_gold = 0, ceaf_pred = 0;

  void add(const CorefCounts& o);
  CorefScores finish() const;
};

// When keep_singletons is false (the default), size-1 chains are removed
// from both sides before scoring. MUC is link-based, B3 mention-weighted
// (twinless mentions contribute zero to their side's numerator), CEAF uses
// phi4(K,R) = 2|K∩R| / (|K|+|R|) under an optimal one-to-one alignment.
CorefCounts coref_counts(std::vector<Chain> gold, std::vector<Chain> pred,
                         bool keep_singletons = false);
CorefScores score_coref(std::vector<Chain> gold, std::vector<Chain> pred,
                        bool keep_singletons = false);

}  // namespace forge::metrics
