#pragma once

#include <string>
#include <utility>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::metrics {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Empty-vs-empty counts as perfect agreement; an empty side against a
  // non-empty one scores zero on its measure.
  static Prf from_counts(double matched, double pred_n, double gold_n);
};

// Summable match counts for micro-averaged corpus scores.
struct MatchCounts {
  double matched = 0, pred_n = 0, gold_n = 0;
  void add(const MatchCounts& o) {
    matched += o.matched;
    pred_n += o.pred_n;
    gold_n += o.gold_n;
  }
  Prf prf() const { return Prf::from_counts(matched, pred_n, gold_n); }
};

using Span = std::pair<std::size_t, std::size_t>;  // token/char span, exclusive end

// Exact-span tokenization match.
MatchCounts tokenization_counts(const std::vector<Span>& gold, const std::vector<Span>& pred);
Prf score_tokenization(const std::vector<Span>& gold, const std::vector<Span>& pred);

// Boundary-based alternative: split points (span edges) instead of spans.
MatchCounts token_boundary_counts(const std::vector<Span>& gold, const std::vector<Span>& pred);

struct TagCounts {
  double correct = 0, total = 0;
  void add(const TagCounts& o) {
    correct += o.correct;
    total += o.total;
  }
  double accuracy() const { return total > 0 ? correct / total : 0.0; }
};

TagCounts tagging_counts(const std::vector<std::string>& gold, const std::vector<std::string>& pred);
// Throws Error("alignment") on length mismatch or empty input.
double score_tagging(const std::vector<std::string>& gold, const std::vector<std::string>& pred);

struct AttachmentScores {
  double uas = 0.0;
  double las = 0.0;
};

struct AttachmentCounts {
  double head_correct = 0, both_correct = 0, total = 0;
  void add(const AttachmentCounts& o) {
    head_correct += o.head_correct;
    both_correct += o.both_correct;
    total += o.total;
  }
  AttachmentScores scores() const {
    if (total <= 0) return {0.0, 0.0};
    return {head_correct / total, both_correct / total};
  }
};

AttachmentCounts attachment_counts(const std::vector<corpus::DepArc>& gold,
                                   const std::vector<corpus::DepArc>& pred);
// Throws Error("alignment") when the dependent sets differ or input is empty.
AttachmentScores score_attachment(const std::vector<corpus::DepArc>& gold,
                                  const std::vector<corpus::DepArc>& pred);

// Nested typed mentions: correct iff span and type both match a distinct
// gold mention (multiset matching); micro P/R/F1.
MatchCounts nested_entity_counts(const std::vector<corpus::EntityMention>& gold,
                                 const std::vector<corpus::EntityMention>& pred);
Prf score_nested_entities(const std::vector<corpus::EntityMention>& gold,
                          const std::vector<corpus::EntityMention>& pred);

}  // namespace forge::metrics
