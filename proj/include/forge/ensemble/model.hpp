#pragma once

#include <string>
#include <vector>

#include "forge/ensemble/gbdt.hpp"
#include "forge/ensemble/stack.hpp"

namespace forge::ensemble {

// Trained meta-combiner over K base-tagger columns (+ optional shape
// features). Prediction is defined for any tag combination: rows carrying a
// tag value unseen at training fall back to the majority vote with the
// tagger order as priority.
struct StackModel {
  std::vector<std::string> tagger_order;
  bool tags_only = false;
  std::vector<std::vector<std::string>> tag_vocabs;  // per tag column, sorted
  std::vector<std::string> labels;                   // sorted label inventory
  GbdtClassifier booster;
  GbdtParams params;
  double train_accuracy = 0.0;

  std::string to_json() const;
  static StackModel from_json(std::string_view json_text);
};

// Trains the meta-learner. Seed-deterministic; a single-class gold column
// yields a constant predictor. tags_only drops the shape features
// (the strict tags-as-only-input mode).
StackModel fit_meta(const StackMatrix& matrix, const GbdtParams& params, bool tags_only = false);

// One tag per row. Throws Error("schema") when base.tagger_names does not
// match the model's tagger order.
std::vector<std::string> apply_ensemble(const BasePredictions& base, const StackModel& model);

// Modal tag per row; ties break toward the earliest tagger in `priority`
// holding a modal tag. `priority` must be a permutation of tagger_names.
std::vector<std::string> majority_vote(const BasePredictions& base,
                                       const std::vector<std::string>& priority);

}  // namespace forge::ensemble
