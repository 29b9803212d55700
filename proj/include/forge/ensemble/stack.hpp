#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "forge/ensemble/folds.hpp"

namespace forge::ensemble {

struct TokenKey {
  std::string doc;
  std::size_t ordinal = 0;

  auto operator<=>(const TokenKey&) const = default;
};

// Token-aligned tag columns from K taggers, rows in (doc, ordinal) order.
struct BasePredictions {
  std::vector<std::string> tagger_names;
  struct Row {
    TokenKey key;
    std::string form;               // needed for shape features
    std::vector<std::string> tags;  // exactly K, in tagger order
  };
  std::vector<Row> rows;
  std::optional<int> fold_id;  // held-out fold for re-trained predictions
};

struct GoldToken {
  TokenKey key;
  std::string form;
  std::string tag;
};

// One tagger's predictions, one tag per covered token.
struct TaggerPredictions {
  std::string tagger;
  bool retrained = false;  // rows must carry the producing model's held-out fold
  struct Row {
    TokenKey key;
    std::string form;
    std::string tag;
    std::optional<int> fold;
  };
  std::vector<Row> rows;
};

// Shape features derived from the surface form.
struct ShapeFeatures {
  int case_pattern = 0;  // 0 lower, 1 upper, 2 title, 3 mixed, 4 no letters
  int has_digit = 0;
  int is_punct = 0;
  int length_bucket = 0;  // 1,2,3,4-6,7-10,11+

  bool operator==(const ShapeFeatures&) const = default;
};

ShapeFeatures shape_of(const std::string& form);

// The stacked training matrix: one row per gold token, K tag columns in a
// fixed tagger order plus shape features plus the gold label.
struct StackMatrix {
  std::vector<std::string> tagger_order;
  std::vector<std::vector<std::string>> tag_cells;  // [row][tagger]
  std::vector<ShapeFeatures> shapes;
  std::vector<std::string> forms;
  std::vector<std::string> gold;
  std::vector<TokenKey> keys;

  std::string to_tsv() const;
  static StackMatrix from_tsv(std::string_view tsv);
};

// Assembles the matrix. Re-trained predictions must cover every gold token
// exactly once across folds, and only on each model's held-out fold
// (Error("fold") otherwise); coverage gaps and overlaps raise
// Error("matrix") naming the token. Pre-trained predictions must cover every
// token. Column order: `taggers` order as given.
StackMatrix assemble_stack_matrix(const std::vector<TaggerPredictions>& taggers,
                                  const std::vector<GoldToken>& gold, const FoldPlan& plan);

// TSV loader for base-prediction files: doc <TAB> ordinal <TAB> tagger
// <TAB> xpos [<TAB> form [<TAB> fold]]. Splits into per-tagger groups,
// sorted by tagger name.
std::vector<TaggerPredictions> predictions_from_tsv(std::string_view tsv, bool retrained);
std::string predictions_to_tsv(const std::vector<TaggerPredictions>& taggers);

// Pivot per-tagger predictions into K-column rows following `order`. Every
// tagger must cover exactly the same key set (Error("schema") otherwise).
BasePredictions pivot_predictions(const std::vector<TaggerPredictions>& taggers,
                                  const std::vector<std::string>& order);

}  // namespace forge::ensemble
