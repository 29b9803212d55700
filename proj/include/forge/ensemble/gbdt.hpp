#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace forge::ensemble {

struct GbdtParams {
  int n_trees = 100;      // boosting rounds
  int max_depth = 4;
  double learning_rate = 0.1;
  double reg_lambda = 1.0;
  double min_split_gain = 1e-6;
  double min_child_hessian = 1e-3;
  std::uint64_t seed = 0;

  bool operator==(const GbdtParams&) const = default;
};

// Depth-limited regression trees over integer-coded categorical features,
// boosted with a softmax objective (one tree per class per round). Splits
// maximize the usual second-order gain
//   0.5 * (GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l))
// with exact threshold enumeration. Fully deterministic for a fixed seed:
// features in index order, thresholds ascending, first strict improvement
// wins, no subsampling.
class GbdtClassifier {
 public:
  void fit(const std::vector<std::vector<int>>& X, const std::vector<int>& y, int n_classes,
           const GbdtParams& params);

  // Argmax over class scores; ties break toward the lower class index.
  int predict(const std::vector<int>& x) const;
  std::vector<double> scores(const std::vector<int>& x) const;

  int n_classes() const { return n_classes_; }
  bool trained() const { return n_classes_ > 0; }

  nlohmann::ordered_json to_json() const;
  static GbdtClassifier from_json(const nlohmann::json& j);

  bool operator==(const GbdtClassifier&) const = default;

 private:
  struct Node {
    int feature = -1;
    int threshold = 0;  // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf weight (shrinkage folded in)
  };
  struct Tree {
    std::vector<Node> nodes;
    double eval(const std::vector<int>& x) const;
    bool operator==(const Tree&) const = default;
  };

  std::vector<std::vector<Tree>> rounds_;  // [round][class]
  int n_classes_ = 0;

  friend struct GbdtTrainer;
};

}  // namespace forge::ensemble
