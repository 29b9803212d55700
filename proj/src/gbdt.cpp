#include "forge/ensemble/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "forge/common/error.hpp"

namespace forge::ensemble {

namespace {

double leaf_weight(double g, double h, double lambda) { return -g / (h + lambda); }

double gain_term(double g, double h, double lambda) { return g * g / (h + lambda); }

}  // namespace

double GbdtClassifier::Tree::eval(const std::vector<int>& x) const {
  int i = 0;
  while (nodes[i].feature >= 0) {
    const int f = nodes[i].feature;
    i = (x[f] <= nodes[i].threshold) ? nodes[i].left : nodes[i].right;
  }
  return nodes[i].value;
}

struct GbdtTrainer {
  const std::vector<std::vector<int>>& X;
  const GbdtParams& params;
  std::vector<double> grad, hess;

  using Tree = GbdtClassifier::Tree;
  using Node = GbdtClassifier::Node;

  Tree build() {
    Tree tree;
    std::vector<std::size_t> rows(X.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    grow(tree, rows, 0);
    return tree;
  }

  int grow(Tree& tree, const std::vector<std::size_t>& rows, int depth) {
    double g = 0, h = 0;
    for (std::size_t r : rows) {
      g += grad[r];
      h += hess[r];
    }
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});

    int best_feature = -1;
    int best_threshold = 0;
    double best_gain = params.min_split_gain;
    if (depth < params.max_depth && rows.size() >= 2) {
      const std::size_t n_features = X.empty() ? 0 : X[0].size();
      for (std::size_t f = 0; f < n_features; ++f) {
        // Accumulate gradient/hessian per feature value, then prefix-scan
        // candidate thresholds in ascending value order.
        std::map<int, std::pair<double, double>> per_value;
        for (std::size_t r : rows) {
          auto& gh = per_value[X[r][f]];
          gh.first += grad[r];
          gh.second += hess[r];
        }
        if (per_value.size() < 2) continue;
        double gl = 0, hl = 0;
        std::size_t seen = 0;
        for (const auto& [value, gh] : per_value) {
          ++seen;
          if (seen == per_value.size()) break;  // no split after the last value
          gl += gh.first;
          hl += gh.second;
          const double gr = g - gl;
          const double hr = h - hl;
          if (hl < params.min_child_hessian || hr < params.min_child_hessian) continue;
          const double gain = 0.5 * (gain_term(gl, hl, params.reg_lambda) +
                                     gain_term(gr, hr, params.reg_lambda) -
                                     gain_term(g, h, params.reg_lambda));
          if (gain > best_gain + 1e-12) {
            best_gain = gain;
            best_feature = static_cast<int>(f);
            best_threshold = value;
          }
        }
      }
    }

    if (best_feature < 0) {
      tree.nodes[node_id].value = leaf_weight(g, h, params.reg_lambda) * params.learning_rate;
      return node_id;
    }

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows)
      (X[r][static_cast<std::size_t>(best_feature)] <= best_threshold ? left : right).push_back(r);
    tree.nodes[node_id].feature = best_feature;
    tree.nodes[node_id].threshold = best_threshold;
    tree.nodes[node_id].left = grow(tree, left, depth + 1);
    tree.nodes[node_id].right = grow(tree, right, depth + 1);
    return node_id;
  }
};

void GbdtClassifier::fit(const std::vector<std::vector<int>>& X, const std::vector<int>& y,
                         int n_classes, const GbdtParams& params) {
  if (X.empty() || X.size() != y.size()) throw Error("matrix", "empty or misaligned training data");
  if (n_classes < 1) throw Error("matrix", "need at least one class");
  n_classes_ = n_classes;
  rounds_.clear();
  if (n_classes == 1) return;  // degenerate: constant predictor

  const std::size_t n = X.size();
  const std::size_t c = static_cast<std::size_t>(n_classes);
  std::vector<std::vector<double>> logits(c, std::vector<double>(n, 0.0));
  std::vector<double> probs(c);

  GbdtTrainer trainer{X, params, {}, {}};
  trainer.grad.resize(n);
  trainer.hess.resize(n);

  for (int round = 0; round < params.n_trees; ++round) {
    // Softmax probabilities under the current model.
    std::vector<std::vector<double>> p(c, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      double maxv = logits[0][i];
      for (std::size_t k = 1; k < c; ++k) maxv = std::max(maxv, logits[k][i]);
      double denom = 0;
      for (std::size_t k = 0; k < c; ++k) denom += std::exp(logits[k][i] - maxv);
      for (std::size_t k = 0; k < c; ++k) p[k][i] = std::exp(logits[k][i] - maxv) / denom;
    }
    std::vector<Tree> class_trees;
    class_trees.reserve(c);
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const double target = (y[i] == static_cast<int>(k)) ? 1.0 : 0.0;
        trainer.grad[i] = p[k][i] - target;
        trainer.hess[i] = std::max(p[k][i] * (1.0 - p[k][i]), 1e-12);
      }
      Tree t = trainer.build();
      for (std::size_t i = 0; i < n; ++i) logits[k][i] += t.eval(X[i]);
      class_trees.push_back(std::move(t));
    }
    rounds_.push_back(std::move(class_trees));
  }
}

std::vector<double> GbdtClassifier::scores(const std::vector<int>& x) const {
  std::vector<double> s(static_cast<std::size_t>(std::max(n_classes_, 1)), 0.0);
  for (const auto& round : rounds_)
    for (std::size_t k = 0; k < round.size(); ++k) s[k] += round[k].eval(x);
  return s;
}

int GbdtClassifier::predict(const std::vector<int>& x) const {
  if (n_classes_ <= 1) return 0;
  const auto s = scores(x);
  std::size_t best = 0;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (s[k] > s[best]) best = k;
  return static_cast<int>(best);
}

nlohmann::ordered_json GbdtClassifier::to_json() const {
  nlohmann::ordered_json j;
  j["n_classes"] = n_classes_;
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const auto& round : rounds_) {
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (const auto& tree : round) {
      nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
      for (const auto& n : tree.nodes)
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
      classes.push_back(std::move(nodes));
    }
    rounds.push_back(std::move(classes));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

GbdtClassifier GbdtClassifier::from_json(const nlohmann::json& j) {
  GbdtClassifier c;
  c.n_classes_ = j.at("n_classes").get<int>();
  for (const auto& round : j.at("rounds")) {
    std::vector<Tree> classes;
    for (const auto& tree : round) {
      Tree t;
      for (const auto& n : tree) {
        Node node;
        node.feature = n.at(0).get<int>();
        node.threshold = n.at(1).get<int>();
        node.left = n.at(2).get<int>();
        node.right = n.at(3).get<int>();
        node.value = n.at(4).get<double>();
        t.nodes.push_back(node);
      }
      classes.push_back(std::move(t));
    }
    c.rounds_.push_back(std::move(classes));
  }
  return c;
}

}  // namespace forge::ensemble
