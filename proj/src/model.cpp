#include "forge/ensemble/model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "forge/common/error.hpp"

namespace forge::ensemble {

namespace {

std::vector<int> encode_row(const StackModel& model, const std::vector<std::string>& tags,
                            const ShapeFeatures& shape, bool& unseen) {
  std::vector<int> x;
  x.reserve(tags.size() + 4);
  unseen = false;
  for (std::size_t c = 0; c < tags.size(); ++c) {
    const auto& vocab = model.tag_vocabs[c];
    auto it = std::lower_bound(vocab.begin(), vocab.end(), tags[c]);
    if (it == vocab.end() || *it != tags[c]) {
      unseen = true;
      x.push_back(-1);
    } else {
      x.push_back(static_cast<int>(it - vocab.begin()));
    }
  }
  if (!model.tags_only) {
    x.push_back(shape.case_pattern);
    x.push_back(shape.has_digit);
    x.push_back(shape.is_punct);
    x.push_back(shape.length_bucket);
  }
  return x;
}

std::string vote_one(const std::vector<std::string>& tags,
                     const std::vector<std::string>& tagger_names,
                     const std::vector<std::string>& priority) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : tags) ++counts[t];
  std::size_t modal = 0;
  for (const auto& [tag, n] : counts) modal = std::max(modal, n);
  std::map<std::string, std::size_t> column_of;
  for (std::size_t i = 0; i < tagger_names.size(); ++i) column_of[tagger_names[i]] = i;
  for (const auto& name : priority) {
    const std::size_t col = column_of.at(name);
    if (counts[tags[col]] == modal) return tags[col];
  }
  return tags.front();
}

}  // namespace

std::string StackModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "stack-model/1";
  j["tagger_order"] = tagger_order;
  j["tags_only"] = tags_only;
  j["tag_vocabs"] = tag_vocabs;
  j["labels"] = labels;
  j["params"] = {{"n_trees", params.n_trees},
                 {"max_depth", params.max_depth},
                 {"learning_rate", params.learning_rate},
                 {"reg_lambda", params.reg_lambda},
                 {"min_split_gain", params.min_split_gain},
                 {"min_child_hessian", params.min_child_hessian},
                 {"seed", params.seed}};
  j["train_accuracy"] = train_accuracy;
  j["booster"] = booster.to_json();
  return j.dump() + "\n";
}

StackModel StackModel::from_json(std::string_view json_text) {
  auto j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw Error("schema", "model file is not valid JSON");
  StackModel m;
  m.tagger_order = j.at("tagger_order").get<std::vector<std::string>>();
  m.tags_only = j.at("tags_only").get<bool>();
  m.tag_vocabs = j.at("tag_vocabs").get<std::vector<std::vector<std::string>>>();
  m.labels = j.at("labels").get<std::vector<std::string>>();
  const auto& p = j.at("params");
  m.params.n_trees = p.at("n_trees").get<int>();
  m.params.max_depth = p.at("max_depth").get<int>();
  m.params.learning_rate = p.at("learning_rate").get<double>();
  m.params.reg_lambda = p.at("reg_lambda").get<double>();
  m.params.min_split_gain = p.at("min_split_gain").get<double>();
  m.params.min_child_hessian = p.at("min_child_hessian").get<double>();
  m.params.seed = p.at("seed").get<std::uint64_t>();
  m.train_accuracy = j.at("train_accuracy").get<double>();
  m.booster = GbdtClassifier::from_json(j.at("booster"));
  return m;
}

StackModel fit_meta(const StackMatrix& matrix, const GbdtParams& params, bool tags_only) {
  if (matrix.gold.empty()) throw Error("matrix", "empty training matrix");

  StackModel model;
  model.tagger_order = matrix.tagger_order;
  model.tags_only = tags_only;
  model.params = params;

  // Per-column tag vocabularies and the label inventory, sorted for stable
  // integer coding.
  model.tag_vocabs.resize(matrix.tagger_order.size());
  for (std::size_t c = 0; c < matrix.tagger_order.size(); ++c) {
    std::set<std::string> vocab;
    for (const auto& row : matrix.tag_cells) vocab.insert(row[c]);
    model.tag_vocabs[c].assign(vocab.begin(), vocab.end());
  }
  {
    std::set<std::string> labels(matrix.gold.begin(), matrix.gold.end());
    model.labels.assign(labels.begin(), labels.end());
  }

  std::map<std::string, int> label_of;
  for (std::size_t i = 0; i < model.labels.size(); ++i)
    label_of[model.labels[i]] = static_cast<int>(i);

  std::vector<std::vector<int>> X;
  std::vector<int> y;
  X.reserve(matrix.gold.size());
  y.reserve(matrix.gold.size());
  for (std::size_t r = 0; r < matrix.gold.size(); ++r) {
    bool unseen = false;
    X.push_back(encode_row(model, matrix.tag_cells[r], matrix.shapes[r], unseen));
    y.push_back(label_of.at(matrix.gold[r]));
  }

  model.booster.fit(X, y, static_cast<int>(model.labels.size()), params);

  std::size_t correct = 0;
  for (std::size_t r = 0; r < X.size(); ++r)
    if (model.booster.predict(X[r]) == y[r]) ++correct;
  model.train_accuracy = static_cast<double>(correct) / static_cast<double>(X.size());
  return model;
}

std::vector<std::string> apply_ensemble(const BasePredictions& base, const StackModel& model) {
  if (base.tagger_names != model.tagger_order)
    throw Error("schema", "base predictions tagger order does not match the model");
  std::vector<std::string> out;
  out.reserve(base.rows.size());
  for (const auto& row : base.rows) {
    if (row.tags.size() != model.tagger_order.size())
      throw Error("schema", "row width does not match the model");
    bool unseen = false;
    const auto x = encode_row(model, row.tags, shape_of(row.form), unseen);
    if (unseen || !model.booster.trained()) {
      out.push_back(vote_one(row.tags, base.tagger_names, model.tagger_order));
    } else {
      out.push_back(model.labels[static_cast<std::size_t>(model.booster.predict(x))]);
    }
  }
  return out;
}

std::vector<std::string> majority_vote(const BasePredictions& base,
                                       const std::vector<std::string>& priority) {
  if (priority.size() != base.tagger_names.size())
    throw Error("schema", "priority must be a permutation of the tagger names");
  {
    std::set<std::string> a(priority.begin(), priority.end());
    std::set<std::string> b(base.tagger_names.begin(), base.tagger_names.end());
    if (a != b) throw Error("schema", "priority must be a permutation of the tagger names");
  }
  std::vector<std::string> out;
  out.reserve(base.rows.size());
  for (const auto& row : base.rows) out.push_back(vote_one(row.tags, base.tagger_names, priority));
  return out;
}

}  // namespace forge::ensemble
