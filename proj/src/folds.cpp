#include "forge/ensemble/folds.hpp"

#include <algorithm>

#include <json.hpp>

#include "forge/common/error.hpp"
#include "forge/common/rng.hpp"

namespace forge::ensemble {

int FoldPlan::fold_of(const std::string& doc_id) const {
  auto it = assignment.find(doc_id);
  if (it == assignment.end()) throw Error("folds", "document not in fold plan: " + doc_id);
  return it->second;
}

std::string FoldPlan::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  nlohmann::ordered_json a = nlohmann::ordered_json::object();
  for (const auto& [doc, fold] : assignment) a[doc] = fold;
  j["assignment"] = std::move(a);
  return j.dump(2) + "\n";
}

FoldPlan FoldPlan::from_json(std::string_view json_text) {
  auto j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw Error("folds", "fold plan is not valid JSON");
  FoldPlan plan;
  plan.k = j.at("k").get<int>();
  for (auto& [doc, fold] : j.at("assignment").items()) plan.assignment[doc] = fold.get<int>();
  return plan;
}

FoldPlan make_folds(const std::vector<std::pair<std::string, corpus::Genre>>& docs, int k,
                    std::uint64_t seed) {
  if (k < 2) throw Error("folds", "k must be at least 2");
  if (static_cast<std::size_t>(k) > docs.size())
    throw Error("folds", "k=" + std::to_string(k) + " exceeds document count " +
                             std::to_string(docs.size()));

  FoldPlan plan;
  plan.k = k;
  Rng rng(seed);
  // Deal each genre's shuffled documents round-robin, with the counter
  // carried across genres so overall fold sizes stay balanced too.
  std::size_t counter = rng.below(static_cast<std::size_t>(k));
  for (corpus::Genre g : corpus::kAllGenres) {
    std::vector<std::string> ids;
    for (const auto& [id, genre] : docs)
      if (genre == g) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    rng.shuffle(ids);
    for (const auto& id : ids) {
      if (plan.assignment.count(id)) throw Error("folds", "duplicate document id: " + id);
      plan.assignment[id] = static_cast<int>(counter % static_cast<std::size_t>(k));
      ++counter;
    }
  }
  if (plan.assignment.size() != docs.size())
    throw Error("folds", "duplicate document ids in input");
  return plan;
}

}  // namespace forge::ensemble
