#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::ensemble {

struct FoldPlan {
  int k = 0;
  std::map<std::string, int> assignment;  // doc id -> fold index

  int fold_of(const std::string& doc_id) const;
  std::string to_json() const;
  static FoldPlan from_json(std::string_view json_text);

  bool operator==(const FoldPlan&) const = default;
};

// Document-level, genre-stratified, seed-deterministic assignment. Fold
// sizes differ by at most one within each genre (and overall). Throws
// Error("folds") when k < 2 or k exceeds the document count.
FoldPlan make_folds(const std::vector<std::pair<std::string, corpus::Genre>>& docs, int k,
                    std::uint64_t seed);

}  // namespace forge::ensemble
