#pragma once

#include <vector>

namespace forge::metrics {

// Maximum-weight one-to-one assignment on a rectangular weight matrix
// (rows x cols), O(n^3) augmenting-path algorithm with potentials.
// Returns the total weight of the optimal assignment; unmatched rows/columns
// contribute nothing (the matrix is padded with zero weights internally).
double max_assignment(const std::vector<std::vector<double>>& weights);

}  // namespace forge::metrics
