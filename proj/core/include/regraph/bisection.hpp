#pragma once

#include <cstdint>
#include <vector>

#include "regraph/graph.hpp"

namespace regraph {

// A balanced bipartition: part sizes differ by at most one. `witness[v]` is
// 0 for the part containing vertex 0 and 1 for the other part.
struct BisectionResult {
    int width = 0;
    std::vector<int> witness;
    bool exact = false;
};

// Number of edges crossing the given side assignment.
int cut_size(const Graph& g, const std::vector<int>& sides);

// Exact minimum bisection width by branch and bound, seeded with a local
// search incumbent. The witness is the lexicographically least optimal side
// assignment with vertex 0 in part 0. Supports up to 64 vertices.
BisectionResult min_bisection(const Graph& g);

// Kernighan-Lin style pairwise-swap local search from `restarts` random
// balanced starts. Deterministic for a fixed seed; width is an upper bound
// on the true bisection width.
BisectionResult heuristic_bisection(const Graph& g, int restarts,
                                    std::uint64_t seed);

}  // namespace regraph
