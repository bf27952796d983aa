#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "regraph/graph.hpp"

namespace regraph {

struct GenStats {
    std::uint64_t generated = 0;     // connected k-regular classes emitted
    std::uint64_t visited = 0;       // search nodes (edge placements)
    std::uint64_t rejected_iso = 0;  // canonicity-test rejections
    bool parity_violation = false;   // n*k odd: no such graph exists

    GenStats& operator+=(const GenStats& o) {
        generated += o.generated;
        visited += o.visited;
        rejected_iso += o.rejected_iso;
        parity_violation = parity_violation || o.parity_violation;
        return *this;
    }
};

// A resumable slice of the generation tree: the partially built edge set, in
// insertion order. Tasks produced by split_tasks are pairwise disjoint and
// jointly cover the full run.
struct GenTask {
    int n = 0;
    int k = 0;
    std::vector<VertexPair> prefix;

    int depth() const { return static_cast<int>(prefix.size()); }

    std::string serialize() const;
    static GenTask deserialize(const std::string& line);
};

struct SplitResult {
    std::vector<GenTask> tasks;
    GenStats prelude;  // stats of the splitting pass itself
};

using GraphConsumer = std::function<void(const Graph&)>;

// Invokes `consumer` exactly once per isomorphism class of connected
// k-regular graphs on n vertices, in a deterministic order. Generation is
// isomorph-free: an orderly search over row-major adjacency codes keeps a
// partial graph only while its code is maximal over all relabelings.
// Throws InvalidDegreeError for k < 1 or k >= n; n*k odd sets the
// parity_violation flag and emits nothing.
GenStats enumerate_regular(int n, int k, const GraphConsumer& consumer);

// Cuts the generation tree at `split_depth` decided edges.
SplitResult split_tasks(int n, int k, int split_depth);

// Resumes one task to completion.
GenStats run_task(const GenTask& task, const GraphConsumer& consumer);

}  // namespace regraph
