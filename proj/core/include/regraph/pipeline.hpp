#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "regraph/bounds.hpp"
#include "regraph/enumerate.hpp"
#include "regraph/graph.hpp"
#include "regraph/rational.hpp"
#include "regraph/symmetry.hpp"

namespace regraph {

// Lexicographic quality score: smaller diameter, then smaller total distance
// (the exact MPL proxy for fixed n), then larger bisection width, then
// larger automorphism group order.
struct Score {
    int diameter = 0;
    std::uint64_t distance_sum = 0;
    int bisection = 0;
    BigInt aut_order = 0;
};

// True when a ranks strictly better than b.
bool score_better(const Score& a, const Score& b);
bool score_equal(const Score& a, const Score& b);

struct ScoredGraph {
    Graph graph;
    Score score;
    Rational mpl;
    CanonicalForm canonical;
    SymmetryResult symmetry;
};

struct OptimalSet {
    int n = 0;
    int k = 0;
    BoundsRecord bounds;
    std::vector<ScoredGraph> graphs;  // co-optimal, pairwise non-isomorphic
    int tie_count = 0;
    bool diameter_meets_bound = false;
    bool mpl_meets_bound = false;
    GenStats stats;
    double wall_seconds = 0.0;
};

struct OptimizeOptions {
    int jobs = 1;
    int split_depth = -1;               // negative: derived from jobs
    std::string spill_dir;              // survivor spill location ("" = cwd)
    std::size_t memory_cap = 1000000;   // survivors kept in memory before spilling
    std::atomic<bool>* cancel = nullptr;
    bool timing = false;                // record wall time (makes reports non-reproducible)
};

// Two-phase lexicographic filter over all connected (n, k) graphs:
// phase 1 streams the enumeration keeping minimal (diameter, distance_sum);
// phase 2 scores the survivors by bisection width, then automorphism group
// order. k = 2 returns the cycle directly.
OptimalSet optimize(int n, int k, const OptimizeOptions& opts = {});

struct Evaluation {
    Score score;
    Rational mpl;
    bool diameter_meets_bound = false;
    bool mpl_meets_bound = false;
};

// Candidate-set mode: scores the given graphs (all connected and regular
// with one shared (n, k)), preserving input order.
std::vector<Evaluation> evaluate(const std::vector<Graph>& graphs);

enum class ReportFormat { kJson, kCsv, kText };

ReportFormat parse_report_format(const std::string& name);

// Deterministic document for an optimal set; byte-identical across runs and
// worker counts (unless timing was enabled).
std::string report(const OptimalSet& set, ReportFormat format);

}  // namespace regraph
