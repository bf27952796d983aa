#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "regraph/rational.hpp"

namespace regraph {

using VertexPair = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1. Immutable after construction;
// edges are stored once with u < v and kept sorted. Adjacency is held both as
// neighbor lists and, for n <= 64, as per-vertex 64-bit masks (the hot path
// for BFS and enumeration).
class Graph {
public:
    // Validates and canonicalizes an edge list; duplicates collapse.
    // Throws SelfLoopError / VertexOutOfRangeError.
    static Graph from_edges(int n, std::span<const VertexPair> pairs);
    static Graph from_edges(int n, std::initializer_list<VertexPair> pairs);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<VertexPair>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int u, int v) const;

    // Valid only when vertex_count() <= 64.
    bool has_bitrows() const { return !bits_.empty(); }
    std::uint64_t neighbor_mask(int v) const { return bits_[v]; }

private:
    Graph() = default;

    int n_ = 0;
    std::vector<VertexPair> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint64_t> bits_;
};

// Per-source BFS result. dist uses kUnreachable for vertices in other
// components.
struct DistanceRow {
    static constexpr int kUnreachable = -1;

    int source = 0;
    std::vector<int> dist;
};

// Exact distance metrics of a graph. For disconnected graphs `connected` is
// false and diameter/mpl are absent.
struct Metrics {
    bool connected = false;
    std::optional<int> diameter;
    std::uint64_t distance_sum = 0;  // over ordered pairs of distinct vertices
    std::optional<Rational> mpl;
};

// (is_regular, k): k present iff all degrees are equal.
struct DegreeProfile {
    bool is_regular = false;
    std::optional<int> k;
};

DegreeProfile degree_profile(const Graph& g);

DistanceRow bfs_distances(const Graph& g, int source);

Metrics metrics(const Graph& g);

bool is_connected(const Graph& g);

// Fast path used by the enumeration pipeline: (diameter, distance_sum) of a
// connected graph with n <= 64, or nullopt if disconnected.
std::optional<std::pair<int, std::uint64_t>> diameter_and_distance_sum(const Graph& g);

// Cartesian product: vertex (u, v) has index u * h.vertex_count() + v;
// (u1,v1) ~ (u2,v2) iff equal in one coordinate and adjacent in the other.
Graph cartesian_product(const Graph& g, const Graph& h);

// Relabels g by permutation perm (vertex v becomes perm[v]).
Graph relabel(const Graph& g, std::span<const int> perm);

}  // namespace regraph
