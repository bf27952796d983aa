#include "regraph/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>

#include "regraph/errors.hpp"

namespace regraph {

Graph Graph::from_edges(int n, std::span<const VertexPair> pairs) {
    if (n < 0) throw VertexOutOfRangeError("vertex count must be non-negative");
    std::vector<VertexPair> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) {
        if (u == v)
            throw SelfLoopError("self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw VertexOutOfRangeError("edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ") outside 0.." +
                                        std::to_string(n - 1));
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adj_.assign(n, {});
    for (auto [u, v] : g.edges_) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
    if (n <= 64) {
        g.bits_.assign(n, 0);
        for (auto [u, v] : g.edges_) {
            g.bits_[u] |= std::uint64_t{1} << v;
            g.bits_[v] |= std::uint64_t{1} << u;
        }
    }
    return g;
}

Graph Graph::from_edges(int n, std::initializer_list<VertexPair> pairs) {
    return from_edges(n, std::span<const VertexPair>(pairs.begin(), pairs.size()));
}

bool Graph::has_edge(int u, int v) const {
    if (!bits_.empty()) return (bits_[u] >> v) & 1;
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

DegreeProfile degree_profile(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return {true, 0};
    int k = g.degree(0);
    for (int v = 1; v < n; ++v)
        if (g.degree(v) != k) return {false, std::nullopt};
    return {true, k};
}

namespace {

// Frontier-expansion BFS over 64-bit adjacency masks.
void bfs_bits(const Graph& g, int source, std::vector<int>& dist) {
    std::uint64_t visited = std::uint64_t{1} << source;
    std::uint64_t frontier = visited;
    int level = 0;
    dist[source] = 0;
    while (frontier != 0) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f != 0; f &= f - 1)
            next |= g.neighbor_mask(std::countr_zero(f));
        next &= ~visited;
        ++level;
        for (std::uint64_t f = next; f != 0; f &= f - 1)
            dist[std::countr_zero(f)] = level;
        visited |= next;
        frontier = next;
    }
}

void bfs_lists(const Graph& g, int source, std::vector<int>& dist) {
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(u)) {
            if (dist[w] == DistanceRow::kUnreachable) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

}  // namespace

DistanceRow bfs_distances(const Graph& g, int source) {
    if (source < 0 || source >= g.vertex_count())
        throw VertexOutOfRangeError("BFS source " + std::to_string(source) +
                                    " outside graph");
    DistanceRow row;
    row.source = source;
    row.dist.assign(g.vertex_count(), DistanceRow::kUnreachable);
    if (g.has_bitrows())
        bfs_bits(g, source, row.dist);
    else
        bfs_lists(g, source, row.dist);
    return row;
}

Metrics metrics(const Graph& g) {
    const int n = g.vertex_count();
    Metrics m;
    if (n == 0) return m;
    m.connected = true;
    int diameter = 0;
    std::uint64_t total = 0;
    std::vector<int> dist;
    for (int s = 0; s < n && m.connected; ++s) {
        dist.assign(n, DistanceRow::kUnreachable);
        if (g.has_bitrows())
            bfs_bits(g, s, dist);
        else
            bfs_lists(g, s, dist);
        for (int v = 0; v < n; ++v) {
            if (dist[v] == DistanceRow::kUnreachable) {
                m.connected = false;
                break;
            }
            diameter = std::max(diameter, dist[v]);
            total += static_cast<std::uint64_t>(dist[v]);
        }
    }
    if (!m.connected) {
        m.distance_sum = 0;
        return m;
    }
    m.distance_sum = total;
    m.diameter = diameter;
    if (n > 1)
        m.mpl = Rational(static_cast<std::int64_t>(total),
                         static_cast<std::int64_t>(n) * (n - 1));
    else
        m.mpl = Rational(0, 1);
    return m;
}

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return true;
    DistanceRow row = bfs_distances(g, 0);
    for (int v = 0; v < n; ++v)
        if (row.dist[v] == DistanceRow::kUnreachable) return false;
    return true;
}

std::optional<std::pair<int, std::uint64_t>> diameter_and_distance_sum(const Graph& g) {
    const int n = g.vertex_count();
    int diameter = 0;
    std::uint64_t total = 0;
    const std::uint64_t all = (n == 64) ? ~std::uint64_t{0}
                                        : ((std::uint64_t{1} << n) - 1);
    for (int s = 0; s < n; ++s) {
        std::uint64_t visited = std::uint64_t{1} << s;
        std::uint64_t frontier = visited;
        int level = 0;
        while (frontier != 0) {
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f != 0; f &= f - 1)
                next |= g.neighbor_mask(std::countr_zero(f));
            next &= ~visited;
            if (next == 0) break;
            ++level;
            total += static_cast<std::uint64_t>(level) *
                     static_cast<std::uint64_t>(std::popcount(next));
            visited |= next;
            frontier = next;
        }
        if (visited != all) return std::nullopt;
        diameter = std::max(diameter, level);
    }
    return std::make_pair(diameter, total);
}

Graph cartesian_product(const Graph& g, const Graph& h) {
    const int ng = g.vertex_count();
    const int nh = h.vertex_count();
    std::vector<VertexPair> edges;
    edges.reserve(static_cast<std::size_t>(ng) * h.edge_count() +
                  static_cast<std::size_t>(nh) * g.edge_count());
    for (int u = 0; u < ng; ++u)
        for (auto [v1, v2] : h.edges())
            edges.emplace_back(u * nh + v1, u * nh + v2);
    for (auto [u1, u2] : g.edges())
        for (int v = 0; v < nh; ++v)
            edges.emplace_back(u1 * nh + v, u2 * nh + v);
    return Graph::from_edges(ng * nh, edges);
}

Graph relabel(const Graph& g, std::span<const int> perm) {
    std::vector<VertexPair> edges;
    edges.reserve(g.edges().size());
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    return Graph::from_edges(g.vertex_count(), edges);
}

}  // namespace regraph
