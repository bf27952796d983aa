#include "regraph/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <utility>

#include "regraph/errors.hpp"
#include "regraph/graph6.hpp"

namespace regraph {

namespace {

// Ordered partition of 0..n-1 into contiguous cells. `cstart[i]` gives the
// start position of the cell containing position i; `clen` is valid at start
// positions only.
struct Partition {
    int n = 0;
    int cells = 0;
    std::vector<int> order;   // vertices in partition order
    std::vector<int> pos;     // pos[v]: position of vertex v
    std::vector<int> cstart;  // indexed by position
    std::vector<int> clen;    // indexed by start position

    static Partition unit(int n) {
        Partition p;
        p.n = n;
        p.cells = n > 0 ? 1 : 0;
        p.order.resize(n);
        std::iota(p.order.begin(), p.order.end(), 0);
        p.pos = p.order;
        p.cstart.assign(n, 0);
        p.clen.assign(n, 0);
        if (n > 0) p.clen[0] = n;
        return p;
    }

    bool discrete() const { return cells == n; }

    std::vector<int> starts() const {
        std::vector<int> s;
        s.reserve(cells);
        for (int i = 0; i < n; i += clen[i]) s.push_back(i);
        return s;
    }

    std::uint64_t cell_mask(int s) const {
        std::uint64_t m = 0;
        for (int i = s; i < s + clen[s]; ++i) m |= std::uint64_t{1} << order[i];
        return m;
    }

    // First smallest non-singleton cell, or -1 if discrete.
    int target_cell() const {
        int best = -1;
        for (int i = 0; i < n; i += clen[i])
            if (clen[i] > 1 && (best == -1 || clen[i] < clen[best])) best = i;
        return best;
    }

    // Moves vertex v to the front of its cell and splits it off as a
    // singleton.
    void individualize(int v) {
        int s = cstart[pos[v]];
        std::swap(order[s], order[pos[v]]);
        pos[order[pos[v]]] = pos[v];
        pos[v] = s;
        int len = clen[s];
        clen[s] = 1;
        if (len > 1) {
            clen[s + 1] = len - 1;
            for (int i = s + 1; i < s + len; ++i) cstart[i] = s + 1;
            ++cells;
        }
    }

    // Splits the cell at `s` into groups of equal key, groups ordered by
    // ascending key. Keys are indexed by position within [s, s+len).
    // Returns true if the cell actually split.
    bool split_by_keys(int s, const std::vector<int>& keys) {
        int len = clen[s];
        std::vector<std::pair<int, int>> kv(len);  // (key, vertex)
        for (int i = 0; i < len; ++i) kv[i] = {keys[i], order[s + i]};
        std::stable_sort(kv.begin(), kv.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        if (kv.front().first == kv.back().first) return false;
        for (int i = 0; i < len; ++i) {
            order[s + i] = kv[i].second;
            pos[kv[i].second] = s + i;
        }
        int run = s;
        for (int i = 0; i < len; ++i) {
            if (i > 0 && kv[i].first != kv[i - 1].first) {
                clen[run] = s + i - run;
                run = s + i;
                ++cells;
            }
            cstart[s + i] = run;
        }
        clen[run] = s + len - run;
        return true;
    }
};

int neighbor_count(const Graph& g, int v, std::uint64_t mask) {
    return std::popcount(g.neighbor_mask(v) & mask);
}

// Refines to the coarsest equitable partition: every vertex in a cell has
// the same number of neighbors in every cell. Subcell order depends only on
// counts, so the refinement trace is identical across relabelings.
void refine(const Graph& g, Partition& p) {
    bool changed = true;
    std::vector<int> keys;
    while (changed) {
        changed = false;
        for (int splitter : p.starts()) {
            std::uint64_t mask = p.cell_mask(splitter);
            for (int t = 0; t < p.n; t += p.clen[t]) {
                int len = p.clen[t];
                if (len < 2) continue;
                keys.assign(len, 0);
                bool uniform = true;
                for (int i = 0; i < len; ++i) {
                    keys[i] = neighbor_count(g, p.order[t + i], mask);
                    if (keys[i] != keys[0]) uniform = false;
                }
                if (!uniform) changed |= p.split_by_keys(t, keys);
            }
            if (p.discrete()) return;
        }
    }
}

// Refines two partitions in lockstep; the cell structure of both must evolve
// identically (same splits, same count groups) or the pairing is infeasible.
bool paired_refine(const Graph& g, Partition& a, Partition& b) {
    bool changed = true;
    std::vector<int> ka, kb;
    while (changed) {
        changed = false;
        for (int splitter : a.starts()) {
            std::uint64_t ma = a.cell_mask(splitter);
            std::uint64_t mb = b.cell_mask(splitter);
            for (int t = 0; t < a.n; t += a.clen[t]) {
                int len = a.clen[t];
                if (len < 2) continue;
                ka.assign(len, 0);
                kb.assign(len, 0);
                bool uniform = true;
                for (int i = 0; i < len; ++i) {
                    ka[i] = neighbor_count(g, a.order[t + i], ma);
                    kb[i] = neighbor_count(g, b.order[t + i], mb);
                    if (ka[i] != ka[0] || kb[i] != kb[0]) uniform = false;
                }
                if (uniform) continue;
                auto sa = ka, sb = kb;
                std::sort(sa.begin(), sa.end());
                std::sort(sb.begin(), sb.end());
                if (sa != sb) return false;
                bool split_a = a.split_by_keys(t, ka);
                bool split_b = b.split_by_keys(t, kb);
                if (split_a != split_b) return false;
                changed |= split_a;
            }
            if (a.discrete()) return true;
        }
    }
    return true;
}

// Backtracking search for one automorphism with pinned images. `pins` maps
// domain vertex -> codomain vertex; returns the image array or empty.
class PinnedSearch {
public:
    explicit PinnedSearch(const Graph& g) : g_(g) {}

    std::vector<int> find(const std::vector<std::pair<int, int>>& pins) {
        Partition a = Partition::unit(g_.vertex_count());
        Partition b = a;
        refine(g_, a);
        b = a;
        for (auto [x, y] : pins) {
            if (a.cstart[a.pos[x]] != b.cstart[b.pos[y]]) return {};
            a.individualize(x);
            b.individualize(y);
            if (!paired_refine(g_, a, b)) return {};
        }
        std::vector<int> perm;
        if (recurse(a, b, perm)) return perm;
        return {};
    }

private:
    bool recurse(const Partition& a, const Partition& b, std::vector<int>& out) {
        if (a.discrete()) {
            std::vector<int> perm(a.n);
            for (int i = 0; i < a.n; ++i) perm[a.order[i]] = b.order[i];
            for (auto [u, v] : g_.edges())
                if (!g_.has_edge(perm[u], perm[v])) return false;
            out = std::move(perm);
            return true;
        }
        int s = a.target_cell();
        int u = a.order[s];
        for (int i = 0; i < b.clen[s]; ++i) {
            int w = b.order[s + i];
            Partition na = a;
            Partition nb = b;
            na.individualize(u);
            nb.individualize(w);
            if (!paired_refine(g_, na, nb)) continue;
            if (recurse(na, nb, out)) return true;
        }
        return false;
    }

    const Graph& g_;
};

std::vector<int> orbit_closure(int seed, int n,
                               const std::vector<std::vector<int>>& gens,
                               const std::vector<int>& gen_indices) {
    std::vector<char> in_orbit(n, 0);
    std::vector<int> queue{seed};
    in_orbit[seed] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int gi : gen_indices) {
            int w = gens[gi][v];
            if (!in_orbit[w]) {
                in_orbit[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return queue;
}

bool fixes_all(const std::vector<int>& gen, const std::vector<int>& points) {
    for (int p : points)
        if (gen[p] != p) return false;
    return true;
}

struct ChainResult {
    BigInt order = 1;
    std::vector<std::vector<int>> generators;
};

// Stabilizer chain with explicit point stabilization: at each level the
// orbit of the base point under the pointwise stabilizer of the prefix is
// computed exactly, each candidate image decided by a complete pinned
// search. The collected generators form a strong generating set.
ChainResult stabilizer_chain(const Graph& g, const std::vector<int>& preferred_base) {
    const int n = g.vertex_count();
    ChainResult result;
    if (n <= 1) return result;

    std::vector<int> base_order;
    std::vector<char> seen(n, 0);
    for (int v : preferred_base)
        if (!seen[v]) {
            base_order.push_back(v);
            seen[v] = 1;
        }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) base_order.push_back(v);

    PinnedSearch search(g);
    std::vector<int> prefix;
    std::vector<std::pair<int, int>> pins;

    for (int b : base_order) {
        Partition p = Partition::unit(n);
        for (int q : prefix) p.individualize(q);
        refine(g, p);
        if (p.discrete()) break;  // pointwise stabilizer is trivial

        int s = p.cstart[p.pos[b]];
        if (p.clen[s] > 1) {
            std::vector<int> level_gens;
            for (std::size_t gi = 0; gi < result.generators.size(); ++gi)
                if (fixes_all(result.generators[gi], prefix))
                    level_gens.push_back(static_cast<int>(gi));

            std::vector<char> in_orbit(n, 0);
            for (int v : orbit_closure(b, n, result.generators, level_gens))
                in_orbit[v] = 1;

            std::vector<int> cell(p.order.begin() + s, p.order.begin() + s + p.clen[s]);
            std::sort(cell.begin(), cell.end());
            for (int w : cell) {
                if (in_orbit[w]) continue;
                pins.assign(prefix.size(), {});
                for (std::size_t i = 0; i < prefix.size(); ++i)
                    pins[i] = {prefix[i], prefix[i]};
                pins.emplace_back(b, w);
                auto gen = search.find(pins);
                if (!gen.empty()) {
                    result.generators.push_back(std::move(gen));
                    level_gens.push_back(static_cast<int>(result.generators.size()) - 1);
                    for (int v : orbit_closure(b, n, result.generators, level_gens))
                        in_orbit[v] = 1;
                }
            }
            int orbit_size = static_cast<int>(
                std::count(in_orbit.begin(), in_orbit.end(), 1));
            result.order *= orbit_size;
        }
        prefix.push_back(b);
    }
    return result;
}

struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

void check_size(const Graph& g) {
    if (g.vertex_count() > kMaxSymmetryVertices)
        throw TooLargeError("symmetry computations support at most " +
                            std::to_string(kMaxSymmetryVertices) + " vertices");
}

std::string leaf_certificate(const Graph& g, const Partition& p) {
    std::vector<int> label(p.n);
    for (int i = 0; i < p.n; ++i) label[p.order[i]] = i;
    return graph6_encode(relabel(g, label));
}

// DFS over the individualization-refinement tree keeping the maximal leaf
// certificate. Siblings equivalent under the prefix-fixing subgroup of the
// known automorphism group lead to identical subtree certificates, so one
// representative per orbit suffices.
class CanonicalSearch {
public:
    CanonicalSearch(const Graph& g, const std::vector<std::vector<int>>& gens)
        : g_(g), gens_(gens) {}

    std::string run(Partition root) {
        std::vector<int> prefix;
        dfs(root, prefix);
        return best_;
    }

private:
    void dfs(const Partition& p, std::vector<int>& prefix) {
        if (p.discrete()) {
            std::string cert = leaf_certificate(g_, p);
            if (best_.empty() || cert > best_) best_ = cert;
            return;
        }
        int s = p.target_cell();
        std::vector<int> cell(p.order.begin() + s, p.order.begin() + s + p.clen[s]);
        std::sort(cell.begin(), cell.end());

        DisjointSets sets(p.n);
        for (const auto& gen : gens_)
            if (fixes_all(gen, prefix))
                for (int v = 0; v < p.n; ++v) sets.unite(v, gen[v]);

        std::vector<char> done(p.n, 0);
        for (int c : cell) {
            int root = sets.find(c);
            if (done[root]) continue;
            done[root] = 1;
            Partition child = p;
            child.individualize(c);
            refine(g_, child);
            prefix.push_back(c);
            dfs(child, prefix);
            prefix.pop_back();
        }
    }

    const Graph& g_;
    const std::vector<std::vector<int>>& gens_;
    std::string best_;
};

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
    check_size(g);
    const int n = g.vertex_count();
    if (n <= 1) return {graph6_encode(g)};

    Partition root = Partition::unit(n);
    refine(g, root);

    // First descent fixes the base order so the stabilizer chain's levels
    // line up with the prefixes met along the leftmost path.
    std::vector<int> first_base;
    Partition p = root;
    while (!p.discrete()) {
        int s = p.target_cell();
        int c = *std::min_element(p.order.begin() + s,
                                  p.order.begin() + s + p.clen[s]);
        first_base.push_back(c);
        p.individualize(c);
        refine(g, p);
    }

    ChainResult chain = stabilizer_chain(g, first_base);
    CanonicalSearch search(g, chain.generators);
    return {search.run(std::move(root))};
}

SymmetryResult automorphisms(const Graph& g) {
    check_size(g);
    const int n = g.vertex_count();
    SymmetryResult result;
    ChainResult chain = stabilizer_chain(g, {});
    result.order = chain.order;
    result.generators = std::move(chain.generators);

    DisjointSets vsets(std::max(n, 1));
    for (const auto& gen : result.generators)
        for (int v = 0; v < n; ++v) vsets.unite(v, gen[v]);
    std::vector<std::vector<int>> orbits(std::max(n, 1));
    for (int v = 0; v < n; ++v) orbits[vsets.find(v)].push_back(v);
    for (auto& orbit : orbits)
        if (!orbit.empty()) result.orbits.push_back(std::move(orbit));
    result.orbits.erase(
        std::remove_if(result.orbits.begin(), result.orbits.end(),
                       [](const auto& o) { return o.empty(); }),
        result.orbits.end());
    result.vertex_transitive = n > 0 && result.orbits.size() == 1;

    const auto& edges = g.edges();
    if (!edges.empty()) {
        DisjointSets esets(static_cast<int>(edges.size()));
        auto edge_index = [&](int u, int v) {
            VertexPair e{std::min(u, v), std::max(u, v)};
            return static_cast<int>(
                std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
        };
        for (const auto& gen : result.generators)
            for (std::size_t i = 0; i < edges.size(); ++i)
                esets.unite(static_cast<int>(i),
                            edge_index(gen[edges[i].first], gen[edges[i].second]));
        int eorbits = 0;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (esets.find(static_cast<int>(i)) == static_cast<int>(i)) ++eorbits;
        result.edge_transitive = eorbits == 1;
    }
    return result;
}

bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
        return false;
    auto dg = [&](const Graph& x) {
        std::vector<int> d(x.vertex_count());
        for (int v = 0; v < x.vertex_count(); ++v) d[v] = x.degree(v);
        std::sort(d.begin(), d.end());
        return d;
    };
    if (dg(g) != dg(h)) return false;
    return canonical_form(g) == canonical_form(h);
}

}  // namespace regraph
