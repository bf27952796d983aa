#include "regraph/bisection.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "regraph/errors.hpp"

namespace regraph {

namespace {

inline std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

// Lower bound on the final cut: the current cut, plus for every unassigned
// vertex the cheaper of its two attachment costs, plus the cheapest forced
// switches once the preferred side lacks seats. Edges between unassigned
// vertices are ignored, so the bound never overshoots.
class BisectionBnb {
public:
    BisectionBnb(const Graph& g, int cap_a, int cap_b)
        : g_(g), n_(g.vertex_count()), cap_a_(cap_a), cap_b_(cap_b) {}

    // Minimizes over all assignments with vertex 0 in part a.
    void solve(int& best_width) {
        best_ = best_width;
        if (n_ == 0) {
            best_ = 0;
            best_width = 0;
            return;
        }
        mask_a_ = bit(0);
        mask_b_ = 0;
        descend(1, 0);
        best_width = best_;
    }

    // True iff the fixed prefix (vertices 0..fixed-1 assigned per `sides`)
    // completes to a bisection of width at most `limit`.
    bool completes(const std::vector<int>& sides, int fixed, int limit) {
        best_ = limit + 1;
        mask_a_ = 0;
        mask_b_ = 0;
        int cut = 0;
        for (int v = 0; v < fixed; ++v) {
            const std::uint64_t m = sides[v] == 0 ? mask_b_ : mask_a_;
            cut += std::popcount(g_.neighbor_mask(v) & m);
            (sides[v] == 0 ? mask_a_ : mask_b_) |= bit(v);
        }
        if (std::popcount(mask_a_) > cap_a_ || std::popcount(mask_b_) > cap_b_)
            return false;
        found_ = false;
        probe(fixed, cut, limit);
        return found_;
    }

private:
    int attach_a(int v) const { return std::popcount(g_.neighbor_mask(v) & mask_a_); }
    int attach_b(int v) const { return std::popcount(g_.neighbor_mask(v) & mask_b_); }

    int lower_bound(std::uint64_t unassigned, int cut) const {
        int seats_a = cap_a_ - std::popcount(mask_a_);
        int seats_b = cap_b_ - std::popcount(mask_b_);
        int pref_a = 0, pref_b = 0;
        switch_a_.clear();
        switch_b_.clear();
        int base = cut;
        for (std::uint64_t m = unassigned; m != 0; m &= m - 1) {
            int v = std::countr_zero(m);
            int ea = attach_a(v);
            int eb = attach_b(v);
            base += std::min(ea, eb);
            if (ea < eb) {
                ++pref_a;
                switch_a_.push_back(eb - ea);
            } else if (eb < ea) {
                ++pref_b;
                switch_b_.push_back(ea - eb);
            }
        }
        if (pref_a > seats_a) {
            std::sort(switch_a_.begin(), switch_a_.end());
            for (int i = 0; i < pref_a - seats_a; ++i) base += switch_a_[i];
        } else if (pref_b > seats_b) {
            std::sort(switch_b_.begin(), switch_b_.end());
            for (int i = 0; i < pref_b - seats_b; ++i) base += switch_b_[i];
        }
        return base;
    }

    void descend(int assigned, int cut) {
        if (cut >= best_) return;
        if (assigned == n_) {
            best_ = cut;
            return;
        }
        std::uint64_t unassigned = ~(mask_a_ | mask_b_) &
                                   ((n_ == 64) ? ~std::uint64_t{0}
                                               : (bit(n_) - 1));
        if (lower_bound(unassigned, cut) >= best_) return;

        // Most attached vertex first; ties go to the smallest id.
        int pick = -1, pick_attach = -1;
        for (std::uint64_t m = unassigned; m != 0; m &= m - 1) {
            int v = std::countr_zero(m);
            int a = attach_a(v) + attach_b(v);
            if (a > pick_attach) {
                pick_attach = a;
                pick = v;
            }
        }
        int ea = attach_a(pick);
        int eb = attach_b(pick);
        bool room_a = std::popcount(mask_a_) < cap_a_;
        bool room_b = std::popcount(mask_b_) < cap_b_;
        // Cheaper side first.
        struct Option {
            bool to_a;
            int cost;
        };
        Option opts[2] = {{true, eb}, {false, ea}};
        if (opts[1].cost < opts[0].cost) std::swap(opts[0], opts[1]);
        for (const auto& opt : opts) {
            if (opt.to_a ? !room_a : !room_b) continue;
            (opt.to_a ? mask_a_ : mask_b_) |= bit(pick);
            descend(assigned + 1, cut + opt.cost);
            (opt.to_a ? mask_a_ : mask_b_) &= ~bit(pick);
        }
    }

    // Index-order DFS preferring part 0; the first completion within the
    // limit is the lexicographically least one.
    void probe(int v, int cut, int limit) {
        if (found_ || cut > limit) return;
        if (v == n_) {
            found_ = true;
            return;
        }
        std::uint64_t unassigned = ~(mask_a_ | mask_b_) &
                                   ((n_ == 64) ? ~std::uint64_t{0}
                                               : (bit(n_) - 1));
        if (lower_bound(unassigned, cut) > limit) return;
        if (std::popcount(mask_a_) < cap_a_) {
            int extra = attach_b(v);
            mask_a_ |= bit(v);
            probe(v + 1, cut + extra, limit);
            if (found_) return;
            mask_a_ &= ~bit(v);
        }
        if (std::popcount(mask_b_) < cap_b_) {
            int extra = attach_a(v);
            mask_b_ |= bit(v);
            probe(v + 1, cut + extra, limit);
            if (found_) return;
            mask_b_ &= ~bit(v);
        }
    }

    const Graph& g_;
    int n_;
    int cap_a_;
    int cap_b_;
    std::uint64_t mask_a_ = 0;
    std::uint64_t mask_b_ = 0;
    int best_ = 0;
    bool found_ = false;
    mutable std::vector<int> switch_a_;
    mutable std::vector<int> switch_b_;
};

}  // namespace

int cut_size(const Graph& g, const std::vector<int>& sides) {
    int cut = 0;
    for (auto [u, v] : g.edges())
        if (sides[u] != sides[v]) ++cut;
    return cut;
}

BisectionResult heuristic_bisection(const Graph& g, int restarts,
                                    std::uint64_t seed) {
    if (restarts < 1) throw Error("heuristic_bisection requires restarts >= 1");
    const int n = g.vertex_count();
    BisectionResult best;
    best.exact = false;
    if (n <= 1) {
        best.witness.assign(n, 0);
        return best;
    }
    const int size_a = (n + 1) / 2;
    std::vector<int> order(n);
    std::vector<int> sides(n);
    std::mt19937_64 rng(seed);
    for (int r = 0; r < restarts; ++r) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 0; i < n; ++i) sides[order[i]] = i < size_a ? 0 : 1;

        // Pairwise-swap hill climbing on the cut size.
        bool improved = true;
        int width = cut_size(g, sides);
        while (improved) {
            improved = false;
            int best_gain = 0, best_u = -1, best_v = -1;
            for (int u = 0; u < n; ++u) {
                if (sides[u] != 0) continue;
                for (int v = 0; v < n; ++v) {
                    if (sides[v] != 1) continue;
                    int du = 0, dv = 0;
                    for (int w : g.neighbors(u)) du += sides[w] == 1 ? 1 : -1;
                    for (int w : g.neighbors(v)) dv += sides[w] == 0 ? 1 : -1;
                    int gain = du + dv - 2 * (g.has_edge(u, v) ? 1 : 0);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best_u = u;
                        best_v = v;
                    }
                }
            }
            if (best_gain > 0) {
                std::swap(sides[best_u], sides[best_v]);
                width -= best_gain;
                improved = true;
            }
        }
        if (sides[0] == 1)
            for (auto& s : sides) s ^= 1;
        if (best.witness.empty() || width < best.width) {
            best.width = width;
            best.witness = sides;
        }
    }
    return best;
}

BisectionResult min_bisection(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 64) throw TooLargeError("min_bisection supports at most 64 vertices");
    BisectionResult result;
    result.exact = true;
    if (n <= 1) {
        result.witness.assign(n, 0);
        return result;
    }

    int incumbent = heuristic_bisection(g, 16, 1).width + 1;
    const int hi = (n + 1) / 2;
    const int lo = n / 2;
    BisectionBnb big_a(g, hi, lo);
    big_a.solve(incumbent);
    if (hi != lo) {
        BisectionBnb small_a(g, lo, hi);
        small_a.solve(incumbent);
    }
    result.width = incumbent;

    // Lexicographically least witness at the optimal width: fix vertices in
    // index order, preferring part 0, keeping only completable prefixes.
    std::vector<int> sides(n, 0);
    for (int v = 1; v < n; ++v) {
        bool ok = false;
        for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
            sides[v] = attempt;
            BisectionBnb probe_big(g, hi, lo);
            ok = probe_big.completes(sides, v + 1, result.width);
            if (!ok && hi != lo) {
                BisectionBnb probe_small(g, lo, hi);
                ok = probe_small.completes(sides, v + 1, result.width);
            }
        }
        if (!ok) throw Error("bisection witness reconstruction failed");
    }
    result.witness = sides;
    return result;
}

}  // namespace regraph
