#include "regraph/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "regraph/errors.hpp"

namespace regraph {

namespace {

constexpr int kMaxVertices = 64;

inline std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

// Tests whether some relabeling of the partial graph has a strictly larger
// row-major upper-triangle code. Slot j of the backtracking places an old
// vertex at new label j; placing it decides the new code bits (i, j) for all
// i < j, which are compared against the old code row by row. A difference
// decides the overall comparison once every earlier row can no longer
// change, i.e. its old entries are exhausted and all neighbors of its image
// are already placed.
class MaxCodeRefuter {
public:
    MaxCodeRefuter(const std::vector<std::uint64_t>& adj, int n)
        : adj_(adj), n_(n) {
        old_remaining_.resize(n);
        edges_before_row_.resize(n + 1, 0);
        for (int i = 0; i < n; ++i) {
            std::uint64_t upper = (i == 63) ? 0 : (adj_[i] >> (i + 1)) << (i + 1);
            old_remaining_[i] = std::popcount(upper);
            edges_before_row_[i + 1] = edges_before_row_[i] + old_remaining_[i];
        }
        total_edges_ = edges_before_row_[n];
        slot_.assign(n, -1);
        state_.assign(n, kOpen);
        unplaced_nbrs_.resize(n);
    }

    bool refutes() {
        used_ = 0;
        return place(0);
    }

private:
    enum RowState : char { kOpen, kClosed, kPlus, kMinus };

    bool place(int j) {
        if (j == n_) {
            for (int i = 0; i < n_; ++i) {
                if (state_[i] == kPlus) return true;
                if (state_[i] == kMinus) return false;
            }
            return false;  // full tie: an automorphism, not a refutation
        }
        if (j > 0) {
            // Every compared row settled as equal and every edge accounted:
            // the remaining slots permute isolated tails, a guaranteed tie.
            bool all_closed = true;
            for (int i = 0; i < j && all_closed; ++i)
                all_closed = state_[i] == kClosed;
            if (all_closed && edges_before_row_[j] == total_edges_) return false;
        }
        auto saved_state = state_;
        auto saved_old = old_remaining_;
        auto saved_unplaced = unplaced_nbrs_;
        for (int v = 0; v < n_; ++v) {
            if (used_ & bit(v)) continue;
            slot_[j] = v;
            used_ |= bit(v);
            unplaced_nbrs_[j] = std::popcount(adj_[v] & ~used_);

            bool dead = false;
            bool won = false;
            for (int i = 0; i < j; ++i) {
                if (state_[i] != kOpen) continue;
                int newbit = static_cast<int>((adj_[slot_[i]] >> v) & 1);
                int oldbit = static_cast<int>((adj_[i] >> j) & 1);
                if (newbit != oldbit) {
                    state_[i] = newbit > oldbit ? kPlus : kMinus;
                } else {
                    if (oldbit) --old_remaining_[i];
                    if (newbit) --unplaced_nbrs_[i];
                    if (old_remaining_[i] == 0 && unplaced_nbrs_[i] == 0)
                        state_[i] = kClosed;
                }
            }
            // The first differing row decides the comparison once every row
            // above it can no longer change.
            int open_rows = 0;
            for (int i = 0; i < j; ++i) {
                if (state_[i] == kOpen) {
                    ++open_rows;
                } else if (state_[i] == kPlus) {
                    if (open_rows == 0) won = true;
                    break;
                } else if (state_[i] == kMinus) {
                    if (open_rows == 0) dead = true;
                    break;
                }
            }
            if (won) return true;
            if (!dead && place(j + 1)) return true;
            used_ &= ~bit(v);
            std::copy(saved_state.begin(), saved_state.begin() + j, state_.begin());
            std::copy(saved_old.begin(), saved_old.begin() + j, old_remaining_.begin());
            std::copy(saved_unplaced.begin(), saved_unplaced.begin() + j,
                      unplaced_nbrs_.begin());
        }
        slot_[j] = -1;
        return false;
    }

    const std::vector<std::uint64_t>& adj_;
    int n_;
    int total_edges_ = 0;
    std::uint64_t used_ = 0;
    std::vector<int> slot_;
    std::vector<int> old_remaining_;  // old 1s not yet compared, per row
    std::vector<int> unplaced_nbrs_;  // unplaced neighbors of the row image
    std::vector<int> edges_before_row_;
    std::vector<char> state_;
};

class Generator {
public:
    Generator(int n, int k, const GraphConsumer& consumer, int stop_depth,
              std::vector<GenTask>* task_sink)
        : n_(n), k_(k), consumer_(consumer), stop_depth_(stop_depth),
          task_sink_(task_sink) {
        adj_.assign(n, 0);
        deg_.assign(n, 0);
    }

    GenStats run(const std::vector<VertexPair>& prefix) {
        stats_ = {};
        for (auto [u, v] : prefix) {
            adj_[u] |= bit(v);
            adj_[v] |= bit(u);
            ++deg_[u];
            ++deg_[v];
            edges_.push_back({u, v});
        }
        int frontier = 0;
        while (frontier < n_ && deg_[frontier] == k_) ++frontier;
        int lastcol = frontier;
        if (!edges_.empty() && edges_.back().first == frontier)
            lastcol = edges_.back().second;
        dfs(frontier, lastcol);
        return stats_;
    }

private:
    void emit_leaf() {
        if (task_sink_ && static_cast<int>(edges_.size()) <= stop_depth_) {
            // A graph completed at or above the cut becomes its own task.
            task_sink_->push_back({n_, k_, edges_});
            return;
        }
        Graph g = Graph::from_edges(n_, edges_);
        if (is_connected(g)) {
            ++stats_.generated;
            consumer_(g);
        }
    }

    // Candidate w survives only if no smaller unchosen candidate is
    // interchangeable with it: swapping two vertices whose adjacencies agree
    // outside the pair relabels the graph to a strictly larger code.
    bool dominated(const std::vector<int>& prior, int w) const {
        for (int p : prior) {
            std::uint64_t diff = adj_[p] ^ adj_[w];
            if ((diff & ~(bit(p) | bit(w))) == 0) return true;
        }
        return false;
    }

    bool feasible(int frontier, int lastcol) const {
        // Residual degrees must be coverable by future edge slots.
        for (int w = frontier; w < n_; ++w) {
            int resid = k_ - deg_[w];
            if (resid == 0) continue;
            int partners = 0;
            for (int x = frontier; x < n_; ++x) {
                if (x == w || deg_[x] == k_) continue;
                if ((adj_[w] >> x) & 1) continue;
                if (x == frontier && w <= lastcol) continue;  // frozen column
                if (w == frontier && x <= lastcol) continue;
                ++partners;
            }
            if (partners < resid) return false;
        }
        return true;
    }

    void dfs(int frontier, int lastcol) {
        if (frontier == n_) {
            emit_leaf();
            return;
        }
        if (task_sink_ && static_cast<int>(edges_.size()) == stop_depth_) {
            task_sink_->push_back({n_, k_, edges_});
            return;
        }
        std::vector<int> prior;
        for (int w = lastcol + 1; w < n_; ++w) {
            if (deg_[w] == k_ || ((adj_[frontier] >> w) & 1)) continue;
            if (dominated(prior, w)) {
                prior.push_back(w);
                continue;
            }
            prior.push_back(w);

            adj_[frontier] |= bit(w);
            adj_[w] |= bit(frontier);
            ++deg_[frontier];
            ++deg_[w];
            edges_.push_back({frontier, w});
            ++stats_.visited;

            int nf = frontier;
            while (nf < n_ && deg_[nf] == k_) ++nf;
            bool advanced = nf != frontier;
            if (feasible(nf, advanced ? nf : w)) {
                if (advanced) {
                    MaxCodeRefuter refuter(adj_, n_);
                    if (refuter.refutes())
                        ++stats_.rejected_iso;
                    else
                        dfs(nf, nf);
                } else {
                    dfs(frontier, w);
                }
            }

            edges_.pop_back();
            adj_[frontier] &= ~bit(w);
            adj_[w] &= ~bit(frontier);
            --deg_[frontier];
            --deg_[w];
        }
    }

    int n_;
    int k_;
    const GraphConsumer& consumer_;
    int stop_depth_;
    std::vector<GenTask>* task_sink_;
    std::vector<std::uint64_t> adj_;
    std::vector<int> deg_;
    std::vector<VertexPair> edges_;
    GenStats stats_;
};

void validate(int n, int k) {
    if (n < 2 || n > kMaxVertices)
        throw InvalidDegreeError("vertex count must be in 2.." +
                                 std::to_string(kMaxVertices));
    if (k < 1 || k >= n)
        throw InvalidDegreeError("degree must satisfy 1 <= k < n");
}

}  // namespace

std::string GenTask::serialize() const {
    std::ostringstream out;
    out << n << " " << k << " " << prefix.size();
    for (auto [u, v] : prefix) out << " " << u << " " << v;
    return out.str();
}

GenTask GenTask::deserialize(const std::string& line) {
    std::istringstream in(line);
    GenTask task;
    std::size_t m = 0;
    if (!(in >> task.n >> task.k >> m))
        throw ParseError("malformed generation task: " + line);
    task.prefix.resize(m);
    for (auto& [u, v] : task.prefix)
        if (!(in >> u >> v)) throw ParseError("malformed generation task: " + line);
    return task;
}

GenStats enumerate_regular(int n, int k, const GraphConsumer& consumer) {
    validate(n, k);
    if ((static_cast<long long>(n) * k) % 2 != 0) {
        GenStats stats;
        stats.parity_violation = true;
        return stats;
    }
    Generator gen(n, k, consumer, -1, nullptr);
    return gen.run({});
}

SplitResult split_tasks(int n, int k, int split_depth) {
    validate(n, k);
    if (split_depth < 0) throw Error("split depth must be non-negative");
    SplitResult result;
    if ((static_cast<long long>(n) * k) % 2 != 0) {
        result.prelude.parity_violation = true;
        return result;
    }
    GraphConsumer noop = [](const Graph&) {};
    Generator gen(n, k, noop, split_depth, &result.tasks);
    result.prelude = gen.run({});
    return result;
}

GenStats run_task(const GenTask& task, const GraphConsumer& consumer) {
    validate(task.n, task.k);
    Generator gen(task.n, task.k, consumer, -1, nullptr);
    return gen.run(task.prefix);
}

}  // namespace regraph
