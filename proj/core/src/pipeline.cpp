#include "regraph/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "regraph/bisection.hpp"
#include "regraph/errors.hpp"
#include "regraph/graph6.hpp"

namespace regraph {

namespace {

using ordered_json = nlohmann::ordered_json;

// Phase-1 survivor retention: minimal (diameter, distance_sum) with ties
// appended; a strict improvement resets the store. Records are graph6
// strings, spilled to disk past the in-memory cap.
class SurvivorStore {
public:
    SurvivorStore(std::size_t memory_cap, std::string spill_dir)
        : cap_(memory_cap) {
        namespace fs = std::filesystem;
        fs::path dir = spill_dir.empty() ? fs::path(".") : fs::path(spill_dir);
        if (!spill_dir.empty()) fs::create_directories(dir);
        spill_path_ = (dir / "survivors.g6").string();
    }

    void reset() {
        records_.clear();
        if (spilled_ > 0) {
            out_.close();
            std::filesystem::remove(spill_path_);
            spilled_ = 0;
        }
    }

    void append(std::string graph6) {
        if (records_.size() < cap_) {
            records_.push_back(std::move(graph6));
            return;
        }
        if (spilled_ == 0) {
            out_.open(spill_path_, std::ios::trunc);
            if (!out_) throw Error("cannot open survivor spill file " + spill_path_);
        }
        out_ << graph6 << "\n";
        ++spilled_;
    }

    std::size_t size() const { return records_.size() + spilled_; }

    std::vector<Graph> collect() {
        std::vector<Graph> graphs;
        graphs.reserve(size());
        for (const auto& rec : records_) graphs.push_back(graph6_decode(rec));
        if (spilled_ > 0) {
            out_.flush();
            for (auto& g : graph6_read_file(spill_path_))
                graphs.push_back(std::move(g));
        }
        return graphs;
    }

private:
    std::size_t cap_;
    std::string spill_path_;
    std::vector<std::string> records_;
    std::ofstream out_;
    std::size_t spilled_ = 0;
};

struct TaskOutcome {
    GenStats stats;
    int best_diameter = -1;
    std::uint64_t best_dsum = 0;
    std::vector<std::string> survivors;
};

void check_cancel(const OptimizeOptions& opts) {
    if (opts.cancel && opts.cancel->load(std::memory_order_relaxed))
        throw InterruptedError("optimize interrupted");
}

TaskOutcome run_phase1_task(const GenTask& task, const OptimizeOptions& opts) {
    TaskOutcome out;
    out.stats = run_task(task, [&](const Graph& g) {
        auto dd = diameter_and_distance_sum(g);
        // enumerate_regular only emits connected graphs
        auto [d, dsum] = *dd;
        if (out.best_diameter < 0 || d < out.best_diameter ||
            (d == out.best_diameter && dsum < out.best_dsum)) {
            out.best_diameter = d;
            out.best_dsum = dsum;
            out.survivors.clear();
        }
        if (d == out.best_diameter && dsum == out.best_dsum)
            out.survivors.push_back(graph6_encode(g));
        if (opts.cancel && opts.cancel->load(std::memory_order_relaxed))
            throw InterruptedError("optimize interrupted");
    });
    return out;
}

// Runs fn(i) for i in [0, count) on `jobs` threads; exceptions propagate.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int threads = std::min<int>(jobs, static_cast<int>(count));
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

void write_checkpoint(int n, int k, const std::vector<GenTask>& pending,
                      int best_d, std::uint64_t best_dsum,
                      const std::vector<std::string>& survivors,
                      const std::string& spill_dir) {
    namespace fs = std::filesystem;
    fs::path dir = spill_dir.empty() ? fs::path(".") : fs::path(spill_dir);
    if (!spill_dir.empty()) fs::create_directories(dir);
    ordered_json doc;
    doc["n"] = n;
    doc["k"] = k;
    doc["best_diameter"] = best_d;
    doc["best_distance_sum"] = best_dsum;
    doc["pending_tasks"] = ordered_json::array();
    for (const auto& t : pending) doc["pending_tasks"].push_back(t.serialize());
    doc["survivors"] = survivors;
    std::ofstream out(dir / "checkpoint.json");
    out << doc.dump(2) << "\n";
}

BoundsRecord bounds_for(int n, int k, const Rational& cycle_mpl) {
    if (k >= 3) return bounds_record(k, n);
    // k = 2: the cycle is the only connected 2-regular graph, so its exact
    // values are the attainable bounds; d_min still follows from inverting
    // the 1 + 2D Moore form (smallest d with 1 + 2d >= n).
    BoundsRecord rec;
    rec.n = n;
    rec.k = k;
    rec.d_min = n / 2;
    rec.moore_at_dmin = moore_bound(2, rec.d_min);
    rec.mpl_min = cycle_mpl;
    return rec;
}

ScoredGraph score_graph(const Graph& g, int bisection_width) {
    ScoredGraph sg;
    sg.graph = g;
    Metrics m = metrics(g);
    sg.score.diameter = *m.diameter;
    sg.score.distance_sum = m.distance_sum;
    sg.score.bisection = bisection_width;
    sg.symmetry = automorphisms(g);
    sg.score.aut_order = sg.symmetry.order;
    sg.mpl = *m.mpl;
    sg.canonical = canonical_form(g);
    return sg;
}

OptimalSet finish_set(int n, int k, std::vector<Graph> survivors,
                      GenStats stats, const OptimizeOptions& opts) {
    OptimalSet set;
    set.n = n;
    set.k = k;
    set.stats = stats;

    // Phase 2a: exact bisection on every survivor, keep the maximum.
    std::vector<int> widths(survivors.size());
    parallel_for(survivors.size(), opts.jobs, [&](std::size_t i) {
        check_cancel(opts);
        widths[i] = min_bisection(survivors[i]).width;
    });
    int best_width = *std::max_element(widths.begin(), widths.end());
    std::vector<Graph> finalists;
    for (std::size_t i = 0; i < survivors.size(); ++i)
        if (widths[i] == best_width) finalists.push_back(std::move(survivors[i]));

    // Phase 2b: automorphism group order on the remaining graphs only.
    std::vector<ScoredGraph> scored(finalists.size());
    parallel_for(finalists.size(), opts.jobs, [&](std::size_t i) {
        check_cancel(opts);
        scored[i] = score_graph(finalists[i], best_width);
    });
    BigInt best_order = 0;
    for (const auto& sg : scored) best_order = std::max(best_order, sg.score.aut_order);

    for (auto& sg : scored)
        if (sg.score.aut_order == best_order) set.graphs.push_back(std::move(sg));

    // Canonical dedup plus a deterministic presentation order.
    std::sort(set.graphs.begin(), set.graphs.end(),
              [](const ScoredGraph& a, const ScoredGraph& b) {
                  return a.canonical.bytes < b.canonical.bytes;
              });
    set.graphs.erase(std::unique(set.graphs.begin(), set.graphs.end(),
                                 [](const ScoredGraph& a, const ScoredGraph& b) {
                                     return a.canonical == b.canonical;
                                 }),
                     set.graphs.end());
    set.tie_count = static_cast<int>(set.graphs.size());

    const ScoredGraph& head = set.graphs.front();
    set.bounds = bounds_for(n, k, head.mpl);
    set.diameter_meets_bound = head.score.diameter == set.bounds.d_min;
    set.mpl_meets_bound = head.mpl == set.bounds.mpl_min;
    return set;
}

}  // namespace

bool score_better(const Score& a, const Score& b) {
    if (a.diameter != b.diameter) return a.diameter < b.diameter;
    if (a.distance_sum != b.distance_sum) return a.distance_sum < b.distance_sum;
    if (a.bisection != b.bisection) return a.bisection > b.bisection;
    return a.aut_order > b.aut_order;
}

bool score_equal(const Score& a, const Score& b) {
    return !score_better(a, b) && !score_better(b, a);
}

OptimalSet optimize(int n, int k, const OptimizeOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    if (n < 3 || k < 2 || k >= n)
        throw InvalidDegreeError("optimize requires 2 <= k < n, n >= 3");
    if ((static_cast<long long>(n) * k) % 2 != 0)
        throw ParityViolationError("no k-regular graph exists: n*k is odd");

    OptimalSet set;
    if (k == 2) {
        // The cycle is the unique connected 2-regular graph on n vertices.
        std::vector<VertexPair> edges;
        for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
        Graph cycle = Graph::from_edges(n, edges);
        GenStats stats;
        stats.generated = 1;
        stats.visited = 1;
        set = finish_set(n, k, {cycle}, stats, opts);
    } else {
        int depth = opts.split_depth;
        if (depth < 0) depth = opts.jobs > 1 ? std::min(n * k / 2, k + 3) : 0;
        SplitResult split = split_tasks(n, k, depth);

        std::vector<TaskOutcome> outcomes(split.tasks.size());
        std::vector<char> done(split.tasks.size(), 0);
        try {
            check_cancel(opts);
            parallel_for(split.tasks.size(), opts.jobs, [&](std::size_t i) {
                outcomes[i] = run_phase1_task(split.tasks[i], opts);
                done[i] = 1;
            });
        } catch (const InterruptedError&) {
            std::vector<GenTask> pending;
            for (std::size_t i = 0; i < split.tasks.size(); ++i)
                if (!done[i]) pending.push_back(split.tasks[i]);
            write_checkpoint(n, k, pending, -1, 0, {}, opts.spill_dir);
            throw;
        }

        GenStats stats = split.prelude;
        SurvivorStore store(opts.memory_cap, opts.spill_dir);
        int best_d = -1;
        std::uint64_t best_dsum = 0;
        for (const auto& out : outcomes) {
            stats += out.stats;
            if (out.best_diameter < 0) continue;
            if (best_d < 0 || out.best_diameter < best_d ||
                (out.best_diameter == best_d && out.best_dsum < best_dsum)) {
                best_d = out.best_diameter;
                best_dsum = out.best_dsum;
                store.reset();
            }
            if (out.best_diameter == best_d && out.best_dsum == best_dsum)
                for (const auto& rec : out.survivors) store.append(rec);
        }
        if (best_d < 0)
            throw Error("no connected (" + std::to_string(n) + "," +
                        std::to_string(k) + ") graph found");
        std::vector<Graph> survivors = store.collect();
        try {
            set = finish_set(n, k, std::move(survivors), stats, opts);
        } catch (const InterruptedError&) {
            std::vector<std::string> recs;
            for (const auto& g : store.collect()) recs.push_back(graph6_encode(g));
            write_checkpoint(n, k, {}, best_d, best_dsum, recs, opts.spill_dir);
            throw;
        }
    }

    if (opts.timing) {
        std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        set.wall_seconds = elapsed.count();
    }
    return set;
}

std::vector<Evaluation> evaluate(const std::vector<Graph>& graphs) {
    std::vector<Evaluation> evals;
    if (graphs.empty()) return evals;

    int n = graphs.front().vertex_count();
    int k = -1;
    for (const auto& g : graphs) {
        auto profile = degree_profile(g);
        if (!profile.is_regular) throw NotRegularError("evaluate requires regular graphs");
        if (k < 0) k = *profile.k;
        if (g.vertex_count() != n || *profile.k != k)
            throw MixedParametersError("evaluate requires one shared (n, k)");
    }
    BoundsRecord bounds;
    bool have_bounds = k >= 3;
    if (have_bounds) bounds = bounds_record(k, n);

    for (const auto& g : graphs) {
        Metrics m = metrics(g);
        if (!m.connected) throw DisconnectedError("evaluate requires connected graphs");
        Evaluation ev;
        ev.score.diameter = *m.diameter;
        ev.score.distance_sum = m.distance_sum;
        ev.mpl = *m.mpl;
        ev.score.bisection = min_bisection(g).width;
        ev.score.aut_order = automorphisms(g).order;
        if (have_bounds) {
            ev.diameter_meets_bound = ev.score.diameter == bounds.d_min;
            ev.mpl_meets_bound = ev.mpl == bounds.mpl_min;
        } else {
            BoundsRecord rec = bounds_for(n, k, ev.mpl);
            ev.diameter_meets_bound = ev.score.diameter == rec.d_min;
            ev.mpl_meets_bound = ev.mpl == rec.mpl_min;
        }
        evals.push_back(std::move(ev));
    }
    return evals;
}

ReportFormat parse_report_format(const std::string& name) {
    if (name == "json") return ReportFormat::kJson;
    if (name == "csv") return ReportFormat::kCsv;
    if (name == "text") return ReportFormat::kText;
    throw Error("unknown report format: " + name);
}

std::string report(const OptimalSet& set, ReportFormat format) {
    if (format == ReportFormat::kJson) {
        ordered_json doc;
        doc["n"] = set.n;
        doc["k"] = set.k;
        doc["bounds"] = {{"moore", set.bounds.moore_at_dmin},
                         {"d_min", set.bounds.d_min},
                         {"mpl_min", set.bounds.mpl_min.to_decimal_string()}};
        doc["optimal"] = ordered_json::array();
        for (const auto& sg : set.graphs) {
            ordered_json item;
            item["graph6"] = sg.canonical.bytes;
            item["diameter"] = sg.score.diameter;
            item["mpl"] = sg.mpl.to_decimal_string();
            item["mpl_exact"] = {sg.mpl.num(), sg.mpl.den()};
            item["bisection"] = sg.score.bisection;
            item["aut_order"] = sg.score.aut_order.str();
            item["orbits"] = sg.symmetry.orbits;
            item["vertex_transitive"] = sg.symmetry.vertex_transitive;
            item["edge_transitive"] = sg.symmetry.edge_transitive;
            doc["optimal"].push_back(std::move(item));
        }
        doc["tie_count"] = set.tie_count;
        doc["flags"] = {{"diameter_meets_bound", set.diameter_meets_bound},
                        {"mpl_meets_bound", set.mpl_meets_bound}};
        doc["stats"] = {{"visited", set.stats.visited},
                        {"generated", set.stats.generated},
                        {"wall_seconds", set.wall_seconds}};
        return doc.dump(2) + "\n";
    }
    if (format == ReportFormat::kCsv) {
        std::ostringstream out;
        out << "n,k,diameter,mpl,bisection,aut_order,tie_count,"
               "diameter_meets_bound,mpl_meets_bound,graph6\n";
        for (const auto& sg : set.graphs) {
            out << set.n << "," << set.k << "," << sg.score.diameter << ","
                << sg.mpl.to_decimal_string() << "," << sg.score.bisection << ","
                << sg.score.aut_order.str() << "," << set.tie_count << ","
                << (set.diameter_meets_bound ? "true" : "false") << ","
                << (set.mpl_meets_bound ? "true" : "false") << ","
                << sg.canonical.bytes << "\n";
        }
        return out.str();
    }
    std::ostringstream out;
    out << "optimal (" << set.n << "," << set.k << ") graphs\n";
    out << "  bounds: d_min=" << set.bounds.d_min
        << " moore=" << set.bounds.moore_at_dmin
        << " mpl_min=" << set.bounds.mpl_min.to_decimal_string() << " ("
        << set.bounds.mpl_min.to_fraction_string() << ")\n";
    out << "  tie_count: " << set.tie_count << "\n";
    out << "  diameter meets bound: " << (set.diameter_meets_bound ? "yes" : "no*")
        << "\n";
    out << "  mpl meets bound: " << (set.mpl_meets_bound ? "yes" : "no*") << "\n";
    for (const auto& sg : set.graphs) {
        out << "  graph " << sg.canonical.bytes << ": diameter=" << sg.score.diameter
            << " mpl=" << sg.mpl.to_decimal_string() << " ("
            << sg.mpl.to_fraction_string() << ")"
            << " bisection=" << sg.score.bisection
            << " aut_order=" << sg.score.aut_order.str()
            << (sg.symmetry.vertex_transitive ? " vertex-transitive" : "")
            << (sg.symmetry.edge_transitive ? " edge-transitive" : "") << "\n";
    }
    out << "  stats: visited=" << set.stats.visited
        << " generated=" << set.stats.generated << "\n";
    return out.str();
}

}  // namespace regraph
