#include "planar/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace planar {

std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double site_uniform(std::uint64_t seed, std::uint64_t trial, VertexId v) {
    const std::uint64_t h = mix64(mix64(seed ^ 0x6a09e667f3bcc909ull) ^
                                  mix64(trial * 0x9e3779b97f4a7c15ull + 1) ^
                                  mix64(static_cast<std::uint64_t>(v) + 0x3c6ef372fe94f82bull));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

namespace {

std::vector<VertexId> derive_ports(const PlaneGraph& g, bool west) {
    // Fallback for custom graphs: boundary vertices near the x extreme.
    double xmin = 1e18, xmax = -1e18;
    for (VertexId v : g.vertices()) {
        xmin = std::min(xmin, g.position(v).x);
        xmax = std::max(xmax, g.position(v).x);
    }
    const double tol = 0.45 + 1e-9;
    std::vector<VertexId> out;
    for (VertexId v : g.boundary_vertices()) {
        if (west && g.position(v).x <= xmin + tol) out.push_back(v);
        if (!west && g.position(v).x >= xmax - tol) out.push_back(v);
    }
    return out;
}

}  // namespace

CsrAdjacency CsrAdjacency::from(const PlaneGraph& g) {
    CsrAdjacency a;
    a.slot_count = g.slot_count();
    a.offsets.assign(a.slot_count + 1, 0);
    for (VertexId v = 0; v < a.slot_count; ++v)
        a.offsets[v + 1] = a.offsets[v] + (g.alive(v) ? g.degree(v) : 0);
    a.nbrs.resize(a.offsets.back());
    for (VertexId v = 0; v < a.slot_count; ++v) {
        if (!g.alive(v)) continue;
        std::size_t k = a.offsets[v];
        for (VertexId w : g.rotation(v)) a.nbrs[k++] = static_cast<std::uint32_t>(w);
    }
    a.west = g.west_ports.empty() ? derive_ports(g, true) : g.west_ports;
    a.east = g.east_ports.empty() ? derive_ports(g, false) : g.east_ports;
    return a;
}

CsrAdjacency CsrAdjacency::from(const MatchingGraph& mg) {
    const PlaneGraph& g = mg.base();
    CsrAdjacency a;
    a.slot_count = g.slot_count();
    std::vector<std::vector<std::uint32_t>> adj(a.slot_count);
    for (VertexId v = 0; v < a.slot_count; ++v) {
        if (!g.alive(v)) continue;
        for (VertexId w : mg.neighbors(v)) adj[v].push_back(static_cast<std::uint32_t>(w));
    }
    a.offsets.assign(a.slot_count + 1, 0);
    for (VertexId v = 0; v < a.slot_count; ++v) a.offsets[v + 1] = a.offsets[v] + adj[v].size();
    a.nbrs.resize(a.offsets.back());
    for (VertexId v = 0; v < a.slot_count; ++v)
        std::copy(adj[v].begin(), adj[v].end(), a.nbrs.begin() + a.offsets[v]);
    a.west = g.west_ports.empty() ? derive_ports(g, true) : g.west_ports;
    a.east = g.east_ports.empty() ? derive_ports(g, false) : g.east_ports;
    return a;
}

SiteConfig sample(const PlaneGraph& g, double p, std::uint64_t seed, std::uint64_t trial) {
    if (p < 0.0 || p > 1.0) throw GraphError("sample: p outside [0,1]");
    SiteConfig cfg;
    cfg.p = p;
    cfg.seed = seed;
    cfg.trial = trial;
    cfg.black.assign(g.slot_count(), 0);
    for (VertexId v : g.vertices()) cfg.black[v] = site_uniform(seed, trial, v) < p ? 1 : 0;
    return cfg;
}

ClusterStats clusters_csr(const CsrAdjacency& adj, const std::vector<char>& black) {
    ClusterStats st;
    std::vector<std::uint32_t> comp(adj.slot_count, 0xffffffffu);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> stack;
    std::vector<std::size_t> sizes;
    for (std::size_t v = 0; v < adj.slot_count; ++v) {
        if (!black[v] || comp[v] != 0xffffffffu) continue;
        const std::uint32_t c = next++;
        std::size_t size = 0;
        stack.push_back(static_cast<std::uint32_t>(v));
        comp[v] = c;
        while (!stack.empty()) {
            const std::uint32_t x = stack.back();
            stack.pop_back();
            ++size;
            for (std::uint32_t k = adj.offsets[x]; k < adj.offsets[x + 1]; ++k) {
                const std::uint32_t w = adj.nbrs[k];
                if (black[w] && comp[w] == 0xffffffffu) {
                    comp[w] = c;
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(size);
    }
    st.cluster_count = sizes.size();
    st.largest_cluster_size = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());

    // crossing: some west port shares a component with some east port
    std::vector<char> west_comp(next, 0);
    for (VertexId v : adj.west)
        if (black[v]) west_comp[comp[v]] = 1;
    std::uint32_t hit = 0xffffffffu;
    for (VertexId v : adj.east)
        if (black[v] && west_comp[comp[v]]) {
            hit = comp[v];
            break;
        }
    st.crossing = hit != 0xffffffffu;
    if (st.crossing) {
        // witness path by BFS inside the crossing component
        std::vector<std::uint32_t> prev(adj.slot_count, 0xffffffffu);
        std::queue<std::uint32_t> q;
        for (VertexId v : adj.west)
            if (black[v] && comp[v] == hit) {
                prev[v] = static_cast<std::uint32_t>(v);
                q.push(static_cast<std::uint32_t>(v));
            }
        VertexId goal = kNone;
        while (!q.empty() && goal == kNone) {
            const std::uint32_t x = q.front();
            q.pop();
            for (std::uint32_t k = adj.offsets[x]; k < adj.offsets[x + 1]; ++k) {
                const std::uint32_t w = adj.nbrs[k];
                if (!black[w] || prev[w] != 0xffffffffu) continue;
                prev[w] = x;
                q.push(w);
                if (std::find(adj.east.begin(), adj.east.end(), w) != adj.east.end()) {
                    goal = w;
                    break;
                }
            }
        }
        for (VertexId v : adj.east)
            if (goal == kNone && black[v] && comp[v] == hit && prev[v] != 0xffffffffu) goal = v;
        if (goal != kNone) {
            VertexId cur = goal;
            while (true) {
                st.crossing_witness.push_back(cur);
                if (prev[cur] == static_cast<std::uint32_t>(cur)) break;
                cur = prev[cur];
            }
            std::reverse(st.crossing_witness.begin(), st.crossing_witness.end());
        }
    }
    return st;
}

ClusterStats clusters(const PlaneGraph& g, const SiteConfig& cfg) {
    return clusters_csr(CsrAdjacency::from(g), cfg.black);
}

ClusterStats clusters(const MatchingGraph& mg, const SiteConfig& cfg) {
    return clusters_csr(CsrAdjacency::from(mg), cfg.black);
}

namespace {

bool crossing_trial(const CsrAdjacency& adj, double p, std::uint64_t seed, std::uint64_t trial,
                    std::vector<char>& black, std::vector<char>& seen,
                    std::vector<std::uint32_t>& stack) {
    // colours drawn lazily would change the RNG contract; draw all sites
    black.assign(adj.slot_count, 0);
    for (std::size_t v = 0; v < adj.slot_count; ++v)
        black[v] = site_uniform(seed, trial, v) < p ? 1 : 0;
    seen.assign(adj.slot_count, 0);
    stack.clear();
    for (VertexId v : adj.west)
        if (black[v]) {
            seen[v] = 1;
            stack.push_back(static_cast<std::uint32_t>(v));
        }
    std::vector<char> east_mark(adj.slot_count, 0);
    for (VertexId v : adj.east) east_mark[v] = 1;
    while (!stack.empty()) {
        const std::uint32_t x = stack.back();
        stack.pop_back();
        if (east_mark[x]) return true;
        for (std::uint32_t k = adj.offsets[x]; k < adj.offsets[x + 1]; ++k) {
            const std::uint32_t w = adj.nbrs[k];
            if (black[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

CrossingEstimate wilson(std::size_t hits, std::size_t n) {
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double nh = static_cast<double>(n);
    const double ph = static_cast<double>(hits) / nh;
    const double centre = (ph + z2 / (2 * nh)) / (1 + z2 / nh);
    const double hw =
        z * std::sqrt(ph * (1 - ph) / nh + z2 / (4 * nh * nh)) / (1 + z2 / nh);
    return {centre, hw, n};
}

}  // namespace

CrossingEstimate crossing_probability(const CsrAdjacency& adj, double p, std::size_t trials,
                                      std::uint64_t seed, std::size_t workers) {
    if (trials == 0) throw GraphError("crossing_probability: trials must be >= 1");
    workers = std::max<std::size_t>(1, workers);
    std::vector<std::size_t> counts(workers, 0);
    auto run = [&](std::size_t w) {
        std::vector<char> black, seen;
        std::vector<std::uint32_t> stack;
        std::size_t local = 0;
        for (std::uint64_t t = w; t < trials; t += workers)
            if (crossing_trial(adj, p, seed, t, black, seen, stack)) ++local;
        counts[w] = local;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& th : threads) th.join();
    }
    std::size_t hits = 0;
    for (std::size_t c : counts) hits += c;
    return wilson(hits, trials);
}

PcEstimate estimate_pc(const CsrAdjacency& adj, std::size_t trials, std::size_t resolution,
                       std::uint64_t seed, std::size_t workers, std::size_t window_radius) {
    if (resolution < 10) throw GraphError("estimate_pc: resolution must be >= 10");
    if (trials < 10) throw GraphError("estimate_pc: too few trials");
    PcEstimate est;
    est.trials = trials;
    est.window_radius = window_radius;

    const std::size_t grid_trials = std::max<std::size_t>(trials / 4, 100);
    std::vector<double> ps(resolution), vals(resolution), hws(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        ps[i] = static_cast<double>(i) / static_cast<double>(resolution - 1);
        const auto ce =
            crossing_probability(adj, ps[i], grid_trials, mix64(seed ^ (0x100 + i)), workers);
        vals[i] = ce.estimate;
        hws[i] = ce.half_width;
        est.theta_curve.push_back({ps[i], ce.estimate, ce.half_width});
    }

    // monotonicity diagnostic: a drop beyond combined noise is a failure
    for (std::size_t i = 0; i + 1 < resolution; ++i) {
        if (vals[i + 1] < vals[i] - 3.0 * (hws[i] + hws[i + 1]) - 0.02)
            throw GraphError("estimate_pc: crossing curve decreases beyond noise");
    }

    // bracket the half-crossing point
    std::size_t lo = 0, hi = resolution - 1;
    for (std::size_t i = 0; i + 1 < resolution; ++i) {
        if (vals[i] < 0.5 && vals[i + 1] >= 0.5) {
            lo = i;
            hi = i + 1;
            break;
        }
    }
    double plo = ps[lo], phi = ps[hi];
    double flo = vals[lo], fhi = vals[hi];
    for (std::size_t round = 0; round < 9; ++round) {
        const double mid = 0.5 * (plo + phi);
        const auto ce =
            crossing_probability(adj, mid, trials, mix64(seed ^ (0x9000 + round)), workers);
        if (ce.estimate < 0.5) {
            plo = mid;
            flo = ce.estimate;
        } else {
            phi = mid;
            fhi = ce.estimate;
        }
    }
    double pc = 0.5 * (plo + phi);
    if (fhi > flo) {
        // linear interpolation to the 0.5 level inside the final bracket
        pc = plo + (0.5 - flo) * (phi - plo) / (fhi - flo);
        pc = std::clamp(pc, plo, phi);
    }
    est.pc_hat = pc;
    // Noise converted through the curve steepness. The slope comes from the
    // coarse grid (the final bracket can be arbitrarily steep by chance and
    // would understate the uncertainty).
    double grid_slope = 0.0;
    for (std::size_t i = 0; i + 1 < resolution; ++i) {
        if (ps[i] <= pc && pc <= ps[i + 1] + 1e-12) {
            const std::size_t a = i > 0 ? i - 1 : i;
            const std::size_t b = std::min(i + 2, resolution - 1);
            grid_slope = (vals[b] - vals[a]) / std::max(ps[b] - ps[a], 1e-9);
        }
    }
    grid_slope = std::max(grid_slope, 1e-3);
    const auto noise = crossing_probability(adj, pc, trials, mix64(seed ^ 0xabcd), workers);
    est.half_width = 0.5 * (phi - plo) + noise.half_width / grid_slope;
    return est;
}

ComparePcReport compare_pc(const PlaneGraph& g, std::size_t trials, std::uint64_t seed,
                           std::size_t workers, std::size_t window_radius) {
    ComparePcReport rep;
    const MatchingGraph mg = matching_graph(g);
    const CsrAdjacency base_adj = CsrAdjacency::from(g);
    const CsrAdjacency match_adj = CsrAdjacency::from(mg);
    rep.base = estimate_pc(base_adj, trials, 13, mix64(seed ^ 0x11), workers, window_radius);
    if (mg.diagonals().empty()) {
        rep.matching = rep.base;
        rep.gap = 0.0;
        rep.gap_half_width = 0.0;
        rep.verdict = ComparePcReport::Verdict::equal_by_construction;
        return rep;
    }
    rep.matching = estimate_pc(match_adj, trials, 13, mix64(seed ^ 0x22), workers, window_radius);
    rep.gap = rep.base.pc_hat - rep.matching.pc_hat;
    rep.gap_half_width = rep.base.half_width + rep.matching.half_width;
    const bool disjoint = rep.base.pc_hat - rep.base.half_width >
                          rep.matching.pc_hat + rep.matching.half_width;
    rep.verdict = disjoint ? ComparePcReport::Verdict::strict_gap
                           : ComparePcReport::Verdict::inconclusive;
    return rep;
}

std::string compare_report_json(const ComparePcReport& rep) {
    nlohmann::json j;
    auto dump = [](const PcEstimate& e) {
        nlohmann::json c = nlohmann::json::array();
        for (const auto& pt : e.theta_curve)
            c.push_back({{"p", pt.p}, {"estimate", pt.estimate}, {"half_width", pt.half_width}});
        return nlohmann::json{{"pc_hat", e.pc_hat},
                              {"half_width", e.half_width},
                              {"trials", e.trials},
                              {"radius", e.window_radius},
                              {"curve", c}};
    };
    j["base"] = dump(rep.base);
    j["matching"] = dump(rep.matching);
    j["gap"] = rep.gap;
    j["gap_half_width"] = rep.gap_half_width;
    switch (rep.verdict) {
        case ComparePcReport::Verdict::strict_gap: j["verdict"] = "strict_gap"; break;
        case ComparePcReport::Verdict::inconclusive: j["verdict"] = "inconclusive"; break;
        case ComparePcReport::Verdict::equal_by_construction:
            j["verdict"] = "equal_by_construction";
            break;
    }
    return j.dump(2);
}

std::string curve_csv(const PcEstimate& est, const std::string& graph_id) {
    std::ostringstream o;
    o << "p,estimate,half_width,radius,trials,graph_id\n";
    for (const auto& pt : est.theta_curve)
        o << pt.p << ',' << pt.estimate << ',' << pt.half_width << ',' << est.window_radius
          << ',' << est.trials << ',' << graph_id << '\n';
    return o.str();
}

}  // namespace planar
