#pragma once

#include <cstdint>
#include <optional>

#include "planar/derived.hpp"
#include "planar/plane_graph.hpp"

namespace planar {

/// One site configuration: black/white colours drawn per vertex from
/// counter-based streams keyed on (seed, trial, vertex), so results do not
/// depend on evaluation order or worker count.
struct SiteConfig {
    std::vector<char> black;  // indexed by vertex slot
    double p = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
};

struct ClusterStats {
    std::size_t cluster_count = 0;
    std::size_t largest_cluster_size = 0;
    bool crossing = false;
    std::vector<VertexId> crossing_witness;  // black west-east path if crossing
};

struct PcEstimate {
    struct CurvePoint {
        double p;
        double estimate;
        double half_width;
    };
    std::vector<CurvePoint> theta_curve;
    double pc_hat = 0.0;
    double half_width = 0.0;
    std::size_t trials = 0;
    std::size_t window_radius = 0;
};

struct ComparePcReport {
    PcEstimate base;
    PcEstimate matching;
    double gap = 0.0;
    double gap_half_width = 0.0;
    enum class Verdict { strict_gap, inconclusive, equal_by_construction } verdict =
        Verdict::inconclusive;
};

/// Flattened adjacency for the Monte Carlo inner loop; built from either the
/// plane graph or the matching graph (diagonals included).
struct CsrAdjacency {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> nbrs;
    std::vector<VertexId> west, east;
    std::size_t slot_count = 0;

    static CsrAdjacency from(const PlaneGraph& g);
    static CsrAdjacency from(const MatchingGraph& mg);
};

std::uint64_t mix64(std::uint64_t x);
/// Uniform [0,1) from (seed, trial, vertex).
double site_uniform(std::uint64_t seed, std::uint64_t trial, VertexId v);

SiteConfig sample(const PlaneGraph& g, double p, std::uint64_t seed, std::uint64_t trial = 0);

ClusterStats clusters(const PlaneGraph& g, const SiteConfig& cfg);
ClusterStats clusters(const MatchingGraph& mg, const SiteConfig& cfg);
ClusterStats clusters_csr(const CsrAdjacency& adj, const std::vector<char>& black);

struct CrossingEstimate {
    double estimate = 0.0;
    double half_width = 0.0;  // Wilson interval
    std::size_t trials = 0;
};

CrossingEstimate crossing_probability(const CsrAdjacency& adj, double p, std::size_t trials,
                                      std::uint64_t seed, std::size_t workers = 1);

/// Half-crossing-point estimate of the critical probability: coarse curve on
/// `resolution` grid points, then bisection. `trials` samples per
/// evaluation. Throws GraphError if the smoothed curve is non-monotone
/// beyond noise.
PcEstimate estimate_pc(const CsrAdjacency& adj, std::size_t trials, std::size_t resolution,
                       std::uint64_t seed, std::size_t workers = 1,
                       std::size_t window_radius = 0);

/// Shared-methodology comparison of the base and matching critical points.
ComparePcReport compare_pc(const PlaneGraph& g, std::size_t trials, std::uint64_t seed,
                           std::size_t workers = 1, std::size_t window_radius = 0);

std::string compare_report_json(const ComparePcReport& rep);
std::string curve_csv(const PcEstimate& est, const std::string& graph_id);

}  // namespace planar
