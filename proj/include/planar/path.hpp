#pragma once

#include <optional>

#include "planar/derived.hpp"
#include "planar/plane_graph.hpp"

namespace planar {

enum class PathClass { finite, window_crossing };

/// Ordered vertex sequence on some host graph. The host is passed to each
/// operation rather than stored, so the same value can be checked against
/// the base graph, the matching graph or the facial graph.
struct PathSeq {
    std::vector<VertexId> verts;
    PathClass cls = PathClass::finite;

    std::size_t size() const { return verts.size(); }
    bool contains(VertexId v) const;
    PathSeq reversed() const;
};

struct PathError : std::runtime_error {
    explicit PathError(const std::string& what) : std::runtime_error(what) {}
};

/// Hosts are anything with adjacent(u, v): PlaneGraph, MatchingGraph,
/// FacialGraph.
template <class Host>
concept AdjacencyHost = requires(const Host& h, VertexId u, VertexId v) {
    { h.adjacent(u, v) } -> std::convertible_to<bool>;
};

/// Consecutive vertices adjacent, all distinct, window_crossing endpoints on
/// the window boundary with no interior vertex there. Throws PathError.
void validate_path(const PlaneGraph& window, const MatchingGraph* diag_host, const PathSeq& p);

/// Chordless test: vertices adjacent in the host only when consecutive.
template <class Host>
    requires AdjacencyHost<Host>
bool is_induced(const Host& h, const PathSeq& p) {
    const auto& v = p.verts;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!h.adjacent(v[i], v[i + 1])) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 2; j < v.size(); ++j)
            if (h.adjacent(v[i], v[j])) return false;
    return true;
}

/// Deterministic chord shortcutting: repeatedly find the least J admitting a
/// chord (I, J) with I <= J-2, take the least such I, and delete the
/// vertices strictly between them. Endpoints survive; the fixpoint is an
/// induced path.
template <class Host>
    requires AdjacencyHost<Host>
PathSeq remove_oxbows(const Host& h, PathSeq p) {
    auto& v = p.verts;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 2; j < v.size() && !changed; ++j) {
            for (std::size_t i = 0; i + 2 <= j; ++i) {
                if (h.adjacent(v[i], v[j])) {
                    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                            v.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                    break;
                }
            }
        }
    }
    return p;
}

/// Walk cleanup used by splicing: drop consecutive duplicates, then erase
/// loops (keep the first occurrence, cut back to it on a repeat).
PathSeq erase_loops(PathSeq walk);

/// Lift a matching-graph induced path into the facial graph: every diagonal
/// step is replaced by its two spokes through the host face's site.
/// Injective on induced inputs; throws PathError if the input has a chord.
PathSeq lift_to_facial(const FacialGraph& fg, const MatchingGraph& mg, const PathSeq& nu);

/// Inverse direction: remove facial sites and two-touch face detours from a
/// facial-graph induced path, producing a matching-graph induced path with
/// the same endpoints. Faces are fixed in first-offence order along the
/// (directed) path. Throws PathError if an endpoint is a site.
PathSeq project_to_matching(const FacialGraph& fg, const MatchingGraph& mg, PathSeq nu_hat);

/// Face-coclosure relation: true iff some inner face of the base graph has
/// both x and y in its closure (boundary plus site).
bool coface(const FacialGraph& fg, VertexId x, VertexId y);

enum class HatPathClass { lift_image, two_touch };
struct HatClassification {
    HatPathClass kind = HatPathClass::lift_image;
    std::size_t witness_face = kNone;
};

/// Splits induced facial-graph paths into lift images and two-touch paths
/// (some face with the site not on the path and two non-adjacent boundary
/// vertices on it). Precondition: induced in the facial graph.
HatClassification classify_facial_path(const FacialGraph& fg, const MatchingGraph& mg,
                                       const PathSeq& nu_hat);

enum class FaceTouch { none, one_vertex, one_edge, one_diagonal };

/// How an induced matching-graph path meets a face boundary. Any other
/// intersection pattern signals a broken invariant upstream and throws.
FaceTouch face_touch(const MatchingGraph& mg, const PathSeq& nu, std::size_t face_id);

/// Minimum distance of the path's interior vertices from the window
/// boundary (kUnreachable for paths of length <= 2 with no interior).
std::size_t path_margin(const PlaneGraph& window, const PathSeq& p);

struct FlowError : PathError {
    std::size_t found;
    explicit FlowError(std::size_t n)
        : PathError("only " + std::to_string(n) + " disjoint paths to the window boundary"),
          found(n) {}
};

/// Builds a window-crossing induced path through v from the first and third
/// of four vertex-disjoint v->boundary paths in clockwise order, each
/// shortcut to an induced path. Throws FlowError if fewer than four disjoint
/// paths exist, PathError if v sits too close to the boundary.
PathSeq build_crossing_path(const PlaneGraph& g, VertexId v);

/// Max number of vertex-disjoint paths from v to the window boundary,
/// capped at `cap`.
std::size_t disjoint_boundary_paths(const PlaneGraph& g, VertexId v, std::size_t cap,
                                    std::vector<std::vector<VertexId>>* out = nullptr);

/// Exhaustive backtracking search for a window-crossing induced path of the
/// matching graph that traverses at least one diagonal whose host face lies
/// at the given margin from the window boundary. Empty result means no
/// witness at this window size (not a disproof).
std::optional<PathSeq> find_diagonal_crossing(const MatchingGraph& mg, std::size_t margin);

}  // namespace planar
