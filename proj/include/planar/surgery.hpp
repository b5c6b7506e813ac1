#pragma once

#include <optional>
#include <string>

#include "planar/cycles.hpp"
#include "planar/derived.hpp"
#include "planar/path.hpp"

namespace planar {

/// Thrown when a rerouting guard fails; `tag` is machine-readable and names
/// the violated invariant (e.g. "margin", "frame-adjacency", "winding").
struct SurgeryError : std::runtime_error {
    std::string tag;
    SurgeryError(std::string tag_, const std::string& what)
        : std::runtime_error(what + " [" + tag_ + "]"), tag(std::move(tag_)) {}
};

/// Immutable bundle the rerouting operates on: a triangle-empty window, its
/// matching graph, and its facial graph with separating triangles emptied.
struct SurgeryHost {
    PlaneGraph g;
    MatchingGraph mg;
    FacialGraph fg;
};

/// Builds the bundle; throws if the input still has separating triangles
/// (callers empty first so path vertex ids stay meaningful).
SurgeryHost make_surgery_host(const PlaneGraph& window);

enum class RerouteMode { diagonal_traversed, reached_target_vertex, reached_cycle };

struct TraceEvent {
    std::string branch;   // A, B, C, D.1, D.2.i, D.2.ii, E, F, 8.1-1 ... 8.3-3
    std::string detail;
};
using Trace = std::vector<TraceEvent>;

struct SurgeryOutcome {
    PathSeq result;  // induced path of the matching graph
    RerouteMode mode = RerouteMode::diagonal_traversed;
    std::size_t edit_count = 0;      // symmetric difference of edge sets
    std::size_t edit_radius = 0;     // max distance of an edited edge from the pivot
    std::vector<std::string> branches;
};

enum class FrameCase { vertex_only, boundary_edge };

/// Local frame around a path vertex v on the rim of a target face (or of the
/// two-triangle quadrilateral in the quad variant). Mirrors the fan / second
/// layer / labelling data the rerouting cases dispatch on.
struct SurgeryContext {
    // frame
    VertexId u = kNone, v = kNone, w = kNone;
    FrameCase frame_case = FrameCase::vertex_only;
    PathSeq nu_hat;          // directed so that u = predecessor of v
    std::size_t u_index = 0; // index of u in nu_hat

    // target
    VertexId hub = kNone;            // facial site of the rim (kNone in quad mode)
    VertexId quad_target = kNone;    // z in quad mode
    Cycle rim;                       // boundary cycle of the target face
    std::vector<VertexId> fan;       // y_1..y_r swept from u to w across the rim gap
    std::size_t fan_rim_low = 0;     // N: fan[N-1], fan[N] are the rim neighbours of v

    // second layer, one label per (sector, slot)
    std::vector<VertexId> z_vertex;          // label index -> vertex
    std::vector<std::size_t> z_sector;       // label index -> fan sector (1-based)
    std::size_t p_low = kNone;               // P
    std::size_t p_high = kNone;              // P+1 (== P in effect for quads)

    // labels
    enum class Mark : char { U, W, Q };
    std::vector<Mark> mark;                  // per label index
    std::size_t rho = 0;                     // rightmost U label (0 = sentinel u)
    std::size_t lambda = kNone;              // leftmost W label (s+1 = sentinel w)
    std::size_t label_count = 0;             // s

    bool quad_mode() const { return hub == kNone; }
    std::size_t label_count_of(Mark m) const {
        std::size_t n = 0;
        for (Mark x : mark)
            if (x == m) ++n;
        return n;
    }
};

/// Assembles and eagerly verifies the frame (fan adjacency structure, rim
/// membership, second-layer chaining, tail disjointness).
SurgeryContext build_context(const SurgeryHost& host, const PathSeq& nu_hat, VertexId v,
                             std::size_t face_id);

/// Labels the second layer from the path tails and verifies the label
/// invariants (rim labels, rho < lambda, winding of the upstream loop).
void label_vertices(const SurgeryHost& host, SurgeryContext& ctx);

/// Case dispatch when the path meets the rim in v only.
SurgeryOutcome reroute_case_vertex(const SurgeryHost& host, const SurgeryContext& ctx,
                                   Trace* trace);
/// Case dispatch when the path meets the rim in the edge (v, w).
SurgeryOutcome reroute_case_edge(const SurgeryHost& host, const SurgeryContext& ctx,
                                 Trace* trace);

/// Reroute an induced matching-graph path that touches the boundary of a
/// non-triangular face so that it traverses a diagonal of that face.
SurgeryOutcome route_through_face(const SurgeryHost& host, std::size_t face_id,
                                  const PathSeq& nu, Trace* trace = nullptr);

/// Quad variant: given a 4-cycle of the emptied facial graph made of two
/// triangles sharing the edge (v, z), move a site-free lifted path that
/// includes v so that it either picks up a facial site (a diagonal after
/// projection) or picks up z.
SurgeryOutcome route_through_quad(const SurgeryHost& host, const Cycle& quad,
                                  const PathSeq& nu_hat, Trace* trace = nullptr);

/// One inward step: a diagonal-free path meeting the neighbour layer of
/// cycle `a` (but not `a`) is advanced onto `a`, or a diagonal is found.
SurgeryOutcome advance_to_cycle(const SurgeryHost& host, const Cycle& a, const PathSeq& nu,
                                Trace* trace = nullptr);

/// Iterates advance_to_cycle down a nested cycle sequence until the
/// innermost cycle (or a diagonal) is reached.
SurgeryOutcome walk_inward(const SurgeryHost& host, const NestedSequence& seq,
                           const PathSeq& nu, Trace* trace = nullptr);

/// End-to-end driver: from any crossing induced path of the matching graph
/// and any face of size >= 4, produce a crossing induced path traversing a
/// diagonal. Throws SurgeryError("margin", ...) when the window is too
/// small for the face/path pair.
SurgeryOutcome force_diagonal_witness(const SurgeryHost& host, const PathSeq& nu,
                                      std::size_t face_id, Trace* trace = nullptr);

std::string trace_json(const Trace& trace);

}  // namespace planar
