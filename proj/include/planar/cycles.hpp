#pragma once

#include "planar/derived.hpp"
#include "planar/plane_graph.hpp"

namespace planar {

/// Exterior cycle: the outer cycle of the subgraph on a's vertices using the
/// edges that neither lie in nor are drawn inside a's interior. Shortcuts a
/// around outside chords; |result| <= |a|, and a 3-cycle is its own exterior
/// cycle.
Cycle exterior_cycle(const PlaneGraph& g, const Cycle& a);
Cycle exterior_cycle(const PlaneGraph& g, const FaceSet& fs, const Cycle& a);

/// Neighbours of a's vertices on the unbounded side of the complement.
/// Throws if a touches the window boundary.
std::vector<VertexId> neighbor_layer(const PlaneGraph& g, const Cycle& a);

/// For a triangle-empty triangulation host: the cycle contained in the
/// neighbour layer that surrounds a (a inside it, layer inside its closure).
Cycle surrounding_cycle(const FacialGraph& tri, const Cycle& a);

struct NestedSequence {
    std::vector<Cycle> cycles;  // [a0, a1, ..., ak]
    bool truncated = false;
};

/// Iterates surrounding_cycle up to k layers; stops early with a truncation
/// flag when the window runs out.
NestedSequence nested_sequence(const FacialGraph& tri, const Cycle& a0, std::size_t k);

/// Removes everything strictly inside the exterior cycle of a face boundary.
/// Requires an inner face of size >= 4.
PlaneGraph prune_face_interior(const PlaneGraph& g, std::size_t face_id);

}  // namespace planar
