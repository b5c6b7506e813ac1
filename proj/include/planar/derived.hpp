#pragma once

#include <array>
#include <optional>
#include <unordered_map>

#include "planar/plane_graph.hpp"

namespace planar {

/// Extra edge between two non-adjacent vertices on a shared face boundary.
/// Two abutting faces may induce the same vertex pair; the records stay
/// distinct (the host face matters downstream), adjacency queries collapse.
struct Diagonal {
    VertexId a = kNone;
    VertexId b = kNone;
    std::size_t host_face = kNone;
};

class MatchingGraph {
public:
    MatchingGraph() = default;
    MatchingGraph(PlaneGraph base, FaceSet base_faces, std::vector<Diagonal> diags);

    const PlaneGraph& base() const { return base_; }
    const FaceSet& base_faces() const { return faces_; }
    const std::vector<Diagonal>& diagonals() const { return diags_; }

    bool adjacent(VertexId u, VertexId v) const {
        return base_.adjacent(u, v) || diag_pairs_.count(edge_key(u, v)) != 0;
    }
    bool is_diagonal_pair(VertexId u, VertexId v) const {
        return diag_pairs_.count(edge_key(u, v)) != 0;
    }
    /// Indices into diagonals() for the pair (u, v); empty if none.
    std::vector<std::size_t> diagonal_records(VertexId u, VertexId v) const;
    /// Neighbours of v in the matching graph (base neighbours + diagonal ends).
    std::vector<VertexId> neighbors(VertexId v) const;

private:
    PlaneGraph base_;
    FaceSet faces_;
    std::vector<Diagonal> diags_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> diag_pairs_;
    std::unordered_map<VertexId, std::vector<VertexId>> diag_nbrs_;
};

/// Adds all diagonals to all non-triangular inner faces. The outer window
/// face never receives diagonals.
MatchingGraph matching_graph(const PlaneGraph& g);

/// Plane graph obtained by dropping one site inside each non-triangular
/// inner face, joined to every boundary vertex of that face. Site slots are
/// appended after the base slots, so base vertex ids are preserved.
class FacialGraph {
public:
    FacialGraph() = default;

    const PlaneGraph& graph() const { return graph_; }
    const PlaneGraph& base() const { return base_; }
    const FaceSet& base_faces() const { return base_faces_; }

    bool adjacent(VertexId u, VertexId v) const { return graph_.adjacent(u, v); }
    bool is_site(VertexId v) const { return v >= base_slots_ && graph_.alive(v); }
    std::size_t base_slot_count() const { return base_slots_; }
    /// Face of the base graph a site sits in; kNone for base vertices.
    std::size_t face_of_site(VertexId v) const;
    /// Site vertex for a base face, kNone if the face has none (triangles)
    /// or the site was deleted by triangle emptying.
    VertexId site_of_face(std::size_t face) const;
    std::vector<VertexId> sites() const;

    /// Inner base faces whose closure contains x (for sites: the host face).
    const std::vector<std::size_t>& incident_base_faces(VertexId x) const;

    friend FacialGraph facial_graph(const PlaneGraph& g);
    friend FacialGraph facial_delta(const PlaneGraph& g);

private:
    PlaneGraph graph_;
    PlaneGraph base_;
    FaceSet base_faces_;
    std::size_t base_slots_ = 0;
    std::vector<std::size_t> site_face_;                    // slot -> base face id
    std::unordered_map<std::size_t, VertexId> face_site_;   // base face id -> site
    std::vector<std::vector<std::size_t>> vertex_faces_;    // slot -> inner base faces
};

FacialGraph facial_graph(const PlaneGraph& g);

/// Facial graph with its own separating triangles emptied.
FacialGraph facial_delta(const PlaneGraph& g);

enum class TriangleKind {
    plain,      // all three corners are base vertices
    site_pair,  // two site spokes plus one base edge
};

struct TriangleRecord {
    std::array<VertexId, 3> verts{};
    std::size_t interior_vertex_count = 0;
    std::size_t interior_edge_count = 0;
    TriangleKind kind = TriangleKind::plain;
};

struct SeparatingTriangleReport {
    std::vector<TriangleRecord> triangles;
    bool empty() const { return triangles.empty(); }
};

/// All 3-cycles with nonempty interior (vertices or edges inside).
SeparatingTriangleReport separating_triangles(const PlaneGraph& g);

/// As above on the facial graph, with the site-pair classification filled in.
SeparatingTriangleReport separating_triangles(const FacialGraph& fg);

/// Removes everything interior to any separating triangle, in one pass over
/// the union of interiors. Idempotent.
PlaneGraph empty_triangles(const PlaneGraph& g);

bool is_triangulation(const PlaneGraph& g);

}  // namespace planar
