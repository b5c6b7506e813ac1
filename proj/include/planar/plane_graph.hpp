#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace planar {

using VertexId = std::size_t;
inline constexpr VertexId kNone = static_cast<VertexId>(-1);
inline constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

inline std::uint64_t edge_key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}
inline std::uint64_t dart_key(VertexId from, VertexId to) {
    return (static_cast<std::uint64_t>(from) << 32) | static_cast<std::uint64_t>(to);
}

/// Plane graph with a combinatorial embedding: per-vertex clockwise rotation
/// of incident neighbours, plus drawing coordinates used for rendering and
/// for geometric cross-checks. Vertex slots are stable: deleting vertices
/// keeps ids and marks slots dead, so derived graphs can be compared by name.
/// Immutable after construction; all mutating steps happen inside builders.
class PlaneGraph {
public:
    PlaneGraph() = default;

    /// Build from coordinates and an undirected edge list. Rotations are
    /// derived from the drawing (neighbours sorted clockwise around each
    /// vertex), so the edge list must describe a plane drawing.
    static PlaneGraph from_points(std::vector<Vec2> pos,
                                  const std::vector<std::pair<VertexId, VertexId>>& edge_list);

    /// Build from explicit clockwise rotations (interchange files).
    static PlaneGraph from_rotations(std::vector<Vec2> pos,
                                     std::vector<std::vector<VertexId>> rotations);

    std::size_t slot_count() const { return rot_.size(); }
    std::size_t vertex_count() const { return alive_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool alive(VertexId v) const { return v < rot_.size() && alive_[v]; }
    bool adjacent(VertexId a, VertexId b) const { return edges_.count(edge_key(a, b)) != 0; }
    const std::vector<VertexId>& rotation(VertexId v) const { return rot_[v]; }
    std::size_t degree(VertexId v) const { return rot_[v].size(); }
    Vec2 position(VertexId v) const { return pos_[v]; }
    bool on_boundary(VertexId v) const { return boundary_[v]; }

    std::vector<VertexId> vertices() const;
    std::vector<VertexId> boundary_vertices() const;
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    void mark_boundary(VertexId v, bool b = true) { boundary_[v] = b; }

    /// Returns a copy with the flagged vertices (and incident edges) removed.
    PlaneGraph remove_vertices(const std::vector<char>& kill) const;
    /// Returns a copy with the listed edges removed.
    PlaneGraph remove_edges(const std::vector<std::pair<VertexId, VertexId>>& es) const;

    // Crossing terminals for percolation experiments; set by generators,
    // empty for custom graphs (the percolation module then derives them
    // from x-extremes of the boundary).
    std::vector<VertexId> west_ports;
    std::vector<VertexId> east_ports;

private:
    std::vector<Vec2> pos_;
    std::vector<std::vector<VertexId>> rot_;
    std::vector<char> alive_;
    std::vector<char> boundary_;
    std::unordered_set<std::uint64_t> edges_;
    std::size_t alive_count_ = 0;

    void rebuild_edge_set();
};

struct Face {
    std::vector<VertexId> verts;  // boundary walk, one entry per dart
    bool outer = false;
    std::size_t size() const { return verts.size(); }
    bool contains(VertexId v) const;
};

struct FaceSet {
    std::vector<Face> faces;
    std::size_t outer_index = kNone;
    std::unordered_map<std::uint64_t, std::uint32_t> face_of_dart;

    const Face& outer() const { return faces[outer_index]; }
    std::size_t inner_count() const { return faces.size() - 1; }
    /// Face lying to the left of the dart from->to.
    std::size_t face_left_of(VertexId from, VertexId to) const;
    /// The two faces incident to an undirected edge.
    std::pair<std::size_t, std::size_t> faces_of_edge(VertexId a, VertexId b) const;
};

/// Trace every face of the embedding. Exactly one face is the outer face.
FaceSet faces(const PlaneGraph& g);

struct Cycle {
    std::vector<VertexId> verts;  // closed implicitly, first vertex not repeated
    std::size_t size() const { return verts.size(); }
    bool contains(VertexId v) const;
};

/// Canonical form (rotation + direction) for set comparisons.
Cycle canonical_cycle(const Cycle& c);
bool same_cycle(const Cycle& a, const Cycle& b);

struct CycleRegion {
    Cycle cycle;
    std::vector<VertexId> interior_vertices;
    std::vector<std::pair<VertexId, VertexId>> interior_edges;
    std::vector<std::size_t> enclosed_faces;
    bool empty() const { return interior_vertices.empty() && interior_edges.empty(); }
};

/// Bounded side of a cycle, computed combinatorially by dual traversal from
/// the outer face. Throws GraphError if c is not a cycle of g.
CycleRegion cycle_interior(const PlaneGraph& g, const Cycle& c);
CycleRegion cycle_interior(const PlaneGraph& g, const FaceSet& fs, const Cycle& c);

/// True if c is a cycle of g (length >= 3, distinct vertices, consecutive
/// adjacency, closing edge present).
bool is_cycle_of(const PlaneGraph& g, const Cycle& c);

/// BFS distances from a source set; kUnreachable where disconnected.
std::vector<std::size_t> distances_from(const PlaneGraph& g, std::span<const VertexId> sources);
std::size_t graph_distance(const PlaneGraph& g, std::span<const VertexId> a,
                           std::span<const VertexId> b);
std::size_t graph_distance(const PlaneGraph& g, VertexId a, VertexId b);

/// Structural checks: simplicity, rotation consistency, connectivity, face
/// traversal closure and the Euler relation. Throws GraphError on failure.
void validate(const PlaneGraph& g);

bool is_connected(const PlaneGraph& g);
bool is_two_connected(const PlaneGraph& g);

/// Signed area of a closed polygon walk (positive = counterclockwise).
double signed_area(const PlaneGraph& g, std::span<const VertexId> walk);

}  // namespace planar
