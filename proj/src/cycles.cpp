#include "planar/cycles.hpp"

#include <algorithm>
#include <unordered_map>

namespace planar {

namespace {

// Outer boundary of a plane subgraph given by a vertex set and edge set,
// using the host embedding's rotations. Returns the walk of the unbounded
// face; callers assert it is a simple cycle.
std::vector<VertexId> outer_walk_of_subgraph(const PlaneGraph& g,
                                             const std::vector<VertexId>& verts,
                                             const std::unordered_set<std::uint64_t>& edges) {
    std::unordered_map<VertexId, std::vector<VertexId>> rot;
    for (VertexId v : verts) {
        std::vector<VertexId> r;
        for (VertexId w : g.rotation(v))
            if (edges.count(edge_key(v, w))) r.push_back(w);
        if (r.empty()) throw GraphError("outer walk: isolated vertex in subgraph");
        rot.emplace(v, std::move(r));
    }
    std::unordered_set<std::uint64_t> visited;
    std::vector<VertexId> best;
    double best_area = 0.0;
    std::vector<Vec2> poly;
    for (const auto& [v, rv] : rot) {
        for (VertexId w : rv) {
            if (visited.count(dart_key(v, w))) continue;
            std::vector<VertexId> walk;
            VertexId a = v, b = w;
            std::size_t guard = 4 * edges.size() + 4;
            while (true) {
                if (guard-- == 0) throw GraphError("outer walk does not close");
                visited.insert(dart_key(a, b));
                walk.push_back(a);
                const auto& rb = rot.at(b);
                auto it = std::find(rb.begin(), rb.end(), a);
                const std::size_t idx = static_cast<std::size_t>(it - rb.begin());
                const VertexId c = rb[(idx + 1) % rb.size()];
                a = b;
                b = c;
                if (a == v && b == w) break;
            }
            double area = 0.0;
            for (std::size_t i = 0; i < walk.size(); ++i) {
                const Vec2 p = g.position(walk[i]);
                const Vec2 q = g.position(walk[(i + 1) % walk.size()]);
                area += p.x * q.y - q.x * p.y;
            }
            area *= 0.5;
            if (best.empty() || area < best_area) {
                best = std::move(walk);
                best_area = area;
            }
        }
    }
    return best;
}

}  // namespace

Cycle exterior_cycle(const PlaneGraph& g, const Cycle& a) {
    return exterior_cycle(g, faces(g), a);
}

Cycle exterior_cycle(const PlaneGraph& g, const FaceSet& fs, const Cycle& a) {
    if (!is_cycle_of(g, a)) throw GraphError("exterior_cycle: not a cycle");
    if (a.size() == 3) return a;
    const CycleRegion region = cycle_interior(g, fs, a);

    std::unordered_set<std::uint64_t> inside;
    for (auto [x, y] : region.interior_edges) inside.insert(edge_key(x, y));

    std::unordered_set<VertexId> on_a(a.verts.begin(), a.verts.end());
    std::unordered_set<std::uint64_t> y_edges;
    for (std::size_t i = 0; i < a.size(); ++i)
        y_edges.insert(edge_key(a.verts[i], a.verts[(i + 1) % a.size()]));
    for (VertexId v : a.verts) {
        for (VertexId w : g.rotation(v)) {
            if (!on_a.count(w)) continue;
            const std::uint64_t key = edge_key(v, w);
            if (!inside.count(key)) y_edges.insert(key);
        }
    }

    const auto walk = outer_walk_of_subgraph(g, a.verts, y_edges);
    Cycle out{walk};
    std::unordered_set<VertexId> distinct(walk.begin(), walk.end());
    if (distinct.size() != walk.size())
        throw GraphError("exterior cycle is not simple");
    if (out.size() > a.size()) throw GraphError("exterior cycle longer than input");
    return out;
}

std::vector<VertexId> neighbor_layer(const PlaneGraph& g, const Cycle& a) {
    if (!is_cycle_of(g, a)) throw GraphError("neighbor_layer: not a cycle");
    for (VertexId v : a.verts)
        if (g.on_boundary(v)) throw GraphError("neighbor_layer: cycle touches window boundary");
    const CycleRegion region = cycle_interior(g, a);
    std::unordered_set<VertexId> excluded(a.verts.begin(), a.verts.end());
    excluded.insert(region.interior_vertices.begin(), region.interior_vertices.end());
    std::unordered_set<VertexId> layer;
    for (VertexId v : a.verts)
        for (VertexId w : g.rotation(v))
            if (!excluded.count(w)) layer.insert(w);
    std::vector<VertexId> out(layer.begin(), layer.end());
    std::sort(out.begin(), out.end());
    return out;
}

Cycle surrounding_cycle(const FacialGraph& tri, const Cycle& a) {
    const PlaneGraph& g = tri.graph();
    if (!is_cycle_of(g, a)) throw GraphError("surrounding_cycle: not a cycle of the host");
    const auto layer = neighbor_layer(g, a);
    for (VertexId v : layer)
        if (g.on_boundary(v))
            throw GraphError("surrounding_cycle: layer touches window boundary");

    const CycleRegion region = cycle_interior(g, a);
    std::unordered_set<VertexId> inner(a.verts.begin(), a.verts.end());
    inner.insert(region.interior_vertices.begin(), region.interior_vertices.end());

    std::vector<VertexId> verts(inner.begin(), inner.end());
    verts.insert(verts.end(), layer.begin(), layer.end());
    std::unordered_set<VertexId> vset(verts.begin(), verts.end());
    std::unordered_set<std::uint64_t> edges;
    for (VertexId v : verts)
        for (VertexId w : g.rotation(v))
            if (vset.count(w)) edges.insert(edge_key(v, w));

    const auto walk = outer_walk_of_subgraph(g, verts, edges);
    Cycle b{walk};
    std::unordered_set<VertexId> distinct(walk.begin(), walk.end());
    if (distinct.size() != walk.size())
        throw GraphError("surrounding cycle is not simple");

    // Containment checks: a strictly inside b, layer within b's closure.
    const CycleRegion rb = cycle_interior(g, b);
    std::unordered_set<VertexId> in_b(rb.interior_vertices.begin(), rb.interior_vertices.end());
    for (VertexId v : a.verts)
        if (!in_b.count(v)) throw GraphError("surrounding cycle does not enclose the input");
    std::unordered_set<VertexId> closure(in_b.begin(), in_b.end());
    for (VertexId v : b.verts) closure.insert(v);
    for (VertexId v : layer)
        if (!closure.count(v))
            throw GraphError("neighbour layer escapes the surrounding cycle");
    for (VertexId v : b.verts)
        if (std::find(layer.begin(), layer.end(), v) == layer.end())
            throw GraphError("surrounding cycle leaves the neighbour layer");
    return b;
}

NestedSequence nested_sequence(const FacialGraph& tri, const Cycle& a0, std::size_t k) {
    NestedSequence seq;
    seq.cycles.push_back(a0);
    for (std::size_t i = 0; i < k; ++i) {
        try {
            seq.cycles.push_back(surrounding_cycle(tri, seq.cycles.back()));
        } catch (const GraphError&) {
            seq.truncated = true;
            break;
        }
    }
    return seq;
}

PlaneGraph prune_face_interior(const PlaneGraph& g, std::size_t face_id) {
    const FaceSet fs = faces(g);
    if (face_id >= fs.faces.size()) throw GraphError("prune_face_interior: bad face id");
    if (face_id == fs.outer_index) throw GraphError("prune_face_interior: outer face");
    const Face& f = fs.faces[face_id];
    if (f.size() < 4) throw GraphError("prune_face_interior: face is a triangle");
    const Cycle ext = exterior_cycle(g, Cycle{f.verts});
    const CycleRegion region = cycle_interior(g, ext);
    std::vector<char> kill(g.slot_count(), 0);
    for (VertexId v : region.interior_vertices) kill[v] = 1;
    PlaneGraph out = g.remove_vertices(kill);
    std::vector<std::pair<VertexId, VertexId>> chords;
    for (auto [x, y] : region.interior_edges)
        if (out.adjacent(x, y)) chords.emplace_back(x, y);
    if (!chords.empty()) out = out.remove_edges(chords);
    return out;
}

}  // namespace planar
