#include "planar/derived.hpp"

#include <algorithm>

namespace planar {

MatchingGraph::MatchingGraph(PlaneGraph base, FaceSet base_faces, std::vector<Diagonal> diags)
    : base_(std::move(base)), faces_(std::move(base_faces)), diags_(std::move(diags)) {
    for (std::size_t i = 0; i < diags_.size(); ++i) {
        const auto& d = diags_[i];
        diag_pairs_[edge_key(d.a, d.b)].push_back(i);
    }
    for (const auto& [key, recs] : diag_pairs_) {
        const VertexId a = static_cast<VertexId>(key >> 32);
        const VertexId b = static_cast<VertexId>(key & 0xffffffffu);
        diag_nbrs_[a].push_back(b);
        diag_nbrs_[b].push_back(a);
        (void)recs;
    }
}

std::vector<std::size_t> MatchingGraph::diagonal_records(VertexId u, VertexId v) const {
    auto it = diag_pairs_.find(edge_key(u, v));
    if (it == diag_pairs_.end()) return {};
    return it->second;
}

std::vector<VertexId> MatchingGraph::neighbors(VertexId v) const {
    std::vector<VertexId> out = base_.rotation(v);
    auto it = diag_nbrs_.find(v);
    if (it != diag_nbrs_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    return out;
}

MatchingGraph matching_graph(const PlaneGraph& g) {
    FaceSet fs = faces(g);
    std::vector<Diagonal> diags;
    for (std::size_t f = 0; f < fs.faces.size(); ++f) {
        if (f == fs.outer_index) continue;
        const auto& verts = fs.faces[f].verts;
        const std::size_t n = verts.size();
        if (n < 4) continue;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const VertexId a = verts[i], b = verts[j];
                if (!g.adjacent(a, b)) diags.push_back({std::min(a, b), std::max(a, b), f});
            }
        }
    }
    return MatchingGraph(g, std::move(fs), std::move(diags));
}

std::size_t FacialGraph::face_of_site(VertexId v) const {
    if (v < base_slots_ || v >= site_face_.size()) return kNone;
    return site_face_[v];
}

VertexId FacialGraph::site_of_face(std::size_t face) const {
    auto it = face_site_.find(face);
    if (it == face_site_.end()) return kNone;
    return graph_.alive(it->second) ? it->second : kNone;
}

std::vector<VertexId> FacialGraph::sites() const {
    std::vector<VertexId> out;
    for (VertexId v = base_slots_; v < graph_.slot_count(); ++v)
        if (graph_.alive(v)) out.push_back(v);
    return out;
}

const std::vector<std::size_t>& FacialGraph::incident_base_faces(VertexId x) const {
    static const std::vector<std::size_t> none;
    if (x < vertex_faces_.size()) return vertex_faces_[x];
    return none;
}

FacialGraph facial_graph(const PlaneGraph& g) {
    FacialGraph fg;
    fg.base_ = g;
    fg.base_faces_ = faces(g);
    fg.base_slots_ = g.slot_count();

    const FaceSet& fs = fg.base_faces_;
    std::vector<Vec2> pos(g.slot_count());
    std::vector<std::vector<VertexId>> rot(g.slot_count());
    for (VertexId v = 0; v < g.slot_count(); ++v) {
        if (g.alive(v)) {
            pos[v] = g.position(v);
            rot[v] = g.rotation(v);
        }
    }

    fg.site_face_.assign(g.slot_count(), kNone);
    for (std::size_t f = 0; f < fs.faces.size(); ++f) {
        if (f == fs.outer_index || fs.faces[f].size() < 4) continue;
        const auto& fverts = fs.faces[f].verts;
        const VertexId site = pos.size();
        Vec2 centroid{0.0, 0.0};
        for (VertexId v : fverts) {
            centroid.x += g.position(v).x;
            centroid.y += g.position(v).y;
        }
        centroid.x /= static_cast<double>(fverts.size());
        centroid.y /= static_cast<double>(fverts.size());
        pos.push_back(centroid);
        fg.site_face_.push_back(f);
        fg.face_site_.emplace(f, site);

        // The inner face is traced counterclockwise; seen from the site the
        // boundary order is therefore clockwise when reversed.
        std::vector<VertexId> site_rot(fverts.rbegin(), fverts.rend());
        rot.push_back(std::move(site_rot));

        // Spoke insertion keeps the rotation clockwise: when the face walk
        // uses darts (a -> x)(x -> b), the face corner at x lies between a
        // and b, with b following a.
        const std::size_t n = fverts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const VertexId a = fverts[i];
            const VertexId x = fverts[(i + 1) % n];
            auto& rx = rot[x];
            auto it = std::find(rx.begin(), rx.end(), a);
            if (it == rx.end()) throw GraphError("facial graph: rotation broken");
            rx.insert(it + 1, site);
        }
    }

    fg.graph_ = PlaneGraph::from_rotations(std::move(pos), std::move(rot));
    for (VertexId v : g.boundary_vertices()) fg.graph_.mark_boundary(v);
    fg.graph_.west_ports = g.west_ports;
    fg.graph_.east_ports = g.east_ports;

    fg.vertex_faces_.assign(fg.graph_.slot_count(), {});
    for (std::size_t f = 0; f < fs.faces.size(); ++f) {
        if (f == fs.outer_index) continue;
        for (VertexId v : fs.faces[f].verts) fg.vertex_faces_[v].push_back(f);
        const VertexId site = fg.site_of_face(f);
        if (site != kNone) fg.vertex_faces_[site].push_back(f);
    }
    return fg;
}

namespace {

std::vector<TriangleRecord> scan_triangles(const PlaneGraph& g) {
    std::vector<TriangleRecord> out;
    const FaceSet fs = faces(g);
    std::unordered_set<std::uint64_t> facial;
    for (const auto& f : fs.faces) {
        if (f.size() == 3 && !f.outer) {
            // facial 3-cycles cannot separate; skip them early
            std::array<VertexId, 3> t{f.verts[0], f.verts[1], f.verts[2]};
            std::sort(t.begin(), t.end());
            facial.insert((static_cast<std::uint64_t>(t[0]) << 42) ^
                          (static_cast<std::uint64_t>(t[1]) << 21) ^ t[2]);
        }
    }
    std::unordered_set<std::uint64_t> seen;
    for (auto [a, b] : g.edges()) {
        // common neighbourhood intersection per edge
        const auto& ra = g.rotation(a);
        for (VertexId c : ra) {
            if (c == b || !g.adjacent(b, c)) continue;
            std::array<VertexId, 3> t{a, b, c};
            std::sort(t.begin(), t.end());
            const std::uint64_t key = (static_cast<std::uint64_t>(t[0]) << 42) ^
                                      (static_cast<std::uint64_t>(t[1]) << 21) ^ t[2];
            if (!seen.insert(key).second) continue;
            if (facial.count(key)) continue;
            Cycle tri{{t[0], t[1], t[2]}};
            if (!is_cycle_of(g, tri)) continue;
            const CycleRegion region = cycle_interior(g, fs, tri);
            if (region.empty()) continue;
            TriangleRecord rec;
            rec.verts = t;
            rec.interior_vertex_count = region.interior_vertices.size();
            rec.interior_edge_count = region.interior_edges.size();
            out.push_back(rec);
        }
    }
    return out;
}

}  // namespace

SeparatingTriangleReport separating_triangles(const PlaneGraph& g) {
    return SeparatingTriangleReport{scan_triangles(g)};
}

SeparatingTriangleReport separating_triangles(const FacialGraph& fg) {
    SeparatingTriangleReport rep{scan_triangles(fg.graph())};
    for (auto& t : rep.triangles) {
        const bool any_site = fg.is_site(t.verts[0]) || fg.is_site(t.verts[1]) ||
                              fg.is_site(t.verts[2]);
        t.kind = any_site ? TriangleKind::site_pair : TriangleKind::plain;
    }
    return rep;
}

PlaneGraph empty_triangles(const PlaneGraph& g) {
    const auto tris = scan_triangles(g);
    if (tris.empty()) return g;
    const FaceSet fs = faces(g);
    std::vector<char> kill(g.slot_count(), 0);
    std::vector<std::pair<VertexId, VertexId>> interior_chords;
    for (const auto& t : tris) {
        Cycle tri{{t.verts[0], t.verts[1], t.verts[2]}};
        const CycleRegion region = cycle_interior(g, fs, tri);
        for (VertexId v : region.interior_vertices) kill[v] = 1;
        for (auto e : region.interior_edges) interior_chords.push_back(e);
    }
    PlaneGraph out = g.remove_vertices(kill);
    // chords drawn inside a triangle with both endpoints on it
    std::vector<std::pair<VertexId, VertexId>> remaining;
    for (auto [a, b] : interior_chords)
        if (out.adjacent(a, b)) remaining.emplace_back(a, b);
    if (!remaining.empty()) out = out.remove_edges(remaining);
    return out;
}

FacialGraph facial_delta(const PlaneGraph& g) {
    FacialGraph fg = facial_graph(g);
    fg.graph_ = empty_triangles(fg.graph_);
    return fg;
}

bool is_triangulation(const PlaneGraph& g) {
    const FaceSet fs = faces(g);
    for (std::size_t f = 0; f < fs.faces.size(); ++f)
        if (f != fs.outer_index && fs.faces[f].size() != 3) return false;
    return true;
}

}  // namespace planar
