#include "planar/path.hpp"

#include <algorithm>
#include <queue>

namespace planar {

bool PathSeq::contains(VertexId v) const {
    return std::find(verts.begin(), verts.end(), v) != verts.end();
}

PathSeq PathSeq::reversed() const {
    PathSeq out = *this;
    std::reverse(out.verts.begin(), out.verts.end());
    return out;
}

void validate_path(const PlaneGraph& window, const MatchingGraph* diag_host, const PathSeq& p) {
    const auto& v = p.verts;
    if (v.empty()) throw PathError("empty path");
    std::unordered_set<VertexId> seen;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!window.alive(v[i])) throw PathError("path vertex not in host");
        if (!seen.insert(v[i]).second) throw PathError("repeated path vertex");
        if (i + 1 < v.size()) {
            const bool adj = diag_host ? diag_host->adjacent(v[i], v[i + 1])
                                       : window.adjacent(v[i], v[i + 1]);
            if (!adj) throw PathError("consecutive path vertices not adjacent");
        }
    }
    if (p.cls == PathClass::window_crossing) {
        if (v.size() < 2) throw PathError("crossing path too short");
        if (!window.on_boundary(v.front()) || !window.on_boundary(v.back()))
            throw PathError("crossing path endpoint not on window boundary");
        for (std::size_t i = 1; i + 1 < v.size(); ++i)
            if (window.on_boundary(v[i]))
                throw PathError("crossing path touches window boundary in its interior");
    }
}

PathSeq erase_loops(PathSeq walk) {
    auto& v = walk.verts;
    std::vector<VertexId> out;
    std::unordered_map<VertexId, std::size_t> pos;
    for (VertexId x : v) {
        if (!out.empty() && out.back() == x) continue;
        auto it = pos.find(x);
        if (it != pos.end()) {
            for (std::size_t k = it->second + 1; k < out.size(); ++k) pos.erase(out[k]);
            out.resize(it->second + 1);
        } else {
            pos.emplace(x, out.size());
            out.push_back(x);
        }
    }
    walk.verts = std::move(out);
    return walk;
}

PathSeq lift_to_facial(const FacialGraph& fg, const MatchingGraph& mg, const PathSeq& nu) {
    if (!is_induced(mg, nu)) throw PathError("lift_to_facial: input has a chord");
    PathSeq out;
    out.cls = nu.cls;
    const auto& v = nu.verts;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.verts.push_back(v[i]);
        if (i + 1 == v.size()) break;
        if (mg.base().adjacent(v[i], v[i + 1])) continue;
        const auto recs = mg.diagonal_records(v[i], v[i + 1]);
        if (recs.empty()) throw PathError("lift_to_facial: step is neither edge nor diagonal");
        // Parallel diagonals: take the lowest host face whose site survives.
        VertexId site = kNone;
        for (std::size_t rec : recs) {
            site = fg.site_of_face(mg.diagonals()[rec].host_face);
            if (site != kNone) break;
        }
        if (site == kNone) throw PathError("lift_to_facial: no site for diagonal host face");
        out.verts.push_back(site);
    }
    return out;
}

namespace {

struct FaceOffense {
    std::size_t face = kNone;
    std::size_t first_index = kNone;
    bool through_site = false;
};

// Earliest face needing a fix along the directed path: either the path runs
// through the face's site, or it meets the boundary in two non-adjacent
// vertices with the site absent.
std::optional<FaceOffense> first_offense(const FacialGraph& fg, const MatchingGraph& mg,
                                         const PathSeq& p) {
    std::optional<FaceOffense> best;
    std::unordered_map<std::size_t, std::size_t> first_seen;
    std::unordered_map<std::size_t, std::vector<std::size_t>> touches;
    for (std::size_t i = 0; i < p.verts.size(); ++i) {
        const VertexId x = p.verts[i];
        if (fg.is_site(x)) {
            const std::size_t f = fg.face_of_site(x);
            if (!best || i < best->first_index) best = FaceOffense{f, i, true};
            continue;
        }
        for (std::size_t f : fg.incident_base_faces(x)) {
            if (!first_seen.count(f)) first_seen.emplace(f, i);
            touches[f].push_back(i);
        }
    }
    for (auto& [f, idx] : touches) {
        if (idx.size() < 2) continue;
        const VertexId site = fg.site_of_face(f);
        if (site != kNone && p.contains(site)) continue;  // handled as through_site
        // two boundary vertices far apart on the path that would become a
        // chord after projection (consecutive diagonal steps are fine)
        std::sort(idx.begin(), idx.end());
        bool offending = false;
        for (std::size_t a = 0; a < idx.size() && !offending; ++a)
            for (std::size_t b = a + 1; b < idx.size() && !offending; ++b)
                if (idx[b] >= idx[a] + 2 &&
                    !mg.base().adjacent(p.verts[idx[a]], p.verts[idx[b]]))
                    offending = true;
        if (!offending) continue;
        const std::size_t first = first_seen[f];
        if (!best || first < best->first_index) best = FaceOffense{f, first, false};
    }
    return best;
}

}  // namespace

PathSeq project_to_matching(const FacialGraph& fg, const MatchingGraph& mg, PathSeq p) {
    if (p.verts.empty()) throw PathError("project_to_matching: empty path");
    if (fg.is_site(p.verts.front()) || fg.is_site(p.verts.back()))
        throw PathError("project_to_matching: endpoint is a facial site");
    for (std::size_t guard = 0; guard < p.verts.size() + fg.graph().slot_count(); ++guard) {
        auto off = first_offense(fg, mg, p);
        if (!off) break;
        if (off->through_site) {
            // An induced facial path visits a face's site between exactly two
            // boundary vertices; drop the site and keep the implied step.
            auto it = std::find_if(p.verts.begin(), p.verts.end(),
                                   [&](VertexId x) { return fg.is_site(x) &&
                                                            fg.face_of_site(x) == off->face; });
            const std::size_t k = static_cast<std::size_t>(it - p.verts.begin());
            if (k == 0 || k + 1 >= p.verts.size())
                throw PathError("project_to_matching: site at path end");
            p.verts.erase(p.verts.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
            // Two-touch face: cut between the first entry and the last exit,
            // keeping both; the step becomes an edge or a diagonal.
            const auto& fverts = fg.base_faces().faces[off->face].verts;
            std::unordered_set<VertexId> on_face(fverts.begin(), fverts.end());
            std::size_t first = kNone, last = kNone;
            for (std::size_t i = 0; i < p.verts.size(); ++i) {
                if (on_face.count(p.verts[i])) {
                    if (first == kNone) first = i;
                    last = i;
                }
            }
            if (first == kNone || last <= first + 0)
                throw PathError("project_to_matching: lost face touch");
            p.verts.erase(p.verts.begin() + static_cast<std::ptrdiff_t>(first) + 1,
                          p.verts.begin() + static_cast<std::ptrdiff_t>(last));
        }
    }
    if (!is_induced(mg, p)) throw PathError("project_to_matching: result not induced");
    return p;
}

bool coface(const FacialGraph& fg, VertexId x, VertexId y) {
    const auto& fx = fg.incident_base_faces(x);
    const auto& fy = fg.incident_base_faces(y);
    for (std::size_t f : fx)
        if (std::find(fy.begin(), fy.end(), f) != fy.end()) return true;
    return false;
}

HatClassification classify_facial_path(const FacialGraph& fg, const MatchingGraph& mg,
                                       const PathSeq& nu_hat) {
    if (!is_induced(fg, nu_hat))
        throw PathError("classify_facial_path: input not induced in the facial graph");
    std::unordered_map<std::size_t, std::vector<VertexId>> touches;
    std::unordered_set<std::size_t> site_faces;
    for (VertexId x : nu_hat.verts) {
        if (fg.is_site(x)) {
            site_faces.insert(fg.face_of_site(x));
            continue;
        }
        for (std::size_t f : fg.incident_base_faces(x)) touches[f].push_back(x);
    }
    for (auto& [f, verts] : touches) {
        if (site_faces.count(f)) continue;
        for (std::size_t a = 0; a < verts.size(); ++a)
            for (std::size_t b = a + 1; b < verts.size(); ++b)
                if (!mg.base().adjacent(verts[a], verts[b]))
                    return {HatPathClass::two_touch, f};
    }
    return {HatPathClass::lift_image, kNone};
}

FaceTouch face_touch(const MatchingGraph& mg, const PathSeq& nu, std::size_t face_id) {
    if (!is_induced(mg, nu)) throw PathError("face_touch: path not induced");
    const auto& fverts = mg.base_faces().faces[face_id].verts;
    std::unordered_set<VertexId> on_face(fverts.begin(), fverts.end());
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < nu.verts.size(); ++i)
        if (on_face.count(nu.verts[i])) hits.push_back(i);
    if (hits.empty()) return FaceTouch::none;
    if (hits.size() == 1) return FaceTouch::one_vertex;
    if (hits.size() == 2 && hits[1] == hits[0] + 1) {
        const VertexId a = nu.verts[hits[0]], b = nu.verts[hits[1]];
        if (mg.base().adjacent(a, b)) return FaceTouch::one_edge;
        for (std::size_t rec : mg.diagonal_records(a, b))
            if (mg.diagonals()[rec].host_face == face_id) return FaceTouch::one_diagonal;
        // diagonal hosted by an abutting face; still a diagonal step
        if (mg.is_diagonal_pair(a, b)) return FaceTouch::one_diagonal;
    }
    throw PathError("face_touch: intersection violates the induced-path invariant");
}

std::size_t path_margin(const PlaneGraph& window, const PathSeq& p) {
    const auto bd = window.boundary_vertices();
    if (bd.empty()) return kUnreachable;
    const auto dist = distances_from(window, bd);
    std::size_t m = kUnreachable;
    for (std::size_t i = 1; i + 1 < p.verts.size(); ++i) {
        const VertexId v = p.verts[i];
        if (v < dist.size() && dist[v] != kUnreachable) m = std::min(m, dist[v]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Vertex-disjoint paths to the boundary (unit vertex capacities).

namespace {

struct FlowNet {
    // node 2v = in, 2v+1 = out; arcs as adjacency with residual capacities
    struct Arc {
        std::size_t to;
        int cap;
        std::size_t rev;
    };
    std::vector<std::vector<Arc>> adj;
    void add(std::size_t a, std::size_t b, int cap) {
        adj[a].push_back({b, cap, adj[b].size()});
        adj[b].push_back({a, 0, adj[a].size() - 1});
    }
};

}  // namespace

std::size_t disjoint_boundary_paths(const PlaneGraph& g, VertexId v, std::size_t cap,
                                    std::vector<std::vector<VertexId>>* out) {
    const std::size_t n = g.slot_count();
    const std::size_t source = 2 * n, sink = 2 * n + 1;
    FlowNet net;
    net.adj.resize(2 * n + 2);
    for (VertexId x : g.vertices()) {
        net.add(2 * x, 2 * x + 1, x == v ? static_cast<int>(cap) : 1);
        for (VertexId w : g.rotation(x)) net.add(2 * x + 1, 2 * w, 1);
        if (g.on_boundary(x)) net.add(2 * x + 1, sink, 1);
    }
    net.add(source, 2 * v, static_cast<int>(cap));

    std::size_t flow = 0;
    while (flow < cap) {
        // BFS augmenting path
        std::vector<std::pair<std::size_t, std::size_t>> parent(net.adj.size(),
                                                                {kNone, kNone});
        std::queue<std::size_t> q;
        q.push(source);
        parent[source] = {source, 0};
        while (!q.empty() && parent[sink].first == kNone) {
            const std::size_t a = q.front();
            q.pop();
            for (std::size_t k = 0; k < net.adj[a].size(); ++k) {
                const auto& arc = net.adj[a][k];
                if (arc.cap > 0 && parent[arc.to].first == kNone) {
                    parent[arc.to] = {a, k};
                    q.push(arc.to);
                }
            }
        }
        if (parent[sink].first == kNone) break;
        std::size_t cur = sink;
        while (cur != source) {
            auto [pa, pk] = parent[cur];
            net.adj[pa][pk].cap -= 1;
            net.adj[net.adj[pa][pk].to][net.adj[pa][pk].rev].cap += 1;
            cur = pa;
        }
        ++flow;
    }

    if (out && flow > 0) {
        out->clear();
        // follow saturated arcs from v; vertex capacities make paths unique
        std::vector<char> used_arc;
        for (const auto& arc0 : net.adj[2 * v + 1]) {
            if (arc0.cap != 0 || net.adj[arc0.to][arc0.rev].cap != 1) continue;
            // arc0 was saturated (cap went 1 -> 0)
            std::vector<VertexId> path{v};
            std::size_t node = arc0.to;  // an in-node
            bool ok = true;
            std::size_t guard = 4 * n + 4;
            while (ok && guard--) {
                const VertexId x = static_cast<VertexId>(node / 2);
                path.push_back(x);
                if (g.on_boundary(x)) break;
                // move through x's out node along its saturated arc
                const std::size_t out_node = 2 * x + 1;
                bool moved = false;
                for (const auto& arc : net.adj[out_node]) {
                    if (arc.to == sink) continue;
                    if (arc.to % 2 == 1) continue;      // residual back-arc
                    if (arc.cap == 0 && net.adj[arc.to][arc.rev].cap == 1 &&
                        arc.to != 2 * x) {
                        node = arc.to;
                        moved = true;
                        break;
                    }
                }
                if (!moved) ok = false;
            }
            if (ok) out->push_back(std::move(path));
        }
    }
    return flow;
}

PathSeq build_crossing_path(const PlaneGraph& g, VertexId v) {
    if (!g.alive(v)) throw PathError("build_crossing_path: vertex not in graph");
    const auto bd = g.boundary_vertices();
    if (bd.empty()) throw PathError("build_crossing_path: window has no boundary");
    std::vector<std::vector<VertexId>> paths;
    const std::size_t flow = disjoint_boundary_paths(g, v, 4, &paths);
    if (flow < 4) throw FlowError(flow);
    if (paths.size() < 4) throw PathError("build_crossing_path: flow decomposition failed");

    // Order the four paths clockwise by the rotation position of their first
    // edge at v, then take the first and third.
    const auto& rot = g.rotation(v);
    auto rot_index = [&](const std::vector<VertexId>& p) {
        auto it = std::find(rot.begin(), rot.end(), p[1]);
        return static_cast<std::size_t>(it - rot.begin());
    };
    std::sort(paths.begin(), paths.end(),
              [&](const auto& a, const auto& b) { return rot_index(a) < rot_index(b); });

    auto half = [&](const std::vector<VertexId>& raw) {
        PathSeq p{raw, PathClass::finite};
        return remove_oxbows(g, std::move(p));
    };
    const PathSeq h1 = half(paths[0]);
    const PathSeq h3 = half(paths[2]);

    PathSeq joined;
    joined.verts.assign(h1.verts.rbegin(), h1.verts.rend());  // boundary ... v
    joined.verts.insert(joined.verts.end(), h3.verts.begin() + 1, h3.verts.end());
    joined = remove_oxbows(g, erase_loops(std::move(joined)));
    joined.cls = PathClass::window_crossing;
    validate_path(g, nullptr, joined);
    if (!is_induced(g, joined))
        throw PathError("build_crossing_path: join is not induced");
    return joined;
}

// ---------------------------------------------------------------------------
// Diagonal-crossing search (property-Pi check at window scale).

namespace {

struct PiSearch {
    const MatchingGraph& mg;
    const PlaneGraph& g;

    bool chord_free_extend(const std::vector<VertexId>& path, VertexId w) const {
        if (std::find(path.begin(), path.end(), w) != path.end()) return false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (mg.adjacent(path[i], w)) return false;
        return true;
    }

    // Grow the path at its back until the window boundary; on every complete
    // right side, recurse into the left side so the search stays exhaustive
    // across both halves.
    bool grow(std::vector<VertexId>& path, bool second_side) {
        const VertexId tail = path.back();
        if (g.on_boundary(tail)) {
            if (second_side) return true;
            std::vector<VertexId> flipped(path.rbegin(), path.rend());
            if (grow(flipped, true)) {
                path.assign(flipped.begin(), flipped.end());
                return true;
            }
            return false;
        }
        for (VertexId w : mg.neighbors(tail)) {
            if (!chord_free_extend(path, w)) continue;
            path.push_back(w);
            if (grow(path, second_side)) return true;
            path.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<PathSeq> find_diagonal_crossing(const MatchingGraph& mg, std::size_t margin) {
    const PlaneGraph& g = mg.base();
    const auto bd = g.boundary_vertices();
    if (bd.empty()) return std::nullopt;
    const auto dist = distances_from(g, bd);
    // A witness's diagonal endpoints are path-interior, so they must stay
    // off the window boundary.
    const std::size_t need = std::max<std::size_t>(margin, 1);

    PiSearch search{mg, g};
    for (const Diagonal& d : mg.diagonals()) {
        std::size_t fm = kUnreachable;
        for (VertexId x : mg.base_faces().faces[d.host_face].verts)
            fm = std::min(fm, dist[x]);
        if (fm == kUnreachable || fm < need) continue;

        std::vector<VertexId> path{d.a, d.b};
        if (search.grow(path, false)) {
            PathSeq witness{std::move(path), PathClass::window_crossing};
            validate_path(g, &mg, witness);
            if (!is_induced(mg, witness))
                throw PathError("find_diagonal_crossing: search produced a chord");
            return witness;
        }
    }
    return std::nullopt;
}

}  // namespace planar
