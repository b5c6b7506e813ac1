#include "planar/plane_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace planar {

namespace {

// Clockwise comparator around a centre point: descending angle from +x axis.
struct ClockwiseAround {
    const std::vector<Vec2>& pos;
    Vec2 c;
    bool operator()(VertexId a, VertexId b) const {
        const double aa = std::atan2(pos[a].y - c.y, pos[a].x - c.x);
        const double ab = std::atan2(pos[b].y - c.y, pos[b].x - c.x);
        if (aa != ab) return aa > ab;
        return a < b;
    }
};

}  // namespace

void PlaneGraph::rebuild_edge_set() {
    edges_.clear();
    alive_count_ = 0;
    for (VertexId v = 0; v < rot_.size(); ++v) {
        if (!alive_[v]) continue;
        ++alive_count_;
        for (VertexId w : rot_[v]) edges_.insert(edge_key(v, w));
    }
}

PlaneGraph PlaneGraph::from_points(std::vector<Vec2> pos,
                                   const std::vector<std::pair<VertexId, VertexId>>& edge_list) {
    const std::size_t n = pos.size();
    std::vector<std::vector<VertexId>> rot(n);
    for (auto [a, b] : edge_list) {
        if (a >= n || b >= n) throw GraphError("edge endpoint out of range");
        if (a == b) throw GraphError("loop edge");
        rot[a].push_back(b);
        rot[b].push_back(a);
    }
    for (VertexId v = 0; v < n; ++v) {
        auto& r = rot[v];
        std::sort(r.begin(), r.end(), ClockwiseAround{pos, pos[v]});
        for (std::size_t i = 1; i < r.size(); ++i)
            if (r[i] == r[i - 1]) throw GraphError("parallel edge");
    }
    return from_rotations(std::move(pos), std::move(rot));
}

PlaneGraph PlaneGraph::from_rotations(std::vector<Vec2> pos,
                                      std::vector<std::vector<VertexId>> rotations) {
    if (pos.size() != rotations.size()) throw GraphError("positions/rotations size mismatch");
    PlaneGraph g;
    g.pos_ = std::move(pos);
    g.rot_ = std::move(rotations);
    g.alive_.assign(g.rot_.size(), 1);
    g.boundary_.assign(g.rot_.size(), 0);
    g.rebuild_edge_set();
    return g;
}

std::vector<VertexId> PlaneGraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(alive_count_);
    for (VertexId v = 0; v < rot_.size(); ++v)
        if (alive_[v]) out.push_back(v);
    return out;
}

std::vector<VertexId> PlaneGraph::boundary_vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < rot_.size(); ++v)
        if (alive_[v] && boundary_[v]) out.push_back(v);
    return out;
}

std::vector<std::pair<VertexId, VertexId>> PlaneGraph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edges_.size());
    for (VertexId v = 0; v < rot_.size(); ++v) {
        if (!alive_[v]) continue;
        for (VertexId w : rot_[v])
            if (v < w) out.emplace_back(v, w);
    }
    return out;
}

PlaneGraph PlaneGraph::remove_vertices(const std::vector<char>& kill) const {
    PlaneGraph g = *this;
    for (VertexId v = 0; v < g.rot_.size(); ++v) {
        if (v < kill.size() && kill[v]) {
            g.alive_[v] = 0;
            g.rot_[v].clear();
            g.boundary_[v] = 0;
        }
    }
    for (VertexId v = 0; v < g.rot_.size(); ++v) {
        if (!g.alive_[v]) continue;
        auto& r = g.rot_[v];
        r.erase(std::remove_if(r.begin(), r.end(),
                               [&](VertexId w) { return w < kill.size() && kill[w]; }),
                r.end());
    }
    auto strip_ports = [&](std::vector<VertexId>& ports) {
        ports.erase(std::remove_if(ports.begin(), ports.end(),
                                   [&](VertexId w) { return w < kill.size() && kill[w]; }),
                    ports.end());
    };
    strip_ports(g.west_ports);
    strip_ports(g.east_ports);
    g.rebuild_edge_set();
    return g;
}

PlaneGraph PlaneGraph::remove_edges(const std::vector<std::pair<VertexId, VertexId>>& es) const {
    PlaneGraph g = *this;
    std::unordered_set<std::uint64_t> drop;
    for (auto [a, b] : es) drop.insert(edge_key(a, b));
    for (VertexId v = 0; v < g.rot_.size(); ++v) {
        auto& r = g.rot_[v];
        r.erase(std::remove_if(r.begin(), r.end(),
                               [&](VertexId w) { return drop.count(edge_key(v, w)) != 0; }),
                r.end());
    }
    g.rebuild_edge_set();
    return g;
}

bool Face::contains(VertexId v) const {
    return std::find(verts.begin(), verts.end(), v) != verts.end();
}

bool Cycle::contains(VertexId v) const {
    return std::find(verts.begin(), verts.end(), v) != verts.end();
}

std::size_t FaceSet::face_left_of(VertexId from, VertexId to) const {
    auto it = face_of_dart.find(dart_key(from, to));
    if (it == face_of_dart.end()) throw GraphError("dart not in any face");
    return it->second;
}

std::pair<std::size_t, std::size_t> FaceSet::faces_of_edge(VertexId a, VertexId b) const {
    return {face_left_of(a, b), face_left_of(b, a)};
}

FaceSet faces(const PlaneGraph& g) {
    FaceSet fs;
    fs.face_of_dart.reserve(2 * g.edge_count());
    for (VertexId v : g.vertices()) {
        for (VertexId w : g.rotation(v)) {
            const std::uint64_t start = dart_key(v, w);
            if (fs.face_of_dart.count(start)) continue;
            Face f;
            const auto id = static_cast<std::uint32_t>(fs.faces.size());
            VertexId a = v, b = w;
            std::size_t guard = 4 * g.edge_count() + 4;
            while (true) {
                if (guard-- == 0) throw GraphError("face traversal does not close");
                fs.face_of_dart.emplace(dart_key(a, b), id);
                f.verts.push_back(a);
                const auto& r = g.rotation(b);
                auto it = std::find(r.begin(), r.end(), a);
                if (it == r.end()) throw GraphError("rotation system inconsistent");
                const std::size_t idx = static_cast<std::size_t>(it - r.begin());
                const VertexId c = r[(idx + 1) % r.size()];
                a = b;
                b = c;
                if (a == v && b == w) break;
            }
            fs.faces.push_back(std::move(f));
        }
    }
    // The outer face is the unique traversal with negative signed area
    // (inner faces come out counterclockwise under clockwise rotations).
    double min_area = 0.0;
    for (std::size_t i = 0; i < fs.faces.size(); ++i) {
        const double a = signed_area(g, fs.faces[i].verts);
        if (fs.outer_index == kNone || a < min_area) {
            fs.outer_index = i;
            min_area = a;
        }
    }
    if (fs.outer_index == kNone) throw GraphError("graph has no faces");
    fs.faces[fs.outer_index].outer = true;
    return fs;
}

double signed_area(const PlaneGraph& g, std::span<const VertexId> walk) {
    double s = 0.0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const Vec2 p = g.position(walk[i]);
        const Vec2 q = g.position(walk[(i + 1) % walk.size()]);
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

Cycle canonical_cycle(const Cycle& c) {
    if (c.verts.empty()) return c;
    const auto n = c.verts.size();
    auto mn = std::min_element(c.verts.begin(), c.verts.end());
    const std::size_t k = static_cast<std::size_t>(mn - c.verts.begin());
    std::vector<VertexId> fwd(n), bwd(n);
    for (std::size_t i = 0; i < n; ++i) {
        fwd[i] = c.verts[(k + i) % n];
        bwd[i] = c.verts[(k + n - i) % n];
    }
    return Cycle{fwd <= bwd ? std::move(fwd) : std::move(bwd)};
}

bool same_cycle(const Cycle& a, const Cycle& b) {
    return canonical_cycle(a).verts == canonical_cycle(b).verts;
}

bool is_cycle_of(const PlaneGraph& g, const Cycle& c) {
    const auto n = c.verts.size();
    if (n < 3) return false;
    std::unordered_set<VertexId> seen;
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.alive(c.verts[i])) return false;
        if (!seen.insert(c.verts[i]).second) return false;
        if (!g.adjacent(c.verts[i], c.verts[(i + 1) % n])) return false;
    }
    return true;
}

CycleRegion cycle_interior(const PlaneGraph& g, const Cycle& c) {
    return cycle_interior(g, faces(g), c);
}

CycleRegion cycle_interior(const PlaneGraph& g, const FaceSet& fs, const Cycle& c) {
    if (!is_cycle_of(g, c)) throw GraphError("cycle_interior: not a cycle of the graph");
    const auto n = c.verts.size();
    std::unordered_set<std::uint64_t> wall;
    for (std::size_t i = 0; i < n; ++i)
        wall.insert(edge_key(c.verts[i], c.verts[(i + 1) % n]));

    // Dual BFS from the outer face, not crossing cycle edges. Unreached
    // faces are the enclosed ones.
    std::vector<char> outside_face(fs.faces.size(), 0);
    std::queue<std::size_t> q;
    q.push(fs.outer_index);
    outside_face[fs.outer_index] = 1;
    while (!q.empty()) {
        const std::size_t f = q.front();
        q.pop();
        const auto& fv = fs.faces[f].verts;
        for (std::size_t i = 0; i < fv.size(); ++i) {
            const VertexId a = fv[i], b = fv[(i + 1) % fv.size()];
            if (wall.count(edge_key(a, b))) continue;
            const std::size_t other = fs.face_left_of(b, a);
            if (!outside_face[other]) {
                outside_face[other] = 1;
                q.push(other);
            }
        }
    }

    CycleRegion region;
    region.cycle = c;
    std::unordered_set<VertexId> on_cycle(c.verts.begin(), c.verts.end());
    for (std::size_t f = 0; f < fs.faces.size(); ++f)
        if (!outside_face[f]) region.enclosed_faces.push_back(f);

    std::unordered_set<VertexId> interior;
    for (std::size_t f : region.enclosed_faces)
        for (VertexId v : fs.faces[f].verts)
            if (!on_cycle.count(v)) interior.insert(v);
    region.interior_vertices.assign(interior.begin(), interior.end());
    std::sort(region.interior_vertices.begin(), region.interior_vertices.end());

    for (auto [a, b] : g.edges()) {
        if (wall.count(edge_key(a, b))) continue;
        const std::size_t fl = fs.face_left_of(a, b);
        if (!outside_face[fl]) region.interior_edges.emplace_back(a, b);
    }
    return region;
}

std::vector<std::size_t> distances_from(const PlaneGraph& g, std::span<const VertexId> sources) {
    std::vector<std::size_t> dist(g.slot_count(), kUnreachable);
    std::queue<VertexId> q;
    for (VertexId s : sources) {
        if (!g.alive(s)) throw GraphError("distance source not in graph");
        if (dist[s] == kUnreachable) {
            dist[s] = 0;
            q.push(s);
        }
    }
    while (!q.empty()) {
        const VertexId v = q.front();
        q.pop();
        for (VertexId w : g.rotation(v)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

std::size_t graph_distance(const PlaneGraph& g, std::span<const VertexId> a,
                           std::span<const VertexId> b) {
    if (a.empty() || b.empty()) throw GraphError("graph_distance: empty vertex set");
    const auto dist = distances_from(g, a);
    std::size_t best = kUnreachable;
    for (VertexId v : b)
        if (dist[v] != kUnreachable && (best == kUnreachable || dist[v] < best)) best = dist[v];
    return best;
}

std::size_t graph_distance(const PlaneGraph& g, VertexId a, VertexId b) {
    const VertexId as[1] = {a}, bs[1] = {b};
    return graph_distance(g, std::span<const VertexId>(as, 1), std::span<const VertexId>(bs, 1));
}

bool is_connected(const PlaneGraph& g) {
    const auto vs = g.vertices();
    if (vs.empty()) return true;
    const VertexId s[1] = {vs.front()};
    const auto dist = distances_from(g, std::span<const VertexId>(s, 1));
    for (VertexId v : vs)
        if (dist[v] == kUnreachable) return false;
    return true;
}

bool is_two_connected(const PlaneGraph& g) {
    // Tarjan articulation-point scan.
    const auto vs = g.vertices();
    if (vs.size() < 3) return false;
    if (!is_connected(g)) return false;
    std::vector<std::size_t> num(g.slot_count(), kUnreachable), low(g.slot_count(), 0);
    std::size_t counter = 0;
    bool has_cut = false;

    struct Frame {
        VertexId v;
        VertexId parent;
        std::size_t next_child = 0;
        std::size_t child_count = 0;
    };
    std::vector<Frame> stack;
    const VertexId root = vs.front();
    stack.push_back({root, kNone});
    num[root] = low[root] = counter++;
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& r = g.rotation(f.v);
        if (f.next_child < r.size()) {
            const VertexId w = r[f.next_child++];
            if (w == f.parent) continue;
            if (num[w] == kUnreachable) {
                ++f.child_count;
                num[w] = low[w] = counter++;
                stack.push_back({w, f.v});
            } else {
                low[f.v] = std::min(low[f.v], num[w]);
            }
        } else {
            const Frame done = f;
            stack.pop_back();
            if (!stack.empty()) {
                Frame& p = stack.back();
                low[p.v] = std::min(low[p.v], low[done.v]);
                if (p.parent != kNone && low[done.v] >= num[p.v]) has_cut = true;
            } else if (done.child_count > 1) {
                has_cut = true;  // root with two DFS children
            }
        }
    }
    return !has_cut;
}

void validate(const PlaneGraph& g) {
    for (VertexId v : g.vertices()) {
        std::unordered_set<VertexId> seen;
        for (VertexId w : g.rotation(v)) {
            if (w == v) throw GraphError("loop at vertex " + std::to_string(v));
            if (!g.alive(w)) throw GraphError("edge to dead vertex");
            if (!seen.insert(w).second) throw GraphError("parallel edge in rotation");
            const auto& rw = g.rotation(w);
            if (std::count(rw.begin(), rw.end(), v) != 1)
                throw GraphError("rotation inconsistency at edge " + std::to_string(v) + "-" +
                                 std::to_string(w));
        }
    }
    if (!is_connected(g)) throw GraphError("graph not connected");
    const FaceSet fs = faces(g);
    // Euler relation, counting the outer face.
    const long long v = static_cast<long long>(g.vertex_count());
    const long long e = static_cast<long long>(g.edge_count());
    const long long f = static_cast<long long>(fs.faces.size());
    if (v - e + f != 2)
        throw GraphError("Euler relation violated: V=" + std::to_string(v) +
                         " E=" + std::to_string(e) + " F=" + std::to_string(f));
}

}  // namespace planar
