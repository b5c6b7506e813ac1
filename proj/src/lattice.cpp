#include "planar/lattice.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "planar/json_io.hpp"

namespace planar {

namespace {

constexpr double kRoot3Half = 0.8660254037844386;

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

PlaneGraph build_square(std::size_t radius) {
    const long long r = static_cast<long long>(radius);
    const long long side = 2 * r + 1;
    auto id = [&](long long i, long long j) {
        return static_cast<VertexId>((i + r) * side + (j + r));
    };
    std::vector<Vec2> pos(static_cast<std::size_t>(side * side));
    EdgeList edges;
    for (long long i = -r; i <= r; ++i) {
        for (long long j = -r; j <= r; ++j) {
            pos[id(i, j)] = {static_cast<double>(i), static_cast<double>(j)};
            if (i < r) edges.emplace_back(id(i, j), id(i + 1, j));
            if (j < r) edges.emplace_back(id(i, j), id(i, j + 1));
        }
    }
    PlaneGraph g = PlaneGraph::from_points(std::move(pos), edges);
    for (long long i = -r; i <= r; ++i) {
        for (long long j = -r; j <= r; ++j) {
            if (std::abs(i) == r || std::abs(j) == r) g.mark_boundary(id(i, j));
        }
    }
    for (long long j = -r; j <= r; ++j) {
        g.west_ports.push_back(id(-r, j));
        g.east_ports.push_back(id(r, j));
    }
    return g;
}

// Axial coordinates with basis e1=(1,0), e2=(1/2, sqrt(3)/2); neighbours
// +-e1, +-e2, +-(e1-e2). The window is the rhombus |i|,|j| <= r.
PlaneGraph build_triangular(std::size_t radius) {
    const long long r = static_cast<long long>(radius);
    const long long side = 2 * r + 1;
    auto id = [&](long long i, long long j) {
        return static_cast<VertexId>((i + r) * side + (j + r));
    };
    auto inside = [&](long long i, long long j) {
        return i >= -r && i <= r && j >= -r && j <= r;
    };
    std::vector<Vec2> pos(static_cast<std::size_t>(side * side));
    EdgeList edges;
    for (long long i = -r; i <= r; ++i) {
        for (long long j = -r; j <= r; ++j) {
            pos[id(i, j)] = {i + 0.5 * j, kRoot3Half * j};
            const long long di[3] = {1, 0, 1};
            const long long dj[3] = {0, 1, -1};
            for (int k = 0; k < 3; ++k) {
                if (inside(i + di[k], j + dj[k]))
                    edges.emplace_back(id(i, j), id(i + di[k], j + dj[k]));
            }
        }
    }
    PlaneGraph g = PlaneGraph::from_points(std::move(pos), edges);
    for (long long i = -r; i <= r; ++i) {
        for (long long j = -r; j <= r; ++j) {
            if (std::abs(i) == r || std::abs(j) == r) g.mark_boundary(id(i, j));
        }
    }
    for (long long j = -r; j <= r; ++j) {
        g.west_ports.push_back(id(-r, j));
        g.east_ports.push_back(id(r, j));
    }
    return g;
}

PlaneGraph build_hexagonal(std::size_t radius) {
    // Honeycomb patch: hexagon centres on the triangular grid, corner
    // vertices deduplicated by quantized position.
    const long long r = static_cast<long long>(radius);
    std::map<std::pair<long long, long long>, VertexId> corner_ids;
    std::vector<Vec2> pos;
    EdgeList edges;
    const double cr = 1.0 / std::sqrt(3.0);
    auto corner = [&](double cx, double cy, int k) {
        const double ang = (30.0 + 60.0 * k) * M_PI / 180.0;
        const double x = cx + cr * std::cos(ang);
        const double y = cy + cr * std::sin(ang);
        const auto key = std::make_pair(static_cast<long long>(std::llround(x * 1e6)),
                                        static_cast<long long>(std::llround(y * 1e6)));
        auto it = corner_ids.find(key);
        if (it != corner_ids.end()) return it->second;
        const VertexId v = pos.size();
        pos.push_back({x, y});
        corner_ids.emplace(key, v);
        return v;
    };
    std::unordered_set<std::uint64_t> seen;
    for (long long i = -r; i <= r; ++i) {
        for (long long j = -r; j <= r; ++j) {
            const double cx = i + 0.5 * j;
            const double cy = kRoot3Half * j;
            VertexId prev = corner(cx, cy, 5);
            for (int k = 0; k < 6; ++k) {
                const VertexId cur = corner(cx, cy, k);
                const auto key = edge_key(prev, cur);
                if (seen.insert(key).second) edges.emplace_back(prev, cur);
                prev = cur;
            }
        }
    }
    PlaneGraph g = PlaneGraph::from_points(std::move(pos), edges);
    // Boundary = outer face of the patch.
    const FaceSet fs = faces(g);
    for (VertexId v : fs.outer().verts) g.mark_boundary(v);
    double xmin = 1e18, xmax = -1e18;
    for (VertexId v : g.vertices()) {
        xmin = std::min(xmin, g.position(v).x);
        xmax = std::max(xmax, g.position(v).x);
    }
    for (VertexId v : g.boundary_vertices()) {
        if (g.position(v).x <= xmin + 0.75) g.west_ports.push_back(v);
        if (g.position(v).x >= xmax - 0.75) g.east_ports.push_back(v);
    }
    return g;
}

PlaneGraph build_fig2(std::size_t radius, const std::vector<GadgetSpot>& spots) {
    const long long r = static_cast<long long>(radius);
    const long long side = 2 * r + 1;
    auto id = [&](long long i, long long j) {
        return static_cast<VertexId>((i + r) * side + (j + r));
    };
    auto inside = [&](long long i, long long j) {
        return i >= -r && i <= r && j >= -r && j <= r;
    };
    std::vector<Vec2> pos(static_cast<std::size_t>(side * side));
    EdgeList edges;
    for (long long i = -r; i <= r; ++i) {
        for (long long j = -r; j <= r; ++j) {
            pos[id(i, j)] = {i + 0.5 * j, kRoot3Half * j};
            const long long di[3] = {1, 0, 1};
            const long long dj[3] = {0, 1, -1};
            for (int k = 0; k < 3; ++k)
                if (inside(i + di[k], j + dj[k]))
                    edges.emplace_back(id(i, j), id(i + di[k], j + dj[k]));
        }
    }

    // Gadget inside triangle (a,b,c): vertices p (near edge ab) and q (near
    // edge bc) with edges ap, bp, pq, bq, cq. This leaves faces (a,b,p),
    // (p,b,q) and the quadrilateral (a,p,q,c), and turns (a,b,c) into a
    // separating triangle.
    auto add_gadget = [&](VertexId a, VertexId b, VertexId c) {
        const Vec2 pa = pos[a], pb = pos[b], pc = pos[c];
        const Vec2 pp = {0.45 * pa.x + 0.35 * pb.x + 0.20 * pc.x,
                         0.45 * pa.y + 0.35 * pb.y + 0.20 * pc.y};
        const Vec2 pq = {0.20 * pa.x + 0.35 * pb.x + 0.45 * pc.x,
                         0.20 * pa.y + 0.35 * pb.y + 0.45 * pc.y};
        const VertexId p = pos.size();
        pos.push_back(pp);
        const VertexId q = pos.size();
        pos.push_back(pq);
        edges.emplace_back(a, p);
        edges.emplace_back(b, p);
        edges.emplace_back(p, q);
        edges.emplace_back(b, q);
        edges.emplace_back(c, q);
    };

    auto place = [&](long long i, long long j, bool up) {
        if (up) {
            // face {(i,j), (i+1,j), (i,j+1)}
            if (!inside(i, j) || !inside(i + 1, j) || !inside(i, j + 1)) return;
            add_gadget(id(i, j), id(i + 1, j), id(i, j + 1));
        } else {
            // face {(i+1,j), (i+1,j+1), (i,j+1)}
            if (!inside(i + 1, j) || !inside(i + 1, j + 1) || !inside(i, j + 1)) return;
            add_gadget(id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
        }
    };

    if (spots.empty()) {
        for (long long i = -r; i < r; ++i)
            for (long long j = -r; j < r; ++j) {
                place(i, j, true);
                place(i, j, false);
            }
    } else {
        for (const GadgetSpot& s : spots) place(s.i, s.j, s.up);
    }

    PlaneGraph g = PlaneGraph::from_points(std::move(pos), edges);
    for (long long i = -r; i <= r; ++i)
        for (long long j = -r; j <= r; ++j)
            if (std::abs(i) == r || std::abs(j) == r) g.mark_boundary(id(i, j));
    for (long long j = -r; j <= r; ++j) {
        g.west_ports.push_back(id(-r, j));
        g.east_ports.push_back(id(r, j));
    }
    return g;
}

// Finite cut of a two-rail ladder: rails u_i, l_i with rungs u_i-l_i and one
// extra diagonal near the left end. Interior rail vertices have degree 3, so
// at most three vertex-disjoint paths reach the window boundary (the four
// end-column vertices) from any interior vertex.
PlaneGraph build_fig5(std::size_t radius) {
    const long long r = static_cast<long long>(radius);
    const long long cols = 2 * r + 1;
    auto upper = [&](long long i) { return static_cast<VertexId>(i + r); };
    auto lower = [&](long long i) { return static_cast<VertexId>(cols + i + r); };
    std::vector<Vec2> pos(static_cast<std::size_t>(2 * cols));
    EdgeList edges;
    for (long long i = -r; i <= r; ++i) {
        pos[upper(i)] = {static_cast<double>(i), 1.0};
        pos[lower(i)] = {static_cast<double>(i), 0.0};
        edges.emplace_back(upper(i), lower(i));
        if (i < r) {
            edges.emplace_back(upper(i), upper(i + 1));
            edges.emplace_back(lower(i), lower(i + 1));
        }
    }
    edges.emplace_back(upper(-r), lower(-r + 1));
    PlaneGraph g = PlaneGraph::from_points(std::move(pos), edges);
    g.mark_boundary(upper(-r));
    g.mark_boundary(lower(-r));
    g.mark_boundary(upper(r));
    g.mark_boundary(lower(r));
    g.west_ports = {upper(-r), lower(-r)};
    g.east_ports = {upper(r), lower(r)};
    return g;
}

}  // namespace

PlaneGraph lattice_window(const WindowSpec& spec) {
    if (spec.kind != LatticeKind::custom_file && spec.radius < 3)
        throw GraphError("window radius must be at least 3");
    switch (spec.kind) {
        case LatticeKind::square:
            return build_square(spec.radius);
        case LatticeKind::triangular:
            return build_triangular(spec.radius);
        case LatticeKind::hexagonal:
            return build_hexagonal(spec.radius);
        case LatticeKind::fig2_gadget:
            return build_fig2(spec.radius, spec.gadgets);
        case LatticeKind::fig5_strip:
            return build_fig5(spec.radius);
        case LatticeKind::custom_file:
            return load_graph(spec.file);
    }
    throw GraphError("unknown lattice kind");
}

LatticeKind lattice_kind_from_name(const std::string& name) {
    if (name == "square") return LatticeKind::square;
    if (name == "triangular") return LatticeKind::triangular;
    if (name == "hexagonal") return LatticeKind::hexagonal;
    if (name == "fig2") return LatticeKind::fig2_gadget;
    if (name == "fig5") return LatticeKind::fig5_strip;
    if (name == "custom") return LatticeKind::custom_file;
    throw GraphError("unknown lattice name: " + name);
}

std::string lattice_name(LatticeKind k) {
    switch (k) {
        case LatticeKind::square: return "square";
        case LatticeKind::triangular: return "triangular";
        case LatticeKind::hexagonal: return "hexagonal";
        case LatticeKind::fig2_gadget: return "fig2";
        case LatticeKind::fig5_strip: return "fig5";
        case LatticeKind::custom_file: return "custom";
    }
    return "?";
}

}  // namespace planar
