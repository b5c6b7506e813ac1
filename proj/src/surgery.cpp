#include "planar/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace planar {

namespace {

void log(Trace* trace, const std::string& branch, const std::string& detail = "") {
    if (trace) trace->push_back({branch, detail});
}

// Facial graph with the frame's gap marker removed: the target face's hub
// and its spokes, or the shared quad edge (v, z).
struct StrippedView {
    const PlaneGraph& g;
    VertexId hub = kNone;
    VertexId edge_a = kNone, edge_b = kNone;

    bool adjacent(VertexId a, VertexId b) const {
        if (a == hub || b == hub) return false;
        if ((a == edge_a && b == edge_b) || (a == edge_b && b == edge_a)) return false;
        return g.adjacent(a, b);
    }
    std::vector<VertexId> rotation(VertexId v) const {
        std::vector<VertexId> out;
        for (VertexId w : g.rotation(v)) {
            if (w == hub) continue;
            if ((v == edge_a && w == edge_b) || (v == edge_b && w == edge_a)) continue;
            out.push_back(w);
        }
        return out;
    }
};

std::size_t index_of(const std::vector<VertexId>& vs, VertexId v) {
    auto it = std::find(vs.begin(), vs.end(), v);
    if (it == vs.end()) throw SurgeryError("frame-lookup", "vertex missing from sequence");
    return static_cast<std::size_t>(it - vs.begin());
}

double winding_number(const std::vector<Vec2>& poly, Vec2 p) {
    double total = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
        const double a1 = std::atan2(a.y - p.y, a.x - p.x);
        const double a2 = std::atan2(b.y - p.y, b.x - p.x);
        double d = a2 - a1;
        while (d > M_PI) d -= 2 * M_PI;
        while (d < -M_PI) d += 2 * M_PI;
        total += d;
    }
    return total / (2 * M_PI);
}

}  // namespace

SurgeryHost make_surgery_host(const PlaneGraph& window) {
    if (!separating_triangles(window).empty())
        throw SurgeryError("host-triangles",
                           "window has separating triangles; empty them first");
    SurgeryHost host{window, matching_graph(window), facial_delta(window)};
    // The rerouting relies on the emptied facial graph being a triangulation
    // on its inner faces.
    const FaceSet fs = faces(host.fg.graph());
    for (std::size_t f = 0; f < fs.faces.size(); ++f)
        if (f != fs.outer_index && fs.faces[f].size() != 3)
            throw SurgeryError("host-triangulation",
                               "emptied facial graph is not a triangulation");
    return host;
}

// ---------------------------------------------------------------------------
// Frame construction

namespace {

struct FrameInput {
    VertexId v;
    VertexId hub;          // kNone in quad mode
    VertexId quad_target;  // z in quad mode
    Cycle rim;
};

SurgeryContext build_frame(const SurgeryHost& host, const PathSeq& nu_hat,
                           const FrameInput& in) {
    const PlaneGraph& gg = host.fg.graph();
    SurgeryContext ctx;
    ctx.nu_hat = nu_hat;
    ctx.hub = in.hub;
    ctx.quad_target = in.quad_target;
    ctx.rim = in.rim;
    ctx.v = in.v;

    const auto& pv = ctx.nu_hat.verts;
    const std::size_t k = index_of(pv, in.v);
    if (k == 0 || k + 1 == pv.size())
        throw SurgeryError("margin", "pivot vertex is a path endpoint");
    ctx.u = pv[k - 1];
    ctx.w = pv[k + 1];
    ctx.u_index = k - 1;

    std::unordered_set<VertexId> rim_set(in.rim.verts.begin(), in.rim.verts.end());
    if (rim_set.count(ctx.u))
        throw SurgeryError("frame-orientation", "frame not normalized: u on the rim");
    ctx.frame_case =
        rim_set.count(ctx.w) ? FrameCase::boundary_edge : FrameCase::vertex_only;

    // No frame vertex may sit on the window boundary: the splice must stay
    // interior to the window.
    auto margin_check = [&](VertexId x) {
        if (gg.on_boundary(x))
            throw SurgeryError("margin", "frame reaches the window boundary");
    };
    for (VertexId x : in.rim.verts) margin_check(x);

    const VertexId marker = in.hub != kNone ? in.hub : in.quad_target;

    // Fan: the arc of v's rotation from u to w that crosses the gap marker.
    const auto& rot = gg.rotation(ctx.v);
    const std::size_t iu = index_of(rot, ctx.u);
    const std::size_t iw = index_of(rot, ctx.w);
    const std::size_t im = index_of(rot, marker);
    auto arc_contains = [&](std::size_t from, std::size_t to, std::size_t q) {
        for (std::size_t i = (from + 1) % rot.size(); i != to; i = (i + 1) % rot.size())
            if (i == q) return true;
        return false;
    };
    ctx.fan.clear();
    ctx.fan_rim_low = 0;
    if (arc_contains(iu, iw, im)) {
        for (std::size_t i = (iu + 1) % rot.size(); i != iw; i = (i + 1) % rot.size()) {
            if (i == im) {
                ctx.fan_rim_low = ctx.fan.size();
                continue;
            }
            ctx.fan.push_back(rot[i]);
        }
    } else if (arc_contains(iw, iu, im)) {
        std::vector<VertexId> tmp;
        std::size_t gap = kNone;
        for (std::size_t i = (iw + 1) % rot.size(); i != iu; i = (i + 1) % rot.size()) {
            if (i == im) {
                gap = tmp.size();
                continue;
            }
            tmp.push_back(rot[i]);
        }
        if (gap == kNone) throw SurgeryError("frame-fan", "marker lost");
        std::reverse(tmp.begin(), tmp.end());
        ctx.fan = std::move(tmp);
        ctx.fan_rim_low = ctx.fan.size() - gap;
    } else {
        throw SurgeryError("frame-fan", "gap marker not between u and w");
    }
    const std::size_t r = ctx.fan.size();
    const std::size_t N = ctx.fan_rim_low;  // fan[N-1] = y_N (1-based)
    if (ctx.frame_case == FrameCase::vertex_only) {
        if (r < 2 || N == 0 || N >= r)
            throw SurgeryError("frame-fan", "rim neighbours not inside the fan");
    } else {
        if (r == 0 || N != r)
            throw SurgeryError("frame-fan", "edge frame must end at the gap");
    }
    for (VertexId y : ctx.fan) margin_check(y);

    const StrippedView sv{gg, in.hub, in.hub == kNone ? in.v : kNone,
                          in.hub == kNone ? in.quad_target : kNone};

    // Chain structure over s_0=u, s_i=y_i, s_{r+1}=w: adjacency only between
    // consecutive entries, and consecutive entries on each side of the gap
    // must be adjacent.
    std::vector<VertexId> s;
    s.push_back(ctx.u);
    s.insert(s.end(), ctx.fan.begin(), ctx.fan.end());
    s.push_back(ctx.w);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const bool adj = sv.adjacent(s[i], s[j]);
            if (adj && j - i != 1)
                throw SurgeryError("frame-adjacency", "fan vertices adjacent out of order");
            const bool same_side = j <= N || i >= N + 1;
            if (j == i + 1 && same_side && !adj)
                throw SurgeryError("frame-adjacency", "fan chain broken");
        }
    }
    // Rim membership restricted to the two gap flanks.
    for (std::size_t i = 0; i < r; ++i) {
        if (rim_set.count(ctx.fan[i]) && !(i + 1 == N || i + 1 == N + 1))
            throw SurgeryError("frame-rim", "fan vertex on the rim away from the gap");
    }
    // No fan vertex lies on the path.
    std::unordered_set<VertexId> on_path(pv.begin(), pv.end());
    for (VertexId y : ctx.fan)
        if (on_path.count(y))
            throw SurgeryError("frame-tails", "fan vertex lies on the path");

    // Second layer: for each fan vertex, the arc of its rotation away from
    // the frame anchors, ordered from the u-side flank toward the w side.
    ctx.z_vertex.clear();
    ctx.z_sector.clear();
    for (std::size_t i = 1; i <= r; ++i) {
        const VertexId yi = ctx.fan[i - 1];
        const VertexId flank_l = i == 1 ? ctx.u : ctx.fan[i - 2];
        std::unordered_set<VertexId> excluded{ctx.u, ctx.v, ctx.w};
        if (i >= 2) excluded.insert(ctx.fan[i - 2]);
        if (i < r) excluded.insert(ctx.fan[i]);

        const auto ry = sv.rotation(yi);
        const std::size_t m = ry.size();
        std::vector<char> ex(m, 0);
        std::size_t ex_count = 0;
        for (std::size_t t = 0; t < m; ++t)
            if (excluded.count(ry[t])) {
                ex[t] = 1;
                ++ex_count;
            }
        if (ex_count == 0) throw SurgeryError("frame-sector", "sector has no anchors");
        if (ex_count == m) continue;  // no second-layer vertices here

        std::size_t start = kNone;
        for (std::size_t t = 0; t < m; ++t) {
            if (!ex[t] && ex[(t + m - 1) % m]) {
                if (start != kNone)
                    throw SurgeryError("frame-sector", "sector arc not contiguous");
                start = t;
            }
        }
        if (start == kNone) throw SurgeryError("frame-sector", "sector arc not found");
        std::vector<VertexId> arc;
        for (std::size_t t = start; !ex[t]; t = (t + 1) % m) arc.push_back(ry[t]);

        const VertexId before = ry[(start + m - 1) % m];
        const VertexId after = ry[(start + arc.size()) % m];
        if (before == flank_l) {
            // already oriented away from the left flank
        } else if (after == flank_l) {
            std::reverse(arc.begin(), arc.end());
        } else if (after == ctx.v) {
            // gap-side sector: the rim neighbour must come first
            std::reverse(arc.begin(), arc.end());
        } else if (before == ctx.v) {
            // oriented correctly: starts at the rim neighbour beside v
        } else {
            throw SurgeryError("frame-sector", "sector arc orientation ambiguous");
        }
        for (VertexId z : arc) {
            margin_check(z);
            ctx.z_vertex.push_back(z);
            ctx.z_sector.push_back(i);
        }
    }
    ctx.label_count = ctx.z_vertex.size();

    // consecutive labels inside a sector are adjacent; sector hand-offs away
    // from the gap repeat the shared vertex
    for (std::size_t t = 0; t + 1 < ctx.label_count; ++t) {
        if (ctx.z_sector[t] == ctx.z_sector[t + 1]) {
            if (!sv.adjacent(ctx.z_vertex[t], ctx.z_vertex[t + 1]))
                throw SurgeryError("layer-chain", "second layer not chained in sector");
        } else if (ctx.z_sector[t + 1] == ctx.z_sector[t] + 1 && ctx.z_sector[t] != N) {
            if (ctx.z_vertex[t] != ctx.z_vertex[t + 1])
                throw SurgeryError("layer-chain", "sector hand-off mismatch");
        }
    }

    // P / P+1: last label of sector N, first label of sector N+1.
    ctx.p_low = kNone;
    ctx.p_high = kNone;
    for (std::size_t t = 0; t < ctx.label_count; ++t) {
        if (ctx.z_sector[t] <= N) ctx.p_low = t;
        if (ctx.z_sector[t] >= N + 1 && ctx.p_high == kNone) ctx.p_high = t;
    }
    if (ctx.p_low == kNone)
        throw SurgeryError("frame-rim", "no second-layer vertex beside the gap");
    if (!rim_set.count(ctx.z_vertex[ctx.p_low]))
        throw SurgeryError("frame-rim", "z_P is not on the rim");
    if (ctx.frame_case == FrameCase::vertex_only) {
        if (ctx.p_high == kNone || !rim_set.count(ctx.z_vertex[ctx.p_high]))
            throw SurgeryError("frame-rim", "z_{P+1} is not on the rim");
    }
    return ctx;
}

SurgeryContext mirror_context(const SurgeryHost& host, const SurgeryContext& ctx) {
    const FrameInput in{ctx.v, ctx.hub, ctx.quad_target, ctx.rim};
    SurgeryContext mir = build_frame(host, ctx.nu_hat.reversed(), in);
    label_vertices(host, mir);
    return mir;
}

}  // namespace

SurgeryContext build_context(const SurgeryHost& host, const PathSeq& nu_hat, VertexId v,
                             std::size_t face_id) {
    const VertexId hub = host.fg.site_of_face(face_id);
    if (hub == kNone) throw SurgeryError("frame-face", "target face has no facial site");
    if (nu_hat.contains(hub))
        throw SurgeryError("frame-pivot", "path already meets the facial site");
    const Cycle rim{host.fg.graph().rotation(hub)};
    const FrameInput in{v, hub, kNone, rim};

    std::unordered_set<VertexId> rim_set(rim.verts.begin(), rim.verts.end());
    const auto& pv = nu_hat.verts;
    const std::size_t k = index_of(pv, v);
    if (k == 0 || k + 1 == pv.size())
        throw SurgeryError("margin", "pivot vertex is a path endpoint");
    SurgeryContext ctx = rim_set.count(pv[k - 1]) ? build_frame(host, nu_hat.reversed(), in)
                                                  : build_frame(host, nu_hat, in);
    label_vertices(host, ctx);
    return ctx;
}

void label_vertices(const SurgeryHost& host, SurgeryContext& ctx) {
    const auto& pv = ctx.nu_hat.verts;
    const std::size_t k = ctx.u_index + 1;  // index of v
    std::unordered_set<VertexId> u_tail(pv.begin(),
                                        pv.begin() + static_cast<std::ptrdiff_t>(k));
    std::unordered_set<VertexId> w_tail(pv.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                                        pv.end());

    ctx.mark.assign(ctx.label_count, SurgeryContext::Mark::Q);
    for (std::size_t t = 0; t < ctx.label_count; ++t) {
        if (u_tail.count(ctx.z_vertex[t])) ctx.mark[t] = SurgeryContext::Mark::U;
        else if (w_tail.count(ctx.z_vertex[t])) ctx.mark[t] = SurgeryContext::Mark::W;
    }

    for (VertexId x : ctx.rim.verts) {
        if (x == ctx.v || x == ctx.w) continue;
        if (u_tail.count(x) || w_tail.count(x))
            throw SurgeryError("rim-label", "rim vertex lies on a path tail");
    }

    ctx.rho = 0;
    ctx.lambda = ctx.label_count + 1;
    for (std::size_t t = 0; t < ctx.label_count; ++t) {
        if (ctx.mark[t] == SurgeryContext::Mark::U) ctx.rho = t + 1;
        if (ctx.mark[t] == SurgeryContext::Mark::W && ctx.lambda == ctx.label_count + 1)
            ctx.lambda = t + 1;
    }
    if (ctx.rho >= ctx.lambda)
        throw SurgeryError("label-order", "rightmost U at or beyond leftmost W");

    // Winding guard: the loop made of the tail from z_rho to u plus the
    // edges u-v, v-y_alpha, y_alpha-z_rho is a simple closed curve whose
    // closure must miss the whole downstream tail. (Were it oriented the
    // other way it would have to cross the downstream tail.)
    if (ctx.rho >= 1) {
        const std::size_t t = ctx.rho - 1;
        const VertexId zr = ctx.z_vertex[t];
        const VertexId y_alpha = ctx.fan[ctx.z_sector[t] - 1];
        const std::size_t zi = index_of(pv, zr);
        if (zi > ctx.u_index)
            throw SurgeryError("label-order", "rightmost U label not on the upstream tail");
        std::vector<Vec2> poly;
        const PlaneGraph& gg = host.fg.graph();
        for (std::size_t i = zi; i <= ctx.u_index; ++i) poly.push_back(gg.position(pv[i]));
        poly.push_back(gg.position(ctx.v));
        if (y_alpha != zr) poly.push_back(gg.position(y_alpha));
        for (std::size_t i = k + 1; i < pv.size(); ++i) {
            if (std::lround(winding_number(poly, gg.position(pv[i]))) != 0)
                throw SurgeryError("winding-closure",
                                   "downstream tail inside the upstream loop");
        }
    }
}

// ---------------------------------------------------------------------------
// Splice assembly

namespace {

struct RouteResult {
    PathSeq matching_path;
    PathSeq facial_path;
    bool has_diagonal = false;
};

RouteResult finish_walk(const SurgeryHost& host, std::vector<VertexId> walk, PathClass cls) {
    PathSeq p{std::move(walk), cls};
    p = erase_loops(std::move(p));
    const PlaneGraph& gg = host.fg.graph();
    for (std::size_t i = 0; i + 1 < p.verts.size(); ++i)
        if (!gg.adjacent(p.verts[i], p.verts[i + 1]))
            throw SurgeryError("splice-adjacency", "assembled walk has a gap");
    p = remove_oxbows(host.fg, std::move(p));
    PathSeq nu_bar = project_to_matching(host.fg, host.mg, p);
    nu_bar.cls = cls;
    RouteResult rr;
    rr.facial_path = lift_to_facial(host.fg, host.mg, nu_bar);
    rr.facial_path.cls = cls;
    for (std::size_t i = 0; i + 1 < nu_bar.verts.size(); ++i)
        if (host.mg.is_diagonal_pair(nu_bar.verts[i], nu_bar.verts[i + 1]))
            rr.has_diagonal = true;
    rr.matching_path = std::move(nu_bar);
    return rr;
}

std::vector<VertexId> prefix_through(const std::vector<VertexId>& pv, std::size_t idx) {
    return std::vector<VertexId>(pv.begin(),
                                 pv.begin() + static_cast<std::ptrdiff_t>(idx) + 1);
}
std::vector<VertexId> suffix_from(const std::vector<VertexId>& pv, std::size_t idx) {
    return std::vector<VertexId>(pv.begin() + static_cast<std::ptrdiff_t>(idx), pv.end());
}
void append(std::vector<VertexId>& walk, const std::vector<VertexId>& tail) {
    walk.insert(walk.end(), tail.begin(), tail.end());
}

// fan slice y_a..y_b, 1-based inclusive
std::vector<VertexId> fan_run(const SurgeryContext& ctx, std::size_t a, std::size_t b) {
    std::vector<VertexId> out;
    for (std::size_t i = a; i <= b && b >= 1; ++i) out.push_back(ctx.fan[i - 1]);
    return out;
}

VertexId label_vertex(const SurgeryContext& ctx, std::size_t label) {
    return ctx.z_vertex[label - 1];
}

// label run as vertices, inclusive both ends, ascending when a <= b and
// descending when a > b
std::vector<VertexId> label_run(const SurgeryContext& ctx, std::size_t a, std::size_t b) {
    std::vector<VertexId> out;
    if (a == 0 || b == 0 || a > ctx.label_count || b > ctx.label_count) return out;
    if (a <= b) {
        for (std::size_t t = a; t <= b; ++t) out.push_back(label_vertex(ctx, t));
    } else {
        for (std::size_t t = a;; --t) {
            out.push_back(label_vertex(ctx, t));
            if (t == b) break;
        }
    }
    return out;
}

std::vector<VertexId> gap_step(const SurgeryContext& ctx) {
    if (ctx.hub != kNone) return {ctx.hub};
    return {};
}

// Shared-face bridge: vertices to insert between x and t when they are not
// adjacent in the emptied facial graph but lie in a common face closure.
std::vector<VertexId> bridge(const SurgeryHost& host, VertexId x, VertexId t) {
    if (host.fg.graph().adjacent(x, t)) return {};
    for (std::size_t f : host.fg.incident_base_faces(x)) {
        const auto& ft = host.fg.incident_base_faces(t);
        if (std::find(ft.begin(), ft.end(), f) == ft.end()) continue;
        const VertexId site = host.fg.site_of_face(f);
        if (site != kNone) return {site};
    }
    throw SurgeryError("bridge", "no shared face with a live site");
}

SurgeryOutcome outcome_from(const SurgeryHost& host, const SurgeryContext& ctx,
                            RouteResult rr, Trace* trace, const char* branch) {
    std::ostringstream detail;
    detail << "pivot " << ctx.v << ", spliced";
    for (VertexId x : rr.matching_path.verts)
        if (!ctx.nu_hat.contains(x)) detail << ' ' << x;
    log(trace, branch, detail.str());
    SurgeryOutcome out;
    if (rr.has_diagonal) {
        out.mode = RerouteMode::diagonal_traversed;
    } else if (ctx.quad_target != kNone && rr.matching_path.contains(ctx.quad_target)) {
        out.mode = RerouteMode::reached_target_vertex;
    } else if (ctx.quad_target != kNone) {
        throw SurgeryError("outcome", "reroute produced neither a diagonal nor the target");
    } else {
        out.mode = RerouteMode::reached_cycle;
    }
    out.result = std::move(rr.matching_path);
    out.branches.push_back(branch);
    (void)host;
    return out;
}

SurgeryOutcome case_A(const SurgeryHost& host, const SurgeryContext& ctx, Trace* trace,
                      const char* name) {
    const auto& pv = ctx.nu_hat.verts;
    if (ctx.rho == 0) throw SurgeryError("case-A", "case A needs a U label");
    const std::size_t P1 = ctx.p_high + 1;  // 1-based label of z_{P+1}
    const std::size_t zi = index_of(pv, label_vertex(ctx, ctx.rho));
    std::vector<VertexId> walk = prefix_through(pv, zi);

    if (ctx.rho > P1) {
        // run z_{rho-1} .. z_{P+1}, trimmed at the rim hit of greatest label
        std::unordered_set<VertexId> rim_set(ctx.rim.verts.begin(), ctx.rim.verts.end());
        std::size_t stop = P1;
        for (std::size_t t = ctx.rho - 1; t > P1; --t) {
            if (rim_set.count(label_vertex(ctx, t)) &&
                label_vertex(ctx, t) != label_vertex(ctx, P1)) {
                stop = t;
                break;
            }
        }
        append(walk, label_run(ctx, ctx.rho - 1, stop));
    }
    append(walk, gap_step(ctx));
    walk.push_back(ctx.v);
    append(walk, suffix_from(pv, ctx.u_index + 2));
    return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace, name);
}

SurgeryOutcome case_C(const SurgeryHost& host, const SurgeryContext& ctx, Trace* trace,
                      bool rho_side) {
    const auto& pv = ctx.nu_hat.verts;
    std::vector<VertexId> walk;
    if (rho_side) {
        walk = prefix_through(pv, index_of(pv, label_vertex(ctx, ctx.rho)));
        append(walk, gap_step(ctx));
        walk.push_back(ctx.v);
        append(walk, suffix_from(pv, ctx.u_index + 2));
    } else {
        walk = prefix_through(pv, ctx.u_index);
        walk.push_back(ctx.v);
        append(walk, gap_step(ctx));
        append(walk, suffix_from(pv, index_of(pv, label_vertex(ctx, ctx.lambda))));
    }
    return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace, "C");
}

SurgeryOutcome case_D_plain(const SurgeryHost& host, const SurgeryContext& ctx,
                            Trace* trace) {
    const auto& pv = ctx.nu_hat.verts;
    const std::size_t P = ctx.p_low + 1;
    const std::size_t P1 = ctx.p_high + 1;
    const std::size_t N = ctx.fan_rim_low;

    // a facial site appearing as an image strictly inside both half-layers
    std::size_t best_i = 0, best_j = 0;
    for (std::size_t i = ctx.rho + 1; i < P && best_i == 0; ++i) {
        if (!host.fg.is_site(label_vertex(ctx, i))) continue;
        for (std::size_t j = ctx.lambda - 1; j > P1; --j) {
            if (label_vertex(ctx, j) == label_vertex(ctx, i)) {
                best_i = i;
                best_j = j;
                break;
            }
        }
    }
    (void)best_j;

    if (best_i == 0) {
        // D.1: splice both fan runs around the gap
        const std::size_t alpha = ctx.rho == 0 ? 1 : ctx.z_sector[ctx.rho - 1];
        const std::size_t gamma = ctx.lambda == ctx.label_count + 1
                                      ? ctx.fan.size()
                                      : ctx.z_sector[ctx.lambda - 1];
        std::vector<VertexId> walk =
            ctx.rho == 0
                ? prefix_through(pv, ctx.u_index)
                : prefix_through(pv, index_of(pv, label_vertex(ctx, ctx.rho)));
        append(walk, fan_run(ctx, alpha, N));
        append(walk, gap_step(ctx));
        append(walk, fan_run(ctx, N + 1, gamma));
        if (ctx.lambda == ctx.label_count + 1) {
            append(walk, suffix_from(pv, ctx.u_index + 2));
        } else {
            append(walk, suffix_from(pv, index_of(pv, label_vertex(ctx, ctx.lambda))));
        }
        return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace,
                            "D.1");
    }

    // D.2: route along the second layer through the shared site's face
    const VertexId z = label_vertex(ctx, best_i);
    const std::size_t face_j = host.fg.face_of_site(z);
    const auto& fj = host.fg.base_faces().faces[face_j].verts;
    std::unordered_set<VertexId> on_j(fj.begin(), fj.end());
    const std::size_t k = ctx.u_index + 1;
    std::size_t ux = kNone, wx = kNone;
    for (std::size_t i = 0; i < pv.size(); ++i) {
        if (!on_j.count(pv[i])) continue;
        if (i <= ctx.u_index && ux == kNone) ux = i;  // earliest on the u tail
        if (i > k) wx = i;
    }
    if (ux != kNone && wx != kNone)
        throw SurgeryError("case-D2", "both tails meet the image face");
    if (wx != kNone) return case_D_plain(host, mirror_context(host, ctx), trace);

    std::vector<VertexId> walk;
    const char* branch;
    if (ux != kNone) {
        branch = "D.2.i";
        if (ctx.rho >= 1 && ux > index_of(pv, label_vertex(ctx, ctx.rho)))
            throw SurgeryError("case-D2", "image face met beyond the truncated tail");
        walk = prefix_through(pv, ux);
        walk.push_back(z);
        append(walk, label_run(ctx, best_i + 1, P));
    } else {
        branch = "D.2.ii";
        walk = ctx.rho == 0
                   ? prefix_through(pv, ctx.u_index)
                   : prefix_through(pv, index_of(pv, label_vertex(ctx, ctx.rho)));
        append(walk, label_run(ctx, ctx.rho + 1, P));
    }
    append(walk, gap_step(ctx));
    walk.push_back(ctx.v);
    append(walk, suffix_from(pv, ctx.u_index + 2));
    return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace, branch);
}

SurgeryOutcome case_D_quad(const SurgeryHost& host, const SurgeryContext& ctx,
                           Trace* trace) {
    const auto& pv = ctx.nu_hat.verts;
    const VertexId z = ctx.quad_target;
    const std::size_t N = ctx.fan_rim_low;

    const std::size_t u_cut =
        ctx.rho == 0 ? ctx.u_index : index_of(pv, label_vertex(ctx, ctx.rho));
    const std::size_t w_cut = ctx.lambda == ctx.label_count + 1
                                  ? ctx.u_index + 2
                                  : index_of(pv, label_vertex(ctx, ctx.lambda));
    std::vector<VertexId> u_tail = prefix_through(pv, u_cut);
    std::vector<VertexId> w_tail = suffix_from(pv, w_cut);

    std::size_t xu = kNone, yw = kNone;
    for (std::size_t i = 0; i < u_tail.size() && xu == kNone; ++i)
        if (coface(host.fg, u_tail[i], z)) xu = i;
    for (std::size_t i = 0; i < w_tail.size(); ++i)
        if (coface(host.fg, w_tail[i], z)) yw = i;

    const std::size_t alpha = ctx.rho == 0 ? 1 : ctx.z_sector[ctx.rho - 1];
    const std::size_t gamma = ctx.lambda == ctx.label_count + 1
                                  ? ctx.fan.size()
                                  : ctx.z_sector[ctx.lambda - 1];

    std::vector<VertexId> walk;
    const char* branch;
    if (xu == kNone && yw == kNone) {
        branch = "8.1-1";
        walk = u_tail;
        append(walk, fan_run(ctx, alpha, N));
        walk.push_back(z);
        append(walk, fan_run(ctx, N + 1, gamma));
        append(walk, w_tail);
    } else if (xu != kNone && yw == kNone) {
        branch = "8.1-2";
        walk = prefix_through(u_tail, xu);
        append(walk, bridge(host, u_tail[xu], z));
        walk.push_back(z);
        append(walk, fan_run(ctx, N + 1, gamma));
        append(walk, w_tail);
    } else if (xu == kNone && yw != kNone) {
        branch = "8.1-2";
        walk = u_tail;
        append(walk, fan_run(ctx, alpha, N));
        walk.push_back(z);
        append(walk, bridge(host, z, w_tail[yw]));
        append(walk, suffix_from(w_tail, yw));
    } else {
        branch = "8.1-3";
        walk = prefix_through(u_tail, xu);
        append(walk, bridge(host, u_tail[xu], z));
        walk.push_back(z);
        append(walk, bridge(host, z, w_tail[yw]));
        append(walk, suffix_from(w_tail, yw));
    }
    return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace, branch);
}

SurgeryOutcome case_F_quad(const SurgeryHost& host, const SurgeryContext& ctx,
                           Trace* trace) {
    const auto& pv = ctx.nu_hat.verts;
    const VertexId z = ctx.quad_target;
    const std::size_t N = ctx.fan_rim_low;
    const std::size_t alpha = ctx.rho == 0 ? 1 : ctx.z_sector[ctx.rho - 1];
    const std::size_t k = ctx.u_index + 1;

    const std::size_t u_cut =
        ctx.rho == 0 ? ctx.u_index : index_of(pv, label_vertex(ctx, ctx.rho));
    std::vector<VertexId> u_tail = prefix_through(pv, u_cut);
    std::vector<VertexId> w_tail = suffix_from(pv, k + 1);  // from w on

    std::size_t xu = kNone, yw = kNone;
    for (std::size_t i = 0; i < u_tail.size() && xu == kNone; ++i)
        if (coface(host.fg, u_tail[i], z)) xu = i;
    for (std::size_t i = 1; i < w_tail.size(); ++i)  // exclude w itself
        if (coface(host.fg, w_tail[i], z)) yw = i;

    std::vector<VertexId> walk;
    const char* branch;
    if (xu == kNone && yw == kNone) {
        // the fan run must stay clear of the downstream tail; if it does
        // not, detour into the violating face's site instead
        std::size_t bad_i = kNone, bad_x = kNone;
        for (std::size_t i = alpha; i <= N && bad_i == kNone; ++i) {
            for (std::size_t t = w_tail.size(); t-- > 0;) {
                if (coface(host.fg, ctx.fan[i - 1], w_tail[t])) {
                    bad_i = i;
                    bad_x = t;
                    break;
                }
            }
        }
        if (bad_i == kNone) {
            branch = "8.2-1";
            walk = u_tail;
            append(walk, fan_run(ctx, alpha, N));
            walk.push_back(z);
            append(walk, w_tail);
        } else {
            branch = "8.2-1r";
            walk = u_tail;
            append(walk, fan_run(ctx, alpha, bad_i));
            append(walk, bridge(host, ctx.fan[bad_i - 1], w_tail[bad_x]));
            append(walk, suffix_from(w_tail, bad_x));
        }
    } else if (xu != kNone && yw == kNone) {
        branch = "8.2-2";
        walk = prefix_through(u_tail, xu);
        append(walk, bridge(host, u_tail[xu], z));
        walk.push_back(z);
        append(walk, w_tail);
    } else if (xu == kNone && yw != kNone) {
        branch = "8.2-2";
        walk = prefix_through(pv, k);  // ends at v
        walk.push_back(z);
        append(walk, bridge(host, z, w_tail[yw]));
        append(walk, suffix_from(w_tail, yw));
    } else {
        branch = "8.2-3";
        walk = prefix_through(u_tail, xu);
        append(walk, bridge(host, u_tail[xu], z));
        walk.push_back(z);
        append(walk, bridge(host, z, w_tail[yw]));
        append(walk, suffix_from(w_tail, yw));
    }
    return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace, branch);
}

// both quad flanks on the path: replace v by z
SurgeryOutcome case_both_edges(const SurgeryHost& host, const SurgeryContext& ctx,
                               Trace* trace) {
    const auto& pv = ctx.nu_hat.verts;
    const VertexId z = ctx.quad_target;
    const std::size_t k = ctx.u_index + 1;

    std::size_t xu = kNone, yw = kNone;
    for (std::size_t i = 0; i < ctx.u_index && xu == kNone; ++i)  // exclude u
        if (coface(host.fg, pv[i], z)) xu = i;
    for (std::size_t i = k + 2; i < pv.size(); ++i)  // exclude w
        if (coface(host.fg, pv[i], z)) yw = i;

    std::vector<VertexId> walk;
    const char* branch;
    if (xu == kNone && yw == kNone) {
        branch = "8.3-1";
        walk = prefix_through(pv, ctx.u_index);
        walk.push_back(z);
        append(walk, suffix_from(pv, k + 1));
    } else if (xu != kNone && yw == kNone) {
        branch = "8.3-2";
        walk = prefix_through(pv, xu);
        append(walk, bridge(host, pv[xu], z));
        walk.push_back(z);
        append(walk, suffix_from(pv, k + 1));
    } else if (xu == kNone && yw != kNone) {
        branch = "8.3-2";
        walk = prefix_through(pv, ctx.u_index);
        walk.push_back(z);
        append(walk, bridge(host, z, pv[yw]));
        append(walk, suffix_from(pv, yw));
    } else {
        branch = "8.3-3";
        walk = prefix_through(pv, xu);
        append(walk, bridge(host, pv[xu], z));
        walk.push_back(z);
        append(walk, bridge(host, z, pv[yw]));
        append(walk, suffix_from(pv, yw));
    }
    return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace, branch);
}

}  // namespace

SurgeryOutcome reroute_case_vertex(const SurgeryHost& host, const SurgeryContext& ctx,
                                   Trace* trace) {
    const std::size_t P = ctx.p_low + 1;    // 1-based label of z_P
    const std::size_t P1 = ctx.p_high + 1;  // 1-based label of z_{P+1}
    if (ctx.rho >= P1) return case_A(host, ctx, trace, "A");
    if (ctx.lambda <= P) return case_A(host, mirror_context(host, ctx), trace, "B");
    if (ctx.rho == P) return case_C(host, ctx, trace, true);
    if (ctx.lambda == P1) return case_C(host, ctx, trace, false);
    return ctx.quad_mode() ? case_D_quad(host, ctx, trace)
                           : case_D_plain(host, ctx, trace);
}

SurgeryOutcome reroute_case_edge(const SurgeryHost& host, const SurgeryContext& ctx,
                                 Trace* trace) {
    const auto& pv = ctx.nu_hat.verts;
    const std::size_t P = ctx.p_low + 1;

    if (ctx.lambda <= ctx.label_count) {
        // E: shortcut the downstream tail through the second layer
        std::vector<VertexId> walk = prefix_through(pv, ctx.u_index);
        walk.push_back(ctx.v);
        append(walk, gap_step(ctx));
        append(walk, label_run(ctx, P, ctx.lambda));
        append(walk, suffix_from(pv, index_of(pv, label_vertex(ctx, ctx.lambda))));
        return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace, "E");
    }

    if (ctx.quad_mode()) return case_F_quad(host, ctx, trace);

    // F: drop v, reach the gap along the fan
    const std::size_t N = ctx.fan_rim_low;
    const std::size_t alpha = ctx.rho == 0 ? 1 : ctx.z_sector[ctx.rho - 1];
    std::vector<VertexId> walk =
        ctx.rho == 0 ? prefix_through(pv, ctx.u_index)
                     : prefix_through(pv, index_of(pv, label_vertex(ctx, ctx.rho)));
    append(walk, fan_run(ctx, alpha, N));
    append(walk, gap_step(ctx));
    append(walk, suffix_from(pv, ctx.u_index + 2));  // starts at w
    return outcome_from(host, ctx, finish_walk(host, walk, ctx.nu_hat.cls), trace, "F");
}

// ---------------------------------------------------------------------------
// Public operations

namespace {

std::size_t pick_pivot(const PathSeq& nu_hat, const std::unordered_set<VertexId>& rim_set) {
    for (std::size_t i = 0; i < nu_hat.verts.size(); ++i)
        if (rim_set.count(nu_hat.verts[i])) return i;
    return kNone;
}

void edits_and_radius(const SurgeryHost& host, const PathSeq& before, const PathSeq& after,
                      const std::vector<VertexId>& pivot, SurgeryOutcome& out) {
    std::unordered_set<std::uint64_t> ea, eb;
    for (std::size_t i = 0; i + 1 < before.verts.size(); ++i)
        eb.insert(edge_key(before.verts[i], before.verts[i + 1]));
    for (std::size_t i = 0; i + 1 < after.verts.size(); ++i)
        ea.insert(edge_key(after.verts[i], after.verts[i + 1]));
    std::vector<VertexId> touched;
    out.edit_count = 0;
    auto account = [&](const std::unordered_set<std::uint64_t>& xs,
                       const std::unordered_set<std::uint64_t>& ys) {
        for (std::uint64_t key : xs) {
            if (!ys.count(key)) {
                ++out.edit_count;
                touched.push_back(static_cast<VertexId>(key >> 32));
                touched.push_back(static_cast<VertexId>(key & 0xffffffffu));
            }
        }
    };
    account(ea, eb);
    account(eb, ea);
    out.edit_radius = 0;
    std::vector<VertexId> anchors;
    for (VertexId v : pivot)
        if (host.g.alive(v)) anchors.push_back(v);  // quad pivots may be sites
    if (!touched.empty() && !anchors.empty()) {
        const auto dist = distances_from(host.g, anchors);
        for (VertexId v : touched)
            if (v < dist.size() && dist[v] != kUnreachable)
                out.edit_radius = std::max(out.edit_radius, dist[v]);
    }
}

}  // namespace

SurgeryOutcome route_through_face(const SurgeryHost& host, std::size_t face_id,
                                  const PathSeq& nu, Trace* trace) {
    const FaceSet& fs = host.mg.base_faces();
    if (face_id >= fs.faces.size() || face_id == fs.outer_index)
        throw SurgeryError("face", "target must be an inner face");
    if (fs.faces[face_id].size() < 4)
        throw SurgeryError("face", "target face is a triangle");
    if (!is_induced(host.mg, nu))
        throw SurgeryError("input", "path is not induced in the matching graph");

    for (std::size_t i = 0; i + 1 < nu.verts.size(); ++i) {
        for (std::size_t rec : host.mg.diagonal_records(nu.verts[i], nu.verts[i + 1])) {
            if (host.mg.diagonals()[rec].host_face == face_id) {
                log(trace, "noop", "path already traverses a diagonal of the face");
                SurgeryOutcome out;
                out.result = nu;
                out.mode = RerouteMode::diagonal_traversed;
                out.branches.push_back("noop");
                return out;
            }
        }
    }

    const VertexId hub = host.fg.site_of_face(face_id);
    if (hub == kNone) throw SurgeryError("face", "face has no facial site");
    const Cycle rim{host.fg.graph().rotation(hub)};
    std::unordered_set<VertexId> rim_set(rim.verts.begin(), rim.verts.end());

    PathSeq nu_hat = lift_to_facial(host.fg, host.mg, nu);
    if (nu_hat.contains(hub))
        throw SurgeryError("frame-pivot", "lifted path already meets the facial site");

    std::size_t hit = pick_pivot(nu_hat, rim_set);
    if (hit == kNone)
        throw SurgeryError("frame-pivot", "path does not meet the face rim");
    if (hit == 0 || rim_set.count(nu_hat.verts[hit - 1])) {
        nu_hat = nu_hat.reversed();
        hit = pick_pivot(nu_hat, rim_set);
    }
    const VertexId v = nu_hat.verts[hit];

    std::size_t rim_touch = 0;
    for (VertexId x : nu_hat.verts)
        if (rim_set.count(x)) ++rim_touch;
    const bool edge_touch = rim_touch == 2 && hit + 1 < nu_hat.verts.size() &&
                            rim_set.count(nu_hat.verts[hit + 1]);
    if (rim_touch > 2 || (rim_touch == 2 && !edge_touch))
        throw SurgeryError("frame-touch", "path meets the rim in a forbidden pattern");

    const FrameInput in{v, hub, kNone, rim};
    SurgeryContext ctx = build_frame(host, nu_hat, in);
    label_vertices(host, ctx);

    SurgeryOutcome out = ctx.frame_case == FrameCase::vertex_only
                             ? reroute_case_vertex(host, ctx, trace)
                             : reroute_case_edge(host, ctx, trace);

    out.result.cls = nu.cls;
    validate_path(host.g, &host.mg, out.result);
    bool face_diag = false;
    for (std::size_t i = 0; i + 1 < out.result.verts.size() && !face_diag; ++i)
        for (std::size_t rec :
             host.mg.diagonal_records(out.result.verts[i], out.result.verts[i + 1]))
            if (host.mg.diagonals()[rec].host_face == face_id) face_diag = true;
    if (!face_diag)
        throw SurgeryError("outcome", "reroute did not traverse a diagonal of the face");
    out.mode = RerouteMode::diagonal_traversed;
    edits_and_radius(host, nu, out.result, rim.verts, out);
    return out;
}

SurgeryOutcome route_through_quad(const SurgeryHost& host, const Cycle& quad,
                                  const PathSeq& nu_hat, Trace* trace) {
    if (quad.size() != 4) throw SurgeryError("quad", "need a 4-cycle");
    const VertexId v = quad.verts[0];
    const VertexId z = quad.verts[2];
    const PlaneGraph& gg = host.fg.graph();
    if (!gg.adjacent(v, z)) throw SurgeryError("quad", "quad lacks the shared edge");
    if (!is_cycle_of(gg, quad)) throw SurgeryError("quad", "not a cycle of the host");
    for (VertexId x : nu_hat.verts)
        if (host.fg.is_site(x))
            throw SurgeryError("input", "quad reroute requires a site-free path");
    if (!is_induced(gg, nu_hat)) throw SurgeryError("input", "path not induced");
    // a site-free lift image must be induced with diagonals counted too
    if (!is_induced(host.mg, nu_hat))
        throw SurgeryError("input", "path is not a lift image (matching-graph chord)");
    if (!nu_hat.contains(v)) throw SurgeryError("quad", "path misses the pivot");
    if (nu_hat.contains(z)) {
        log(trace, "noop", "path already contains the quad target");
        SurgeryOutcome out;
        out.result = project_to_matching(host.fg, host.mg, nu_hat);
        out.result.cls = nu_hat.cls;
        out.mode = RerouteMode::reached_target_vertex;
        out.branches.push_back("noop");
        return out;
    }

    const VertexId y1 = quad.verts[1], y2 = quad.verts[3];
    PathSeq path = nu_hat;
    std::size_t k = index_of(path.verts, v);
    if (k == 0 || k + 1 == path.verts.size())
        throw SurgeryError("margin", "quad pivot is a path endpoint");
    const VertexId before = path.verts[k - 1];
    const VertexId after = path.verts[k + 1];
    const bool b_flank = before == y1 || before == y2;
    const bool a_flank = after == y1 || after == y2;

    SurgeryOutcome out;
    if (b_flank && a_flank) {
        SurgeryContext ctx;
        ctx.nu_hat = path;
        ctx.u = before;
        ctx.v = v;
        ctx.w = after;
        ctx.u_index = k - 1;
        ctx.quad_target = z;
        ctx.rim = quad;
        out = case_both_edges(host, ctx, trace);
    } else {
        if (b_flank) path = path.reversed();
        const FrameInput in{v, kNone, z, quad};
        SurgeryContext ctx = build_frame(host, path, in);
        label_vertices(host, ctx);
        out = ctx.frame_case == FrameCase::vertex_only
                  ? reroute_case_vertex(host, ctx, trace)
                  : reroute_case_edge(host, ctx, trace);
    }
    out.result.cls = nu_hat.cls;
    validate_path(host.g, &host.mg, out.result);
    edits_and_radius(host, project_to_matching(host.fg, host.mg, nu_hat), out.result,
                     quad.verts, out);
    return out;
}

SurgeryOutcome advance_to_cycle(const SurgeryHost& host, const Cycle& a, const PathSeq& nu,
                                Trace* trace) {
    for (std::size_t i = 0; i + 1 < nu.verts.size(); ++i)
        if (host.mg.is_diagonal_pair(nu.verts[i], nu.verts[i + 1]))
            throw SurgeryError("input", "advance_to_cycle expects a diagonal-free path");
    PathSeq nu_hat = lift_to_facial(host.fg, host.mg, nu);
    for (VertexId x : a.verts)
        if (nu_hat.contains(x))
            throw SurgeryError("input", "path already meets the cycle");

    const Cycle b = surrounding_cycle(host.fg, a);
    std::unordered_set<VertexId> b_set(b.verts.begin(), b.verts.end());
    std::size_t hit = kNone;
    for (std::size_t i = 0; i < nu_hat.verts.size(); ++i)
        if (b_set.count(nu_hat.verts[i])) {
            hit = i;
            break;
        }
    if (hit == kNone)
        throw SurgeryError("input", "path does not meet the surrounding cycle");
    const VertexId v = nu_hat.verts[hit];

    const PlaneGraph& gg = host.fg.graph();
    std::unordered_set<VertexId> a_set(a.verts.begin(), a.verts.end());
    VertexId z = kNone;
    for (VertexId wn : gg.rotation(v))
        if (a_set.count(wn) && (z == kNone || wn < z)) z = wn;
    if (z == kNone)
        throw SurgeryError("layer", "surrounding-cycle vertex has no edge into the cycle");

    std::vector<VertexId> commons;
    for (VertexId wn : gg.rotation(v))
        if (gg.adjacent(wn, z)) commons.push_back(wn);
    if (commons.size() != 2)
        throw SurgeryError("layer", "shared edge not flanked by exactly two triangles");

    const Cycle quad{{v, commons[0], z, commons[1]}};
    SurgeryOutcome out = route_through_quad(host, quad, nu_hat, trace);
    if (out.mode == RerouteMode::reached_target_vertex) out.mode = RerouteMode::reached_cycle;
    return out;
}

SurgeryOutcome walk_inward(const SurgeryHost& host, const NestedSequence& seq,
                           const PathSeq& nu, Trace* trace) {
    PathSeq current = nu;
    auto minimal_layer = [&](const PathSeq& p) -> std::size_t {
        for (std::size_t i = 0; i < seq.cycles.size(); ++i)
            for (VertexId x : seq.cycles[i].verts)
                if (p.contains(x)) return i;
        return kNone;
    };
    std::size_t level = minimal_layer(current);
    if (level == kNone) throw SurgeryError("margin", "path misses every nested cycle");
    std::size_t guard = level + 1;
    while (level != 0) {
        if (guard-- == 0)
            throw SurgeryError("descent", "inward walk failed to make progress");
        SurgeryOutcome step = advance_to_cycle(host, seq.cycles[level - 1], current, trace);
        if (step.mode == RerouteMode::diagonal_traversed) return step;
        current = step.result;
        const std::size_t next = minimal_layer(current);
        if (next == kNone || next >= level)
            throw SurgeryError("descent", "inward walk failed to descend");
        level = next;
    }
    SurgeryOutcome out;
    out.result = current;
    out.mode = RerouteMode::reached_cycle;
    return out;
}

SurgeryOutcome force_diagonal_witness(const SurgeryHost& host, const PathSeq& nu,
                                      std::size_t face_id, Trace* trace) {
    if (is_triangulation(host.g))
        throw SurgeryError("input", "host graph is a triangulation; nothing to traverse");
    if (!is_induced(host.mg, nu)) throw SurgeryError("input", "path not induced");

    for (std::size_t i = 0; i + 1 < nu.verts.size(); ++i) {
        if (host.mg.is_diagonal_pair(nu.verts[i], nu.verts[i + 1])) {
            log(trace, "noop", "input already traverses a diagonal");
            SurgeryOutcome out;
            out.result = nu;
            out.mode = RerouteMode::diagonal_traversed;
            out.branches.push_back("noop");
            return out;
        }
    }

    const VertexId hub = host.fg.site_of_face(face_id);
    if (hub == kNone) throw SurgeryError("face", "target face has no site");
    const Cycle rim{host.fg.graph().rotation(hub)};

    NestedSequence seq = nested_sequence(host.fg, rim, host.g.vertex_count());

    SurgeryOutcome inward = walk_inward(host, seq, nu, trace);
    SurgeryOutcome out;
    if (inward.mode == RerouteMode::diagonal_traversed) {
        out = std::move(inward);
    } else {
        out = route_through_face(host, face_id, inward.result, trace);
    }
    edits_and_radius(host, nu, out.result, rim.verts, out);
    if (trace) {
        out.branches.clear();
        for (const auto& ev : *trace) out.branches.push_back(ev.branch);
    }
    return out;
}

std::string trace_json(const Trace& trace) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& ev : trace) {
        nlohmann::json e{{"branch", ev.branch}};
        if (!ev.detail.empty()) e["detail"] = ev.detail;
        j.push_back(e);
    }
    return j.dump(2);
}

}  // namespace planar
