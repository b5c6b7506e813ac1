#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "planar/cycles.hpp"
#include "planar/derived.hpp"
#include "planar/lattice.hpp"

using namespace planar;

namespace {

PlaneGraph window(LatticeKind k, std::size_t r) { return lattice_window({k, r, {}, ""}); }

// enumerate all simple cycles up to a length cap (canonical: smallest vertex
// first, direction fixed)
std::vector<Cycle> cycles_up_to(const PlaneGraph& g, std::size_t cap) {
    std::vector<Cycle> out;
    std::vector<VertexId> stack;
    std::vector<char> on_stack(g.slot_count(), 0);
    const auto vs = g.vertices();

    std::function<void(VertexId, VertexId)> dfs = [&](VertexId root, VertexId cur) {
        for (VertexId w : g.rotation(cur)) {
            if (w == root && stack.size() >= 3) {
                // canonical direction: second vertex smaller than last
                if (stack[1] < stack.back()) out.push_back(Cycle{stack});
                continue;
            }
            if (w <= root || on_stack[w]) continue;
            if (stack.size() == cap) continue;
            stack.push_back(w);
            on_stack[w] = 1;
            dfs(root, w);
            on_stack[w] = 0;
            stack.pop_back();
        }
    };
    for (VertexId v : vs) {
        stack = {v};
        on_stack[v] = 1;
        dfs(v, v);
        on_stack[v] = 0;
    }
    return out;
}

// Fig-4-style fixture: an octagonal face whose boundary carries two outside
// chords (one nested pocket with an interior vertex), drawn inside a frame
// so everything is window-interior.
PlaneGraph pocket_fixture() {
    std::vector<Vec2> pos{
        {0, 0},    {2, 0.6},  {4, 0},   {6, 0.8},  {8, 0},    // 0..4 bottom arc
        {8, 4},    {4, 6},    {0, 4},                         // 5..7 top
        {6, 0.3},                                             // 8 pocket vertex
        {-3, -3},  {11, -3},  {11, 9},  {-3, 9},              // 9..12 frame
    };
    std::vector<std::pair<VertexId, VertexId>> edges{
        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0},  // octagon
        {0, 2},                                                          // chord
        {2, 4},                                                          // chord
        {2, 8}, {8, 4},                                                  // pocket path
        {9, 10}, {10, 11}, {11, 12}, {12, 9},                            // frame
        {0, 9}, {4, 10}, {5, 11}, {7, 12},
    };
    return PlaneGraph::from_points(pos, edges);
}

}  // namespace

TEST_CASE("exterior cycle: 3-cycles and chordless faces are fixed points") {
    PlaneGraph tri = window(LatticeKind::triangular, 4);
    const FaceSet fs = faces(tri);
    for (std::size_t f = 0; f < fs.faces.size(); ++f) {
        if (f == fs.outer_index) continue;
        const Cycle c{fs.faces[f].verts};
        CHECK(same_cycle(exterior_cycle(tri, c), c));
        break;
    }
    PlaneGraph sq = window(LatticeKind::square, 4);
    const FaceSet fs2 = faces(sq);
    for (std::size_t f = 0; f < fs2.faces.size(); ++f) {
        if (f == fs2.outer_index) continue;
        const Cycle c{fs2.faces[f].verts};
        CHECK(same_cycle(exterior_cycle(sq, c), c));
        break;
    }
}

TEST_CASE("exterior cycle shortcuts outside chords") {
    PlaneGraph g = pocket_fixture();
    validate(g);
    const FaceSet fs = faces(g);
    std::size_t oct = kNone;
    for (std::size_t f = 0; f < fs.faces.size(); ++f)
        if (f != fs.outer_index && fs.faces[f].size() == 8) oct = f;
    REQUIRE(oct != kNone);
    const Cycle a{fs.faces[oct].verts};
    const Cycle ext = exterior_cycle(g, a);
    CHECK(ext.size() < a.size());
    CHECK(ext.size() == 6);  // 0-2 and 2-4 shortcut the two bottom bends
    CHECK(!ext.contains(1));
    CHECK(!ext.contains(3));
    // idempotent
    CHECK(same_cycle(exterior_cycle(g, ext), ext));
    // the pocket vertex 8 lies inside the exterior cycle but not inside a
    const CycleRegion ra = cycle_interior(g, a);
    const CycleRegion re = cycle_interior(g, ext);
    CHECK(std::find(ra.interior_vertices.begin(), ra.interior_vertices.end(), 8) ==
          ra.interior_vertices.end());
    CHECK(std::find(re.interior_vertices.begin(), re.interior_vertices.end(), 8) !=
          re.interior_vertices.end());
}

TEST_CASE("exterior cycle over all short cycles: length never grows, idempotent") {
    PlaneGraph g = window(LatticeKind::square, 3);
    const auto all = cycles_up_to(g, 8);
    CHECK(all.size() > 100);
    for (const auto& c : all) {
        const Cycle e = exterior_cycle(g, c);
        CHECK(e.size() <= c.size());
        CHECK(same_cycle(exterior_cycle(g, e), e));
        if (c.size() == 4) CHECK(same_cycle(e, c));  // 4-cycles are their own hull
        if (c.size() == 3) CHECK(same_cycle(e, c));
    }
}

TEST_CASE("neighbor layer of a facial triangle has nine vertices") {
    PlaneGraph g = window(LatticeKind::triangular, 4);
    auto id = [&](int i, int j) { return static_cast<VertexId>((i + 4) * 9 + (j + 4)); };
    const Cycle tri{{id(0, 0), id(1, 0), id(0, 1)}};
    REQUIRE(is_cycle_of(g, tri));
    const auto layer = neighbor_layer(g, tri);
    CHECK(layer.size() == 9);
    for (VertexId v : layer) CHECK(!tri.contains(v));
}

TEST_CASE("neighbor layer of one square face has eight vertices") {
    PlaneGraph g = window(LatticeKind::square, 4);
    auto id = [&](int i, int j) { return static_cast<VertexId>((i + 4) * 9 + (j + 4)); };
    const Cycle sq{{id(0, 0), id(1, 0), id(1, 1), id(0, 1)}};
    CHECK(neighbor_layer(g, sq).size() == 8);
}

TEST_CASE("neighbor layer rejects cycles touching the window boundary") {
    PlaneGraph g = window(LatticeKind::square, 3);
    auto id = [&](int i, int j) { return static_cast<VertexId>((i + 3) * 7 + (j + 3)); };
    const Cycle sq{{id(2, 2), id(3, 2), id(3, 3), id(2, 3)}};
    CHECK_THROWS_AS((void)neighbor_layer(g, sq), GraphError);
}

TEST_CASE("surrounding cycle encloses the input and stays in the layer") {
    PlaneGraph g = window(LatticeKind::triangular, 5);
    const FacialGraph fg = facial_delta(g);
    auto id = [&](int i, int j) { return static_cast<VertexId>((i + 5) * 11 + (j + 5)); };
    const Cycle tri{{id(0, 0), id(1, 0), id(0, 1)}};
    const Cycle b = surrounding_cycle(fg, tri);
    CHECK(b.size() >= 6);
    const CycleRegion rb = cycle_interior(fg.graph(), b);
    for (VertexId v : tri.verts)
        CHECK(std::find(rb.interior_vertices.begin(), rb.interior_vertices.end(), v) !=
              rb.interior_vertices.end());
    // every layer vertex in the closure, every cycle vertex from the layer
    const auto layer = neighbor_layer(fg.graph(), tri);
    std::set<VertexId> closure(rb.interior_vertices.begin(), rb.interior_vertices.end());
    for (VertexId v : b.verts) closure.insert(v);
    for (VertexId v : layer) CHECK(closure.count(v) == 1);
}

TEST_CASE("nested sequences stay nested and truncate at the window") {
    PlaneGraph g = window(LatticeKind::triangular, 5);
    const FacialGraph fg = facial_delta(g);
    auto id = [&](int i, int j) { return static_cast<VertexId>((i + 5) * 11 + (j + 5)); };
    const Cycle tri{{id(0, 0), id(1, 0), id(0, 1)}};

    const NestedSequence k0 = nested_sequence(fg, tri, 0);
    CHECK(k0.cycles.size() == 1);
    CHECK(!k0.truncated);

    const NestedSequence seq = nested_sequence(fg, tri, 3);
    if (!seq.truncated) CHECK(seq.cycles.size() == 4);
    for (std::size_t i = 0; i + 1 < seq.cycles.size(); ++i) {
        const CycleRegion outer = cycle_interior(fg.graph(), seq.cycles[i + 1]);
        std::set<VertexId> inside(outer.interior_vertices.begin(),
                                  outer.interior_vertices.end());
        for (VertexId v : seq.cycles[i].verts) CHECK(inside.count(v) == 1);
    }

    const NestedSequence deep = nested_sequence(fg, tri, 10);
    CHECK(deep.truncated);
    CHECK(deep.cycles.size() < 11);
}

TEST_CASE("prune_face_interior: chordless faces unchanged, pockets removed") {
    PlaneGraph sq = window(LatticeKind::square, 3);
    const FaceSet fs = faces(sq);
    std::size_t inner = fs.outer_index == 0 ? 1 : 0;
    PlaneGraph pruned = prune_face_interior(sq, inner);
    CHECK(pruned.vertex_count() == sq.vertex_count());
    CHECK(pruned.edge_count() == sq.edge_count());

    PlaneGraph g = pocket_fixture();
    const FaceSet pf = faces(g);
    std::size_t oct = kNone;
    for (std::size_t f = 0; f < pf.faces.size(); ++f)
        if (f != pf.outer_index && pf.faces[f].size() == 8) oct = f;
    PlaneGraph gf = prune_face_interior(g, oct);
    CHECK(!gf.alive(1));
    CHECK(!gf.alive(3));
    CHECK(!gf.alive(8));
    validate(gf);
    // the exterior cycle keeps length >= 4 after pruning
    const FaceSet after = faces(gf);
    bool has_hexagon = false;
    for (std::size_t f = 0; f < after.faces.size(); ++f)
        if (f != after.outer_index && after.faces[f].size() == 6) has_hexagon = true;
    CHECK(has_hexagon);
}

TEST_CASE("pruning commutes with the emptied facial graph on ten faces") {
    // chordless faces prune to themselves, so commuting is immediate; check
    // a batch of them plus the pocket fixture's chorded face
    std::size_t checked = 0;
    for (LatticeKind kind : {LatticeKind::square, LatticeKind::hexagonal}) {
        PlaneGraph g = window(kind, 3);
        const FaceSet fs = faces(g);
        for (std::size_t f = 0; f < fs.faces.size() && checked < 10; ++f) {
            if (f == fs.outer_index || fs.faces[f].size() < 4) continue;
            bool interior = true;
            for (VertexId v : fs.faces[f].verts)
                if (g.on_boundary(v)) interior = false;
            if (!interior) continue;
            PlaneGraph gf = prune_face_interior(g, f);
            CHECK(gf.vertex_count() == g.vertex_count());
            CHECK(gf.edge_count() == g.edge_count());
            ++checked;
        }
    }
    CHECK(checked >= 9);
}

TEST_CASE("pruning commutes with the emptied facial graph") {
    PlaneGraph g = pocket_fixture();
    const FaceSet fs = faces(g);
    std::size_t oct = kNone;
    for (std::size_t f = 0; f < fs.faces.size(); ++f)
        if (f != fs.outer_index && fs.faces[f].size() == 8) oct = f;
    PlaneGraph gf = prune_face_interior(g, oct);

    const FacialGraph a = facial_delta(g);
    const FacialGraph b = facial_delta(gf);

    // same base adjacency on shared names
    for (VertexId v = 0; v < g.slot_count(); ++v) {
        if (!a.graph().alive(v) || v >= a.base_slot_count()) continue;
        CHECK(b.graph().alive(v));
    }
    // compare site neighbourhoods as sets of base-vertex sets
    auto site_profile = [](const FacialGraph& fg) {
        std::set<std::set<VertexId>> prof;
        for (VertexId s : fg.sites()) {
            std::set<VertexId> nbrs(fg.graph().rotation(s).begin(),
                                    fg.graph().rotation(s).end());
            prof.insert(nbrs);
        }
        return prof;
    };
    CHECK(site_profile(a) == site_profile(b));
    // base edges equal on shared vertex names
    std::set<std::pair<VertexId, VertexId>> ea, eb;
    for (auto e : a.graph().edges())
        if (e.first < a.base_slot_count() && e.second < a.base_slot_count()) ea.insert(e);
    for (auto e : b.graph().edges())
        if (e.first < b.base_slot_count() && e.second < b.base_slot_count()) eb.insert(e);
    CHECK(ea == eb);
}
