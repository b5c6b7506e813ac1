#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "planar/derived.hpp"
#include "planar/lattice.hpp"

using namespace planar;

namespace {

PlaneGraph window(LatticeKind k, std::size_t r) { return lattice_window({k, r, {}, ""}); }

// brute-force diagonal count for one face: non-adjacent boundary pairs
std::size_t expected_diagonals(const PlaneGraph& g, const Face& f) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j)
            if (!g.adjacent(f.verts[i], f.verts[j])) ++n;
    return n;
}

// a single n-gon face fixture
PlaneGraph polygon(std::size_t n) {
    std::vector<Vec2> pos;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2 * M_PI * static_cast<double>(i) / static_cast<double>(n);
        pos.push_back({std::cos(a), std::sin(a)});
        edges.emplace_back(i, (i + 1) % n);
    }
    return PlaneGraph::from_points(pos, edges);
}

}  // namespace

TEST_CASE("triangulation has an empty matching extension") {
    PlaneGraph g = window(LatticeKind::triangular, 4);
    const MatchingGraph mg = matching_graph(g);
    CHECK(mg.diagonals().empty());
    CHECK(is_triangulation(g));
}

TEST_CASE("one square face gets two diagonals, one hexagon gets nine") {
    const MatchingGraph sq = matching_graph(polygon(4));
    CHECK(sq.diagonals().size() == 2);
    const MatchingGraph hex = matching_graph(polygon(6));
    // enumeration oracle: 6*3/2
    const std::size_t inner = hex.base_faces().outer_index == 0 ? 1 : 0;
    CHECK(expected_diagonals(hex.base(), hex.base_faces().faces[inner]) == 9);
    CHECK(hex.diagonals().size() == 9);
}

TEST_CASE("diagonal count per face is n(n-3)/2 for n in 4..9") {
    for (std::size_t n = 4; n <= 9; ++n) {
        const MatchingGraph mg = matching_graph(polygon(n));
        CHECK(mg.diagonals().size() == n * (n - 3) / 2);
    }
}

TEST_CASE("matching graph of the square window: 2 diagonals per face, adjacency collapsed") {
    PlaneGraph g = window(LatticeKind::square, 3);
    const MatchingGraph mg = matching_graph(g);
    const auto& fs = mg.base_faces();
    CHECK(mg.diagonals().size() == 2 * fs.inner_count());
    // king-move adjacency at the centre
    auto id = [&](int i, int j) { return static_cast<VertexId>((i + 3) * 7 + (j + 3)); };
    CHECK(mg.adjacent(id(0, 0), id(1, 1)));
    CHECK(mg.adjacent(id(0, 0), id(1, -1)));
    CHECK(!mg.adjacent(id(0, 0), id(2, 1)));
}

TEST_CASE("facial graph: square face gains one site of degree 4") {
    PlaneGraph g = polygon(4);
    const FacialGraph fg = facial_graph(g);
    CHECK(fg.sites().size() == 1);
    const VertexId s = fg.sites()[0];
    CHECK(fg.graph().degree(s) == 4);
    validate(fg.graph());
    const FaceSet fs = faces(fg.graph());
    for (std::size_t f = 0; f < fs.faces.size(); ++f)
        if (f != fs.outer_index) CHECK(fs.faces[f].size() == 3);
}

TEST_CASE("facial graph of a triangulation is the graph itself") {
    PlaneGraph g = window(LatticeKind::triangular, 3);
    const FacialGraph fg = facial_graph(g);
    CHECK(fg.sites().empty());
    CHECK(fg.graph().vertex_count() == g.vertex_count());
    CHECK(fg.graph().edge_count() == g.edge_count());
}

TEST_CASE("facial graph: hexagonal face site has degree 6") {
    const FacialGraph fg = facial_graph(polygon(6));
    REQUIRE(fg.sites().size() == 1);
    CHECK(fg.graph().degree(fg.sites()[0]) == 6);
    validate(fg.graph());
}

TEST_CASE("facial graph of lattice windows validates and triangulates") {
    for (LatticeKind k : {LatticeKind::square, LatticeKind::hexagonal}) {
        PlaneGraph g = window(k, 3);
        const FacialGraph fg = facial_graph(g);
        validate(fg.graph());
        const FaceSet fs = faces(fg.graph());
        for (std::size_t f = 0; f < fs.faces.size(); ++f)
            if (f != fs.outer_index) CHECK(fs.faces[f].size() == 3);
        for (VertexId s : fg.sites())
            CHECK(fg.graph().degree(s) ==
                  fg.base_faces().faces[fg.face_of_site(s)].size());
    }
}

TEST_CASE("separating triangles: lattices are clean, the gadget window is not") {
    CHECK(separating_triangles(window(LatticeKind::triangular, 4)).empty());
    CHECK(separating_triangles(window(LatticeKind::square, 4)).empty());

    PlaneGraph g = lattice_window({LatticeKind::fig2_gadget, 4, {{0, 0, true}}, ""});
    const auto rep = separating_triangles(g);
    REQUIRE(rep.triangles.size() == 1);
    CHECK(rep.triangles[0].interior_vertex_count == 2);  // the two gadget vertices
}

TEST_CASE("gadget fundamental triangle encloses the gadget vertices") {
    PlaneGraph g = lattice_window({LatticeKind::fig2_gadget, 4, {{0, 0, true}}, ""});
    const auto rep = separating_triangles(g);
    REQUIRE(rep.triangles.size() == 1);
    Cycle tri{{rep.triangles[0].verts[0], rep.triangles[0].verts[1],
               rep.triangles[0].verts[2]}};
    const CycleRegion region = cycle_interior(g, tri);
    CHECK(region.interior_vertices.size() == 2);
}

TEST_CASE("empty_triangles is a fixpoint on clean graphs and removes gadgets") {
    PlaneGraph tri = window(LatticeKind::triangular, 4);
    PlaneGraph tri2 = empty_triangles(tri);
    CHECK(tri2.vertex_count() == tri.vertex_count());
    CHECK(tri2.edge_count() == tri.edge_count());

    PlaneGraph g = lattice_window({LatticeKind::fig2_gadget, 4, {{0, 0, true}}, ""});
    PlaneGraph gd = empty_triangles(g);
    CHECK(separating_triangles(gd).empty());
    CHECK(gd.vertex_count() == tri.vertex_count());
    CHECK(gd.edge_count() == tri.edge_count());
    PlaneGraph gdd = empty_triangles(gd);
    CHECK(gdd.vertex_count() == gd.vertex_count());
    CHECK(gdd.edge_count() == gd.edge_count());
}

TEST_CASE("nested separating triangles are emptied in one pass") {
    std::vector<Vec2> pos{{0, 0}, {12, 0}, {6, 10},   // outer
                          {3, 2}, {9, 2},  {6, 7},    // middle
                          {5, 3}, {7, 3},  {6, 5}};   // inner
    std::vector<std::pair<VertexId, VertexId>> edges{
        {0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {6, 7}, {7, 8}, {8, 6},
        {0, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 7}, {5, 8}};
    PlaneGraph g = PlaneGraph::from_points(pos, edges);
    validate(g);
    PlaneGraph gd = empty_triangles(g);
    CHECK(gd.vertex_count() == 3);
    CHECK(gd.edge_count() == 3);
    CHECK(separating_triangles(gd).empty());
}

TEST_CASE("facial_delta of the square window equals its facial graph") {
    PlaneGraph g = window(LatticeKind::square, 3);
    const FacialGraph fg = facial_graph(g);
    const FacialGraph fgd = facial_delta(g);
    CHECK(fgd.graph().vertex_count() == fg.graph().vertex_count());
    CHECK(fgd.graph().edge_count() == fg.graph().edge_count());
    CHECK(separating_triangles(fg).empty());
}

TEST_CASE("external chords on a face boundary create site-pair triangles") {
    // hexagonal face with an outside chord between boundary vertices at
    // boundary-distance 2 (vertex 1 sits in the pocket between the chord and
    // the face boundary)
    std::vector<Vec2> pos{{0, 0}, {2, 0.5}, {4, 0}, {4, 2}, {2, 3}, {0, 2}};
    std::vector<std::pair<VertexId, VertexId>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                                     {4, 5}, {5, 0}, {0, 2}};
    PlaneGraph g = PlaneGraph::from_points(pos, edges);
    validate(g);
    const FacialGraph fg = facial_graph(g);
    const auto rep = separating_triangles(fg);
    bool found_site_pair = false;
    for (const auto& t : rep.triangles)
        if (t.kind == TriangleKind::site_pair) found_site_pair = true;
    CHECK(found_site_pair);

    const FacialGraph fgd = facial_delta(g);
    CHECK(separating_triangles(fgd.graph()).empty());
    CHECK(!fgd.graph().alive(1));
}

TEST_CASE("triangle classification partitions plain and site-pair kinds") {
    PlaneGraph g = lattice_window({LatticeKind::fig2_gadget, 4, {{0, 0, true}}, ""});
    const FacialGraph fg = facial_graph(g);
    const auto rep = separating_triangles(fg);
    CHECK(!rep.empty());
    for (const auto& t : rep.triangles) {
        const bool any_site =
            fg.is_site(t.verts[0]) || fg.is_site(t.verts[1]) || fg.is_site(t.verts[2]);
        CHECK((t.kind == TriangleKind::site_pair) == any_site);
    }
}
