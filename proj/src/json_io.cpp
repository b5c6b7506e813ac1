#include "planar/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "planar/derived.hpp"
#include "planar/path.hpp"

namespace planar {

using nlohmann::json;

PlaneGraph parse_graph(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("vertices") || !j.contains("rotations"))
        throw GraphError("interchange file needs 'vertices' and 'rotations'");
    std::size_t max_id = 0;
    for (const auto& v : j["vertices"]) max_id = std::max(max_id, v["id"].get<std::size_t>());
    std::vector<Vec2> pos(max_id + 1);
    std::vector<char> present(max_id + 1, 0);
    std::vector<char> boundary(max_id + 1, 0);
    for (const auto& v : j["vertices"]) {
        const auto id = v["id"].get<std::size_t>();
        pos[id] = {v["x"].get<double>(), v["y"].get<double>()};
        present[id] = 1;
        boundary[id] = v.value("boundary", false) ? 1 : 0;
    }
    std::vector<std::vector<VertexId>> rot(max_id + 1);
    for (auto it = j["rotations"].begin(); it != j["rotations"].end(); ++it) {
        const std::size_t id = std::stoull(it.key());
        if (id > max_id || !present[id]) throw GraphError("rotation for unknown vertex");
        rot[id] = it.value().get<std::vector<VertexId>>();
    }
    PlaneGraph g = PlaneGraph::from_rotations(std::move(pos), std::move(rot));
    std::vector<char> kill(max_id + 1, 0);
    for (std::size_t i = 0; i <= max_id; ++i)
        if (!present[i]) kill[i] = 1;
    if (std::any_of(kill.begin(), kill.end(), [](char c) { return c != 0; }))
        g = g.remove_vertices(kill);
    for (std::size_t i = 0; i <= max_id; ++i)
        if (present[i] && boundary[i]) g.mark_boundary(i);
    validate(g);
    return g;
}

PlaneGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str());
}

namespace {

json graph_json(const PlaneGraph& g) {
    json verts = json::array();
    for (VertexId v : g.vertices()) {
        verts.push_back({{"id", v},
                         {"x", g.position(v).x},
                         {"y", g.position(v).y},
                         {"boundary", g.on_boundary(v)}});
    }
    json rots = json::object();
    for (VertexId v : g.vertices()) rots[std::to_string(v)] = g.rotation(v);
    return json{{"vertices", verts}, {"rotations", rots}};
}

}  // namespace

std::string graph_to_json(const PlaneGraph& g) { return graph_json(g).dump(2); }

std::string matching_to_json(const MatchingGraph& mg) {
    json j = graph_json(mg.base());
    json diags = json::array();
    for (const Diagonal& d : mg.diagonals()) diags.push_back({d.a, d.b, d.host_face});
    j["diagonals"] = diags;
    return j.dump(2);
}

std::string facial_to_json(const FacialGraph& fg) {
    json j = graph_json(fg.graph());
    json sites = json::object();
    for (VertexId s : fg.sites()) sites[std::to_string(s)] = fg.face_of_site(s);
    j["facial_sites"] = sites;
    return j.dump(2);
}

std::string path_to_json(const PathSeq& p, const std::string& host) {
    json j{{"host", host},
           {"class", p.cls == PathClass::window_crossing ? "window_crossing" : "finite"},
           {"vertices", p.verts}};
    return j.dump(2);
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot write file: " + path);
    out << text;
}

}  // namespace planar
