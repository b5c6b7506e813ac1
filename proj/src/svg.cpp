#include "planar/svg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace planar {

void SvgScene::add_graph(const PlaneGraph& g) {
    for (auto [a, b] : g.edges()) segs_.push_back({g.position(a), g.position(b), "edge"});
    for (VertexId v : g.vertices())
        dots_.push_back({g.position(v), g.on_boundary(v) ? "boundary" : "vertex"});
}

void SvgScene::add_diagonals(const MatchingGraph& mg) {
    for (const Diagonal& d : mg.diagonals())
        segs_.push_back({mg.base().position(d.a), mg.base().position(d.b), "diagonal"});
}

void SvgScene::add_spokes(const FacialGraph& fg) {
    const PlaneGraph& g = fg.graph();
    for (VertexId s : fg.sites()) {
        dots_.push_back({g.position(s), "site"});
        for (VertexId w : g.rotation(s)) segs_.push_back({g.position(s), g.position(w), "spoke"});
    }
}

void SvgScene::add_path(const PlaneGraph& host, const PathSeq& p, const std::string& cls) {
    for (std::size_t i = 0; i + 1 < p.verts.size(); ++i)
        segs_.push_back({host.position(p.verts[i]), host.position(p.verts[i + 1]), cls});
}

void SvgScene::add_path(const MatchingGraph& host, const PathSeq& p, const std::string& cls) {
    add_path(host.base(), p, cls);
}

void SvgScene::add_cycle(const PlaneGraph& host, const Cycle& c, const std::string& cls) {
    for (std::size_t i = 0; i < c.verts.size(); ++i)
        segs_.push_back({host.position(c.verts[i]),
                         host.position(c.verts[(i + 1) % c.verts.size()]), cls});
}

void SvgScene::add_label(Vec2 at, const std::string& text) { labels_.push_back({at, text}); }

std::string SvgScene::str() const {
    double xmin = 1e18, xmax = -1e18, ymin = 1e18, ymax = -1e18;
    auto grow = [&](Vec2 p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    };
    for (const auto& s : segs_) {
        grow(s.a);
        grow(s.b);
    }
    for (const auto& d : dots_) grow(d.at);
    if (segs_.empty() && dots_.empty()) xmin = ymin = 0, xmax = ymax = 1;
    const double pad = 0.8;
    xmin -= pad, ymin -= pad, xmax += pad, ymax += pad;
    const double scale = 48.0;
    const double w = (xmax - xmin) * scale, h = (ymax - ymin) * scale;
    auto X = [&](double x) { return (x - xmin) * scale; };
    auto Y = [&](double y) { return h - (y - ymin) * scale; };  // y grows upward

    std::ostringstream o;
    o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    o << "<style>\n"
         ".edge{stroke:#444;stroke-width:1.4}\n"
         ".diagonal{stroke:#c22;stroke-width:1.2;stroke-dasharray:5 3}\n"
         ".spoke{stroke:#28c;stroke-width:1.0;stroke-dasharray:2 3}\n"
         ".path{stroke:#0a0;stroke-width:3.2;opacity:0.85}\n"
         ".cycle{stroke:#f80;stroke-width:2.6;opacity:0.9}\n"
         ".accent{stroke:#a0f;stroke-width:2.6}\n"
         "text{font:10px monospace;fill:#333}\n"
         "</style>\n";
    for (const auto& s : segs_) {
        o << "<line class='" << s.cls << "' x1='" << X(s.a.x) << "' y1='" << Y(s.a.y)
          << "' x2='" << X(s.b.x) << "' y2='" << Y(s.b.y) << "'/>\n";
    }
    for (const auto& d : dots_) {
        const char* fill = d.cls == "site" ? "#28c" : d.cls == "boundary" ? "#999" : "#000";
        const double r = d.cls == "site" ? 3.2 : 2.2;
        o << "<circle cx='" << X(d.at.x) << "' cy='" << Y(d.at.y) << "' r='" << r
          << "' fill='" << fill << "'/>\n";
    }
    for (const auto& l : labels_) {
        o << "<text x='" << X(l.at.x) + 4 << "' y='" << Y(l.at.y) - 4 << "'>" << l.text
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void SvgScene::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot write svg: " + path);
    out << str();
}

}  // namespace planar
