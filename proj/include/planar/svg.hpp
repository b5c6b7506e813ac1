#pragma once

#include <string>
#include <vector>

#include "planar/derived.hpp"
#include "planar/path.hpp"
#include "planar/plane_graph.hpp"

namespace planar {

/// Minimal SVG scene for graphs, faces, paths and cycles. Stroke classes:
/// "edge", "diagonal", "spoke", "path", "cycle", "accent".
class SvgScene {
public:
    void add_graph(const PlaneGraph& g);
    void add_diagonals(const MatchingGraph& mg);
    void add_spokes(const FacialGraph& fg);
    void add_path(const PlaneGraph& host, const PathSeq& p, const std::string& cls = "path");
    void add_path(const MatchingGraph& host, const PathSeq& p, const std::string& cls = "path");
    void add_cycle(const PlaneGraph& host, const Cycle& c, const std::string& cls = "cycle");
    void add_label(Vec2 at, const std::string& text);

    std::string str() const;
    void write(const std::string& path) const;

private:
    struct Seg {
        Vec2 a, b;
        std::string cls;
    };
    struct Dot {
        Vec2 at;
        std::string cls;
    };
    struct Label {
        Vec2 at;
        std::string text;
    };
    std::vector<Seg> segs_;
    std::vector<Dot> dots_;
    std::vector<Label> labels_;
};

}  // namespace planar
