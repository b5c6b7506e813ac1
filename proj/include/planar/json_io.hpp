#pragma once

#include <iosfwd>
#include <string>

#include "planar/plane_graph.hpp"

namespace planar {

class MatchingGraph;
class FacialGraph;
struct PathSeq;

/// Interchange format:
///   {"vertices": [{"id": n, "x": f, "y": f, "boundary": b}, ...],
///    "rotations": {"id": [neighbour ids, clockwise], ...}}
/// Derived graphs add "diagonals": [[a, b, face], ...] and
/// "facial_sites": {"site id": face}.
PlaneGraph load_graph(const std::string& path);
PlaneGraph parse_graph(const std::string& text);
std::string graph_to_json(const PlaneGraph& g);
std::string matching_to_json(const MatchingGraph& mg);
std::string facial_to_json(const FacialGraph& fg);
std::string path_to_json(const PathSeq& p, const std::string& host);
void save_text(const std::string& path, const std::string& text);

}  // namespace planar
