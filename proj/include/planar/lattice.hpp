#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planar/plane_graph.hpp"

namespace planar {

enum class LatticeKind { square, triangular, hexagonal, fig2_gadget, fig5_strip, custom_file };

/// Placement of one gadget inside a fundamental triangle of the triangular
/// lattice. (i, j) is the rhombic cell, `up` selects which of its two faces.
struct GadgetSpot {
    int i = 0;
    int j = 0;
    bool up = true;
};

struct WindowSpec {
    LatticeKind kind = LatticeKind::square;
    std::size_t radius = 4;
    /// For fig2_gadget: empty means every fundamental triangle gets a gadget.
    std::vector<GadgetSpot> gadgets;
    std::string file;  // for custom_file
};

/// Finite window of the requested lattice with boundary vertices marked and
/// crossing terminals populated. Throws GraphError for radius < 3 or an
/// unreadable custom file.
PlaneGraph lattice_window(const WindowSpec& spec);

LatticeKind lattice_kind_from_name(const std::string& name);
std::string lattice_name(LatticeKind k);

}  // namespace planar
