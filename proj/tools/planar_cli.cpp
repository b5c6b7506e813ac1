// Batch CLI: lattice generation, derived graphs, rerouting demos with trace
// logs, diagonal-crossing search, percolation sweeps and SVG rendering.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "planar/cycles.hpp"
#include "planar/derived.hpp"
#include "planar/json_io.hpp"
#include "planar/lattice.hpp"
#include "planar/path.hpp"
#include "planar/percolation.hpp"
#include "planar/surgery.hpp"
#include "planar/svg.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

std::uint64_t seed_or_env(std::uint64_t seed, bool seed_set) {
    if (seed_set) return seed;
    if (const char* env = std::getenv("PLANAR_NST_SEED")) return std::strtoull(env, nullptr, 10);
    return 12345;
}

planar::PlaneGraph make_window(const std::string& lattice, std::size_t radius,
                               const std::string& file) {
    planar::WindowSpec spec;
    spec.kind = planar::lattice_kind_from_name(lattice);
    spec.radius = radius;
    spec.file = file;
    return planar::lattice_window(spec);
}

void write_or_print(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text << '\n';
    } else {
        planar::save_text(out, text);
    }
}

// Crossing induced paths for demos: greedy west-east walks, one per west
// port, ordered by closeness to the target latitude.
std::vector<planar::PathSeq> demo_crossing_paths(const planar::SurgeryHost& host,
                                                 std::uint64_t seed, double target_y) {
    const auto& g = host.g;
    std::mt19937_64 rng(seed);
    std::vector<planar::PathSeq> out;
    std::vector<planar::VertexId> wests = g.west_ports;
    std::sort(wests.begin(), wests.end(), [&](planar::VertexId a, planar::VertexId b) {
        return std::abs(g.position(a).y - target_y) < std::abs(g.position(b).y - target_y);
    });
    for (planar::VertexId start : wests) {
        // greedy straight walk: keep x increasing, stay induced
        planar::PathSeq p{{start}, planar::PathClass::finite};
        planar::VertexId cur = start;
        while (true) {
            planar::VertexId next = planar::kNone;
            double best = -1e18;
            for (planar::VertexId nb : host.mg.neighbors(cur)) {
                if (g.position(nb).x <= g.position(cur).x) continue;
                if (std::find(p.verts.begin(), p.verts.end(), nb) != p.verts.end()) continue;
                bool chord = false;
                for (std::size_t i = 0; i + 1 < p.verts.size(); ++i)
                    if (host.mg.adjacent(p.verts[i], nb)) chord = true;
                if (chord) continue;
                const double score = -std::abs(g.position(nb).y - g.position(start).y);
                if (score > best) {
                    best = score;
                    next = nb;
                }
            }
            if (next == planar::kNone) break;
            p.verts.push_back(next);
            cur = next;
            if (g.on_boundary(cur)) break;
        }
        if (g.on_boundary(cur) && p.verts.size() >= 2) {
            p.cls = planar::PathClass::window_crossing;
            try {
                planar::validate_path(g, &host.mg, p);
                if (planar::is_induced(host.mg, p)) out.push_back(p);
            } catch (const planar::PathError&) {
            }
        }
    }
    if (out.empty()) throw planar::PathError("no demo crossing path found");
    return out;
}

int run_render(const std::string& preset, const std::string& out, std::uint64_t seed);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"plane-graph toolkit: lattices, matching/facial graphs, induced-path "
                 "rerouting, site percolation"};
    app.require_subcommand(1);

    std::string lattice = "square", out, format = "json", file, preset = "fig1";
    std::size_t radius = 6, margin = 1, trials = 1000, workers = 1;
    std::uint64_t seed = 0;
    bool seed_set = false, trace_on = false;
    long long pivot = -1;

    auto add_common = [&](CLI::App* cmd, bool with_trials) {
        cmd->add_option("--lattice", lattice, "square|triangular|hexagonal|fig2|fig5|custom");
        cmd->add_option("--radius", radius, "window radius");
        cmd->add_option("--file", file, "custom graph file");
        cmd->add_option("--out", out, "output file (stdout if omitted)");
        cmd->add_option("--format", format, "json|csv|svg");
        cmd->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) {
            seed_set = true;
        });
        if (with_trials) {
            cmd->add_option("--trials", trials, "Monte Carlo trials per evaluation");
            cmd->add_option("--workers", workers, "worker threads");
        }
    };

    auto* gen = app.add_subcommand("gen", "generate a lattice window");
    add_common(gen, false);

    auto* derive = app.add_subcommand("derive", "matching and facial graphs");
    add_common(derive, false);
    std::string what = "matching";
    derive->add_option("--graph", what, "matching|facial|facial-delta");

    auto* surgery = app.add_subcommand("surgery", "reroute a crossing path through a face");
    add_common(surgery, false);
    surgery->add_flag("--trace", trace_on, "emit the per-branch event log");
    surgery->add_option("--face", pivot, "target face id (default: a central face)");

    auto* checkpi = app.add_subcommand("check-pi", "search for a diagonal-crossing witness");
    add_common(checkpi, false);
    checkpi->add_option("--margin", margin, "required face margin");

    auto* perc = app.add_subcommand("percolate", "crossing-probability curve and pc");
    add_common(perc, true);

    auto* cmp = app.add_subcommand("compare-pc", "compare base and matching critical points");
    add_common(cmp, true);

    auto* render = app.add_subcommand("render", "emit a preset SVG");
    add_common(render, false);
    render->add_option("--preset", preset, "fig1|fig2|fig3|fig4|fig5|fig8|fig11|pi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::uint64_t sd = seed_or_env(seed, seed_set);

    try {
        if (gen->parsed()) {
            planar::PlaneGraph g = make_window(lattice, radius, file);
            planar::validate(g);
            if (format == "svg") {
                planar::SvgScene sc;
                sc.add_graph(g);
                write_or_print(out, sc.str());
            } else {
                write_or_print(out, planar::graph_to_json(g));
            }
            return 0;
        }
        if (derive->parsed()) {
            planar::PlaneGraph g = make_window(lattice, radius, file);
            if (what == "matching") {
                const auto mg = planar::matching_graph(g);
                if (format == "svg") {
                    planar::SvgScene sc;
                    sc.add_graph(g);
                    sc.add_diagonals(mg);
                    write_or_print(out, sc.str());
                } else {
                    write_or_print(out, planar::matching_to_json(mg));
                }
            } else {
                const auto fg = what == "facial" ? planar::facial_graph(g)
                                                 : planar::facial_delta(g);
                if (format == "svg") {
                    planar::SvgScene sc;
                    sc.add_graph(fg.graph());
                    sc.add_spokes(fg);
                    write_or_print(out, sc.str());
                } else {
                    write_or_print(out, planar::facial_to_json(fg));
                }
            }
            return 0;
        }
        if (surgery->parsed()) {
            planar::PlaneGraph g = make_window(lattice, radius, file);
            planar::SurgeryHost host = planar::make_surgery_host(planar::empty_triangles(g));
            std::size_t face_id = planar::kNone;
            if (pivot >= 0) {
                face_id = static_cast<std::size_t>(pivot);
            } else {
                // central non-triangular face
                const auto& fs = host.mg.base_faces();
                double best = 1e18;
                for (std::size_t f = 0; f < fs.faces.size(); ++f) {
                    if (f == fs.outer_index || fs.faces[f].size() < 4) continue;
                    double cx = 0, cy = 0;
                    for (auto vtx : fs.faces[f].verts) {
                        cx += host.g.position(vtx).x;
                        cy += host.g.position(vtx).y;
                    }
                    cx /= fs.faces[f].size();
                    cy /= fs.faces[f].size();
                    const double d = cx * cx + cy * cy;
                    if (d < best) {
                        best = d;
                        face_id = f;
                    }
                }
            }
            if (face_id == planar::kNone)
                throw planar::SurgeryError("face", "no non-triangular face in this window");
            double target_y = 0.0;
            for (auto vtx : host.mg.base_faces().faces[face_id].verts)
                target_y += host.g.position(vtx).y;
            target_y /= host.mg.base_faces().faces[face_id].size();
            planar::Trace trace;
            planar::SurgeryOutcome outcome;
            planar::PathSeq nu;
            bool done = false;
            std::string last_error = "no crossing path reached the face";
            for (const auto& candidate : demo_crossing_paths(host, sd, target_y)) {
                trace.clear();
                try {
                    outcome = planar::force_diagonal_witness(host, candidate, face_id, &trace);
                    nu = candidate;
                    done = true;
                    break;
                } catch (const planar::SurgeryError& e) {
                    last_error = e.what();
                }
            }
            if (!done) throw planar::SurgeryError("margin", last_error);
            std::string text = planar::path_to_json(outcome.result, "matching");
            if (format == "svg") {
                planar::SvgScene sc;
                sc.add_graph(host.g);
                sc.add_diagonals(host.mg);
                sc.add_path(host.g, nu, "cycle");
                sc.add_path(host.g, outcome.result, "path");
                text = sc.str();
            }
            write_or_print(out, text);
            if (trace_on) std::cout << planar::trace_json(trace) << '\n';
            return 0;
        }
        if (checkpi->parsed()) {
            planar::PlaneGraph g = make_window(lattice, radius, file);
            const auto mg = planar::matching_graph(g);
            const auto witness = planar::find_diagonal_crossing(mg, margin);
            if (witness) {
                write_or_print(out, planar::path_to_json(*witness, "matching"));
            } else {
                write_or_print(out, "{\"witness\": null, \"note\": "
                                    "\"none at this radius; not a disproof\"}");
            }
            return 0;
        }
        if (perc->parsed()) {
            planar::PlaneGraph g = make_window(lattice, radius, file);
            const auto adj = planar::CsrAdjacency::from(g);
            const auto est = planar::estimate_pc(adj, trials, 13, sd, workers, radius);
            if (format == "csv") {
                write_or_print(out, planar::curve_csv(est, lattice));
            } else {
                std::ostringstream o;
                o << "{\"pc_hat\": " << est.pc_hat << ", \"half_width\": " << est.half_width
                  << ", \"trials\": " << est.trials << ", \"radius\": " << radius << "}";
                write_or_print(out, o.str());
            }
            return 0;
        }
        if (cmp->parsed()) {
            planar::PlaneGraph g = make_window(lattice, radius, file);
            const auto rep = planar::compare_pc(g, trials, sd, workers, radius);
            write_or_print(out, planar::compare_report_json(rep));
            return 0;
        }
        if (render->parsed()) return run_render(preset, out, sd);
    } catch (const planar::SurgeryError& e) {
        std::cerr << "{\"error\": \"" << e.tag << "\", \"what\": \"" << e.what() << "\"}\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return kExitUsage;
}

namespace {

int run_render(const std::string& preset, const std::string& out, std::uint64_t seed) {
    using namespace planar;
    SvgScene sc;
    if (preset == "fig1") {
        PlaneGraph g = lattice_window({LatticeKind::square, 4, {}, ""});
        sc.add_graph(g);
        sc.add_diagonals(matching_graph(g));
    } else if (preset == "fig2") {
        PlaneGraph g = lattice_window({LatticeKind::fig2_gadget, 4, {{0, 0, true}}, ""});
        sc.add_graph(g);
        sc.add_diagonals(matching_graph(g));
    } else if (preset == "fig3") {
        PlaneGraph g = lattice_window({LatticeKind::square, 3, {}, ""});
        sc.add_graph(g);
        sc.add_diagonals(matching_graph(g));
        sc.add_spokes(facial_graph(g));
    } else if (preset == "fig4") {
        // face with outside chords and its exterior cycle
        std::vector<Vec2> pos{{0, 0}, {2, 0}, {4, 0}, {5, 2}, {4, 4},
                              {2, 4}, {0, 4}, {-1, 2}, {2, -1.5}, {-2.2, 2}};
        std::vector<std::pair<VertexId, VertexId>> edges{
            {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0},
            {0, 8}, {8, 2}, {6, 9}, {9, 0}};
        PlaneGraph g = PlaneGraph::from_points(pos, edges);
        sc.add_graph(g);
        const FaceSet fs = faces(g);
        for (std::size_t f = 0; f < fs.faces.size(); ++f) {
            if (f == fs.outer_index) continue;
            if (fs.faces[f].size() == 8) {
                sc.add_cycle(g, exterior_cycle(g, Cycle{fs.faces[f].verts}), "cycle");
            }
        }
    } else if (preset == "fig5") {
        PlaneGraph g = lattice_window({LatticeKind::fig5_strip, 6, {}, ""});
        sc.add_graph(g);
    } else if (preset == "fig8" || preset == "pi") {
        PlaneGraph g = lattice_window({LatticeKind::square, 6, {}, ""});
        if (preset == "pi") {
            const auto mg = matching_graph(g);
            const auto w = find_diagonal_crossing(mg, 1);
            sc.add_graph(g);
            sc.add_diagonals(mg);
            if (w) sc.add_path(g, *w, "path");
        } else {
            SurgeryHost host = make_surgery_host(g);
            Trace trace;
            std::size_t face_id = kNone;
            const auto& fs = host.mg.base_faces();
            double best = 1e18;
            for (std::size_t f = 0; f < fs.faces.size(); ++f) {
                if (f == fs.outer_index || fs.faces[f].size() < 4) continue;
                double cx = 0, cy = 0;
                for (auto vtx : fs.faces[f].verts) {
                    cx += host.g.position(vtx).x;
                    cy += host.g.position(vtx).y;
                }
                cx /= fs.faces[f].size();
                cy /= fs.faces[f].size();
                if (cx * cx + cy * cy < best) {
                    best = cx * cx + cy * cy;
                    face_id = f;
                }
            }
            SurgeryOutcome outcome;
            PathSeq nu;
            bool done = false;
            for (const auto& candidate : demo_crossing_paths(host, seed, 0.0)) {
                trace.clear();
                try {
                    outcome = force_diagonal_witness(host, candidate, face_id, &trace);
                    nu = candidate;
                    done = true;
                    break;
                } catch (const SurgeryError&) {
                }
            }
            if (!done) throw SurgeryError("margin", "demo could not reach the face");
            sc.add_graph(host.g);
            sc.add_diagonals(host.mg);
            sc.add_path(host.g, nu, "cycle");
            sc.add_path(host.g, outcome.result, "path");
        }
    } else if (preset == "fig11") {
        PlaneGraph g = lattice_window({LatticeKind::triangular, 4, {}, ""});
        sc.add_graph(g);
    } else {
        std::cerr << "unknown preset: " << preset << '\n';
        return kExitUsage;
    }
    write_or_print(out, sc.str());
    return 0;
}

}  // namespace
