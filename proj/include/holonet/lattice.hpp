#pragma once

#include <array>
#include <vector>

#include "holonet/network.hpp"

namespace holonet {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// A network with planar vertex coordinates, used to compare discrete loop
// phases against continuum line integrals.
struct EmbeddedNetwork {
    Network net;
    std::vector<Vec2> coords; // one per vertex when embedded, else empty
};

enum class Axis { horizontal, vertical, diagonal };

// Triangulated grid: horizontal and vertical edges plus one diagonal per
// cell, oriented lower-left to upper-right.
struct LatticeSpec {
    int rows = 1;
    int cols = 1;
    double spacing = 1.0; // embedding only; every edge is one length unit
    Mode mode = Mode::dual;
};

// One grid edge position. In dual mode it owns a distance edge and a
// phase-carrying edge; in combined mode a single comb edge.
struct LatticeEdge {
    Axis axis = Axis::horizontal;
    int r = 0; // grid position of the lower-left endpoint
    int c = 0;
    int phase_edge = -1; // phase edge (dual) or comb edge (combined)
    int dist_edge = -1;  // dual mode only
};

struct Lattice {
    EmbeddedNetwork emb;
    LatticeSpec spec;
    std::vector<LatticeEdge> ledges;
    // Per axis: lines of ledge indices in +axis order. Horizontal lines are
    // rows, vertical lines are columns, diagonal lines group cells with equal
    // c - r.
    std::array<std::vector<std::vector<int>>, 3> lines;

    int vertex_at(int r, int c) const { return r * spec.cols + c; }
    bool frozen() const { return emb.net.frozen(); }

    // Freezes the network and remaps the stored edge ids.
    void freeze();
};

// Vertex grid at spacing a, coordinates (c*a, r*a), vertex id r*cols + c.
// Dual mode: Distance(+1) plus Phase(0) per grid edge, the phase edge
// initially pointing along +axis. Combined mode: one Combined(0) per edge.
Lattice build_lattice(const LatticeSpec& spec);

// Deterministic error diffusion along each line of the axis: an accumulator
// starts at 1/2, gains f per edge, and emits a forward edge whenever it
// exceeds 1 (then drops by 1). Every k-edge prefix ends up with floor(k*f)
// or ceil(k*f) forward edges, and swapping f for 1-f mirrors every decision
// except at exact half-integer ties (f = 1/2 is all ties; no deterministic
// rule can mirror itself there).
void assign_axis_directions(Lattice& lat, Axis axis, double forward_fraction);

struct ConnectionField; // analysis.hpp

struct CompileReport {
    double max_abs_theta = 0.0; // largest per-edge target phase seen
    int edges = 0;
};

// Directs every phase-carrying edge so each axis line carries the connection's
// per-edge target phases theta_e = int_e A, quantized into +-1 quanta by the
// same error diffusion with a per-edge fraction (1 + theta_e/eps')/2.
// Requires a U(1) spec and |theta_e| <= eps' on every edge; a violation means
// the lattice is too coarse for the connection (throws coarseness_error,
// refine the spacing or enlarge eps').
CompileReport compile_connection(Lattice& lat, const ConnectionField& conn,
                                 const GroupSpec& spec, double quad_tol = 1e-10);

// Grid structure recovered from an embedded network's coordinates; throws
// constraint_error when the coordinates do not form a uniform complete grid.
struct LatticeView {
    int rows = 0;
    int cols = 0;
    double spacing = 1.0;
    std::vector<int> grid; // rows*cols -> vertex id

    int vertex_at(int r, int c) const { return grid[static_cast<std::size_t>(r) * cols + c]; }
    static LatticeView reconstruct(const EmbeddedNetwork& emb);
};

// Counter-clockwise boundary of the cell rectangle [r0, r1] x [c0, c1]
// (grid corners), resolved through the preferred edges.
Path rect_loop(const Network& net, const LatticeView& view, int r0, int c0, int r1, int c1,
               EdgePreference pref = EdgePreference::phase);

} // namespace holonet
