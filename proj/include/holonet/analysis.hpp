#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holonet/expr.hpp"
#include "holonet/lattice.hpp"

namespace holonet {

// Continuum 1-form A = A_x dx + A_y dy on the plane, the oracle the discrete
// construction is verified against.
struct ConnectionField {
    Expr a_x;
    Expr a_y;

    static ConnectionField parse(const std::string& ax_text, const std::string& ay_text);
};

// Angle wrapped into (-pi, pi].
double wrap_angle(double a);

// Integral of A_x dx + A_y dy along the polyline, adaptive composite Simpson
// per segment to absolute tolerance tol split across segments. Needs at
// least two points; evaluation failures propagate as eval_error.
double line_integral(const ConnectionField& conn, const std::vector<Vec2>& polyline,
                     double tol);

struct LoopComparison {
    int64_t quanta = 0;          // net phase quanta around the loop
    double discrete_phase = 0.0; // eps' * quanta, unwrapped
    double continuum_phase = 0.0;
    double circle_distance = 0.0; // |wrap(discrete - continuum)|
};

// Discrete loop phase against the continuum line integral over the loop's
// embedded polygon. Requires a U(1) spec, a frozen embedded network, and a
// closed path.
LoopComparison compare_loop(const EmbeddedNetwork& emb, const Path& loop,
                            const ConnectionField& conn, const GroupSpec& spec,
                            double tol = 1e-10);

struct PlaquetteInfo {
    int row = 0;  // cell
    int col = 0;
    bool upper = false; // false: (bl, br, tr) triangle; true: (bl, tr, tl)
    int64_t quanta = 0; // net quanta around the CCW boundary
    double curvature = 0.0; // eps' * quanta / (a^2 / 2)
};

// Per-triangle curvature over a frozen embedded lattice, cells row-major,
// lower triangle before upper. Sum of quanta over any cell rectangle equals
// the quanta around its boundary exactly (discrete Stokes identity).
std::vector<PlaquetteInfo> plaquette_curvature(const EmbeddedNetwork& emb,
                                               const GroupSpec& spec);

// Serial reference, kept for testing and benchmarks.
std::vector<PlaquetteInfo> plaquette_curvature_serial(const EmbeddedNetwork& emb,
                                                      const GroupSpec& spec);

} // namespace holonet
