#include "holonet/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holonet/analysis.hpp"
#include "holonet/errors.hpp"

namespace holonet {

namespace {

// +axis head vertex for an edge based at (r, c).
void axis_head(Axis axis, int r, int c, int& hr, int& hc) {
    hr = axis == Axis::horizontal ? r : r + 1;
    hc = axis == Axis::vertical ? c : c + 1;
}

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::horizontal: return "horizontal";
        case Axis::vertical: return "vertical";
        case Axis::diagonal: return "diagonal";
    }
    return "?";
}

} // namespace

void Lattice::freeze() {
    const std::vector<int> perm = emb.net.freeze();
    for (LatticeEdge& e : ledges) {
        if (e.phase_edge >= 0) e.phase_edge = perm[static_cast<std::size_t>(e.phase_edge)];
        if (e.dist_edge >= 0) e.dist_edge = perm[static_cast<std::size_t>(e.dist_edge)];
    }
}

Lattice build_lattice(const LatticeSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1)
        throw constraint_error("lattice: rows and cols must be >= 1");
    if (!(spec.spacing > 0.0)) throw constraint_error("lattice: spacing must be positive");

    Lattice lat;
    lat.spec = spec;
    lat.emb.net = Network(spec.mode, 1.0);
    lat.emb.net.add_vertices(spec.rows * spec.cols);
    lat.emb.coords.resize(static_cast<std::size_t>(spec.rows) * spec.cols);
    for (int r = 0; r < spec.rows; ++r)
        for (int c = 0; c < spec.cols; ++c)
            lat.emb.coords[static_cast<std::size_t>(lat.vertex_at(r, c))] =
                {c * spec.spacing, r * spec.spacing};

    auto add_grid_edge = [&](Axis axis, int r, int c) {
        int hr, hc;
        axis_head(axis, r, c, hr, hc);
        const int u = lat.vertex_at(r, c);
        const int v = lat.vertex_at(hr, hc);
        LatticeEdge le{axis, r, c, -1, -1};
        if (spec.mode == Mode::dual) {
            le.dist_edge = lat.emb.net.add_edge(u, v, EdgeKind::dist(1));
            le.phase_edge = lat.emb.net.add_edge(u, v, EdgeKind::phase(0));
        } else {
            le.phase_edge = lat.emb.net.add_edge(u, v, EdgeKind::comb(0));
        }
        lat.ledges.push_back(le);
        return static_cast<int>(lat.ledges.size()) - 1;
    };

    auto& hlines = lat.lines[static_cast<int>(Axis::horizontal)];
    for (int r = 0; r < spec.rows; ++r) {
        std::vector<int> line;
        for (int c = 0; c + 1 < spec.cols; ++c) line.push_back(add_grid_edge(Axis::horizontal, r, c));
        if (!line.empty()) hlines.push_back(std::move(line));
    }
    auto& vlines = lat.lines[static_cast<int>(Axis::vertical)];
    for (int c = 0; c < spec.cols; ++c) {
        std::vector<int> line;
        for (int r = 0; r + 1 < spec.rows; ++r) line.push_back(add_grid_edge(Axis::vertical, r, c));
        if (!line.empty()) vlines.push_back(std::move(line));
    }
    // Diagonal lines: cells sharing c - r, walked upward.
    auto& dlines = lat.lines[static_cast<int>(Axis::diagonal)];
    for (int k = -(spec.rows - 2); k <= spec.cols - 2; ++k) {
        std::vector<int> line;
        for (int r = 0; r + 1 < spec.rows; ++r) {
            const int c = r + k;
            if (c < 0 || c + 1 >= spec.cols) continue;
            line.push_back(add_grid_edge(Axis::diagonal, r, c));
        }
        if (!line.empty()) dlines.push_back(std::move(line));
    }
    return lat;
}

namespace {

// Shared quantizer: walks one line, deciding forward/reverse per edge from
// the per-edge fraction, and applies the decision to the stored direction.
template <typename FracFn>
void diffuse_line(Lattice& lat, const std::vector<int>& line, FracFn&& fraction) {
    double acc = 0.5;
    for (int idx : line) {
        const LatticeEdge& le = lat.ledges[static_cast<std::size_t>(idx)];
        acc += fraction(le);
        bool forward = false;
        if (acc > 1.0) {
            forward = true;
            acc -= 1.0;
        }
        int hr, hc;
        axis_head(le.axis, le.r, le.c, hr, hc);
        const int base = lat.vertex_at(le.r, le.c);
        const int head = lat.vertex_at(hr, hc);
        const Edge& e = lat.emb.net.edge(le.phase_edge);
        const int want_u = forward ? base : head;
        if (e.u != want_u) lat.emb.net.flip_edge(le.phase_edge);
    }
}

} // namespace

void assign_axis_directions(Lattice& lat, Axis axis, double forward_fraction) {
    if (lat.frozen()) throw constraint_error("lattice: network is frozen");
    if (!(forward_fraction >= 0.0 && forward_fraction <= 1.0))
        throw constraint_error("lattice: forward fraction must lie in [0, 1]");
    const auto& lines = lat.lines[static_cast<int>(axis)];
    if (lines.empty())
        throw constraint_error(std::string("lattice: no ") + axis_name(axis) + " edges");
    for (const auto& line : lines)
        diffuse_line(lat, line, [&](const LatticeEdge&) { return forward_fraction; });
}

CompileReport compile_connection(Lattice& lat, const ConnectionField& conn,
                                 const GroupSpec& spec, double quad_tol) {
    if (lat.frozen()) throw constraint_error("lattice: network is frozen");
    spec.validate();
    if (spec.d() != 1 || spec.dim != 1)
        throw constraint_error("compile_connection: only U(1) connections are supported");
    const double eps = spec.eps_prime;

    CompileReport report;
    for (const auto& axis_lines : lat.lines) {
        for (const auto& line : axis_lines) {
            // Precompute targets so the coarseness check fails before any
            // direction on this line is touched.
            std::vector<double> theta(line.size());
            for (std::size_t i = 0; i < line.size(); ++i) {
                const LatticeEdge& le = lat.ledges[static_cast<std::size_t>(line[i])];
                int hr, hc;
                axis_head(le.axis, le.r, le.c, hr, hc);
                const Vec2 p = lat.emb.coords[static_cast<std::size_t>(lat.vertex_at(le.r, le.c))];
                const Vec2 q = lat.emb.coords[static_cast<std::size_t>(lat.vertex_at(hr, hc))];
                theta[i] = line_integral(conn, {p, q}, quad_tol);
                report.max_abs_theta = std::max(report.max_abs_theta, std::abs(theta[i]));
                if (std::abs(theta[i]) > eps)
                    throw coarseness_error(
                        "compile_connection: per-edge target phase " + std::to_string(theta[i]) +
                        " exceeds eps' = " + std::to_string(eps) +
                        "; refine the lattice spacing or enlarge eps'");
                ++report.edges;
            }
            std::size_t i = 0;
            diffuse_line(lat, line, [&](const LatticeEdge&) {
                return 0.5 * (1.0 + theta[i++] / eps);
            });
        }
    }
    return report;
}

LatticeView LatticeView::reconstruct(const EmbeddedNetwork& emb) {
    const int v = emb.net.vertex_count();
    if (static_cast<int>(emb.coords.size()) != v || v == 0)
        throw constraint_error("lattice view: network is not embedded");

    auto levels = [&](auto proj) {
        std::vector<double> vals;
        vals.reserve(static_cast<std::size_t>(v));
        for (const Vec2& p : emb.coords) vals.push_back(proj(p));
        std::sort(vals.begin(), vals.end());
        std::vector<double> uniq;
        for (double x : vals)
            if (uniq.empty() || x - uniq.back() > 1e-9) uniq.push_back(x);
        return uniq;
    };
    const std::vector<double> xs = levels([](const Vec2& p) { return p.x; });
    const std::vector<double> ys = levels([](const Vec2& p) { return p.y; });

    LatticeView view;
    view.cols = static_cast<int>(xs.size());
    view.rows = static_cast<int>(ys.size());
    if (view.rows * view.cols != v)
        throw constraint_error("lattice view: coordinates do not form a complete grid");

    double step = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double dx = xs[i] - xs[i - 1];
        if (step == 0.0) step = dx;
        else if (std::abs(dx - step) > 1e-9)
            throw constraint_error("lattice view: non-uniform grid spacing");
    }
    for (std::size_t i = 1; i < ys.size(); ++i) {
        const double dy = ys[i] - ys[i - 1];
        if (step == 0.0) step = dy;
        else if (std::abs(dy - step) > 1e-9)
            throw constraint_error("lattice view: non-uniform grid spacing");
    }
    view.spacing = step > 0.0 ? step : 1.0;

    auto level_of = [](const std::vector<double>& ls, double x) {
        const auto it = std::lower_bound(ls.begin(), ls.end(), x - 1e-9);
        return static_cast<int>(it - ls.begin());
    };
    view.grid.assign(static_cast<std::size_t>(view.rows) * view.cols, -1);
    for (int id = 0; id < v; ++id) {
        const Vec2& p = emb.coords[static_cast<std::size_t>(id)];
        const int r = level_of(ys, p.y);
        const int c = level_of(xs, p.x);
        int& cell = view.grid[static_cast<std::size_t>(r) * view.cols + c];
        if (cell != -1)
            throw constraint_error("lattice view: two vertices share a grid point");
        cell = id;
    }
    return view;
}

Path rect_loop(const Network& net, const LatticeView& view, int r0, int c0, int r1, int c1,
               EdgePreference pref) {
    if (r0 >= r1 || c0 >= c1 || r0 < 0 || c0 < 0 || r1 >= view.rows || c1 >= view.cols)
        throw constraint_error("rect_loop: invalid rectangle");
    std::vector<int> verts;
    for (int c = c0; c <= c1; ++c) verts.push_back(view.vertex_at(r0, c));
    for (int r = r0 + 1; r <= r1; ++r) verts.push_back(view.vertex_at(r, c1));
    for (int c = c1 - 1; c >= c0; --c) verts.push_back(view.vertex_at(r1, c));
    for (int r = r1 - 1; r >= r0; --r) verts.push_back(view.vertex_at(r, c0));
    return resolve_vertex_path(net, verts, pref);
}

} // namespace holonet
