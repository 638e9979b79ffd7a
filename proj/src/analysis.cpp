#include "holonet/analysis.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "holonet/errors.hpp"
#include "holonet/parallel.hpp"

namespace holonet {

ConnectionField ConnectionField::parse(const std::string& ax_text, const std::string& ay_text) {
    return {parse_expr(ax_text), parse_expr(ay_text)};
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

namespace {

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double line_integral(const ConnectionField& conn, const std::vector<Vec2>& polyline,
                     double tol) {
    if (polyline.size() < 2) throw constraint_error("line_integral: need at least two points");
    if (!(tol > 0.0)) throw constraint_error("line_integral: tolerance must be positive");

    const double seg_tol = tol / static_cast<double>(polyline.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const Vec2 p = polyline[i];
        const Vec2 q = polyline[i + 1];
        const double dx = q.x - p.x;
        const double dy = q.y - p.y;
        if (dx == 0.0 && dy == 0.0) continue;
        auto f = [&](double t) {
            const double x = p.x + t * dx;
            const double y = p.y + t * dy;
            double v = 0.0;
            if (dx != 0.0) v += eval_expr(conn.a_x, x, y) * dx;
            if (dy != 0.0) v += eval_expr(conn.a_y, x, y) * dy;
            if (!std::isfinite(v)) throw eval_error("line_integral: non-finite integrand");
            return v;
        };
        const double fa = f(0.0), fm = f(0.5), fb = f(1.0);
        const double whole = (fa + 4.0 * fm + fb) / 6.0;
        total += adaptive_simpson(f, 0.0, 1.0, fa, fm, fb, whole, seg_tol, 48);
    }
    return total;
}

LoopComparison compare_loop(const EmbeddedNetwork& emb, const Path& loop,
                            const ConnectionField& conn, const GroupSpec& spec,
                            double tol) {
    spec.validate();
    if (spec.d() != 1 || spec.dim != 1)
        throw constraint_error("compare_loop: only U(1) groups are supported");
    if (!emb.net.frozen()) throw constraint_error("compare_loop: network must be frozen");
    if (emb.coords.size() != static_cast<std::size_t>(emb.net.vertex_count()))
        throw constraint_error("compare_loop: network is not embedded");
    if (path_end(emb.net, loop) != loop.start)
        throw constraint_error("compare_loop: path is not closed");

    LoopComparison out;
    out.quanta = path_quanta(emb.net, loop, 1)[0];
    out.discrete_phase = spec.eps_prime * static_cast<double>(out.quanta);

    std::vector<Vec2> polygon;
    polygon.reserve(loop.steps.size() + 1);
    polygon.push_back(emb.coords[static_cast<std::size_t>(loop.start)]);
    int at = loop.start;
    for (const Step& s : loop.steps) {
        const Edge& e = emb.net.edge(s.edge);
        at = e.u == at ? e.v : e.u;
        polygon.push_back(emb.coords[static_cast<std::size_t>(at)]);
    }
    out.continuum_phase = line_integral(conn, polygon, tol);
    out.circle_distance = std::abs(wrap_angle(out.discrete_phase - out.continuum_phase));
    return out;
}

namespace {

uint64_t pack_pair(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
           static_cast<uint64_t>(static_cast<uint32_t>(b));
}

struct TriangleScan {
    const EmbeddedNetwork& emb;
    const GroupSpec& spec;
    LatticeView view;
    std::unordered_map<uint64_t, int> phase_edge_of; // unordered pair -> edge id

    TriangleScan(const EmbeddedNetwork& e, const GroupSpec& s)
        : emb(e), spec(s), view(LatticeView::reconstruct(e)) {
        spec.validate();
        if (spec.d() != 1 || spec.dim != 1)
            throw constraint_error("plaquette_curvature: only U(1) groups are supported");
        if (!emb.net.frozen())
            throw constraint_error("plaquette_curvature: network must be frozen");
        if (view.rows < 2 || view.cols < 2)
            throw constraint_error("plaquette_curvature: lattice has no cells");
        for (int id = 0; id < emb.net.edge_count(); ++id) {
            const Edge& e2 = emb.net.edge(id);
            if (e2.kind.tag == EdgeTag::dist || e2.kind.gen != 0) continue;
            const uint64_t k = pack_pair(std::min(e2.u, e2.v), std::max(e2.u, e2.v));
            phase_edge_of.emplace(k, id);
        }
        // Every triangle hop must exist before the parallel scan starts.
        for (int r = 0; r + 1 < view.rows; ++r)
            for (int c = 0; c + 1 < view.cols; ++c) {
                require_edge(view.vertex_at(r, c), view.vertex_at(r, c + 1));
                require_edge(view.vertex_at(r, c), view.vertex_at(r + 1, c));
                require_edge(view.vertex_at(r, c), view.vertex_at(r + 1, c + 1));
                require_edge(view.vertex_at(r + 1, c), view.vertex_at(r + 1, c + 1));
                require_edge(view.vertex_at(r, c + 1), view.vertex_at(r + 1, c + 1));
            }
    }

    void require_edge(int a, int b) const {
        if (!phase_edge_of.contains(pack_pair(std::min(a, b), std::max(a, b))))
            throw constraint_error("plaquette_curvature: not a lattice network");
    }

    // Net quanta of the a -> b hop through the phase-carrying edge.
    int64_t hop(int a, int b) const {
        const auto it = phase_edge_of.find(pack_pair(std::min(a, b), std::max(a, b)));
        const Edge& e = emb.net.edge(it->second);
        return e.u == a ? 1 : -1;
    }

    PlaquetteInfo triangle(int r, int c, bool upper) const {
        const int bl = view.vertex_at(r, c);
        const int br = view.vertex_at(r, c + 1);
        const int tl = view.vertex_at(r + 1, c);
        const int tr = view.vertex_at(r + 1, c + 1);
        // CCW boundaries; the diagonal runs bl -> tr.
        const int64_t q = upper ? hop(bl, tr) + hop(tr, tl) + hop(tl, bl)
                                : hop(bl, br) + hop(br, tr) + hop(tr, bl);
        PlaquetteInfo info;
        info.row = r;
        info.col = c;
        info.upper = upper;
        info.quanta = q;
        const double area = 0.5 * view.spacing * view.spacing;
        info.curvature = spec.eps_prime * static_cast<double>(q) / area;
        return info;
    }
};

} // namespace

std::vector<PlaquetteInfo> plaquette_curvature(const EmbeddedNetwork& emb,
                                               const GroupSpec& spec) {
    const TriangleScan scan(emb, spec);
    const int cells_r = scan.view.rows - 1;
    const int cells_c = scan.view.cols - 1;
    std::vector<PlaquetteInfo> out(static_cast<std::size_t>(cells_r) * cells_c * 2);
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int idx = 0; idx < cells_r * cells_c; ++idx) {
        const int r = idx / cells_c;
        const int c = idx % cells_c;
        out[static_cast<std::size_t>(idx) * 2] = scan.triangle(r, c, false);
        out[static_cast<std::size_t>(idx) * 2 + 1] = scan.triangle(r, c, true);
    }
    return out;
}

std::vector<PlaquetteInfo> plaquette_curvature_serial(const EmbeddedNetwork& emb,
                                                      const GroupSpec& spec) {
    const TriangleScan scan(emb, spec);
    std::vector<PlaquetteInfo> out;
    out.reserve(static_cast<std::size_t>(scan.view.rows - 1) * (scan.view.cols - 1) * 2);
    for (int r = 0; r + 1 < scan.view.rows; ++r)
        for (int c = 0; c + 1 < scan.view.cols; ++c) {
            out.push_back(scan.triangle(r, c, false));
            out.push_back(scan.triangle(r, c, true));
        }
    return out;
}

} // namespace holonet
