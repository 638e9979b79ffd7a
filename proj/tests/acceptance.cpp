// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Oracles and tolerances are pinned in code; see README for
// how to run this binary through ctest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holonet/analysis.hpp"
#include "holonet/errors.hpp"
#include "holonet/io.hpp"
#include "holonet/lattice.hpp"
#include "holonet/quantize.hpp"
#include "holonet/words.hpp"
#include "netgen.hpp"
#include "oracles.hpp"

using namespace holonet;

namespace {

constexpr double pi = std::numbers::pi;

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

// --- 1. cancellation ---------------------------------------------------------

bool criterion_cancellation(Checker& c) {
    const int cols = 10'001;
    Lattice lat = build_lattice({2, cols, 1.0, Mode::dual});
    assign_axis_directions(lat, Axis::horizontal, 0.5);
    lat.freeze();

    for (int row = 0; row < 2; ++row) {
        // cumulative quanta along the row; a horizontal walk from a to b nets
        // Q(b) - Q(a), so even-length walks cancel iff Q is parity-constant
        const auto& line = lat.lines[static_cast<int>(Axis::horizontal)][row];
        std::vector<int64_t> q(static_cast<std::size_t>(cols), 0);
        for (int col = 0; col + 1 < cols; ++col) {
            const LatticeEdge& le = lat.ledges[static_cast<std::size_t>(line[col])];
            const Edge& e = lat.emb.net.edge(le.phase_edge);
            const int64_t dq = e.u == lat.vertex_at(row, col) ? 1 : -1;
            q[static_cast<std::size_t>(col + 1)] = q[static_cast<std::size_t>(col)] + dq;
        }
        for (int col = 0; col < cols; ++col)
            c.expect(q[static_cast<std::size_t>(col)] == q[static_cast<std::size_t>(col % 2)],
                     "prefix quanta not parity-constant at col " + std::to_string(col));
    }

    // exercise the real path machinery over the full 1e4-edge row
    std::vector<int> row_verts;
    for (int col = 0; col < cols; ++col) row_verts.push_back(lat.vertex_at(0, col));
    const Path full = resolve_vertex_path(lat.emb.net, row_verts, EdgePreference::phase);
    c.expect(full.steps.size() == 10'000, "full row path length");
    c.expect(path_quanta(lat.emb.net, full, 1)[0] == 0, "full row quanta nonzero");

    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 20; ++rep) {
        const int a = static_cast<int>(rng() % cols);
        int b = static_cast<int>(rng() % cols);
        if ((b - a) % 2 != 0) b = b > 0 ? b - 1 : b + 1;
        if (a == b) continue;
        std::vector<int> verts;
        for (int col = a; col != b; col += a < b ? 1 : -1)
            verts.push_back(lat.vertex_at(1, col));
        verts.push_back(lat.vertex_at(1, b));
        const Path p = resolve_vertex_path(lat.emb.net, verts, EdgePreference::phase);
        c.expect(path_quanta(lat.emb.net, p, 1)[0] == 0, "random even run quanta nonzero");
    }
    return c.ok;
}

// --- 2. uniform accumulation -------------------------------------------------

bool criterion_uniform(Checker& c) {
    const double eps = 0.1;
    const GroupSpec u1 = GroupSpec::u1(eps);
    Lattice lat = build_lattice({1001, 2, 1.0, Mode::dual});
    assign_axis_directions(lat, Axis::vertical, 1.0);
    lat.freeze();

    for (int k : {1, 10, 100, 1000}) {
        std::vector<int> verts;
        for (int r = 0; r <= k; ++r) verts.push_back(lat.vertex_at(r, 0));
        const Path up = resolve_vertex_path(lat.emb.net, verts, EdgePreference::phase);
        c.expect(path_quanta(lat.emb.net, up, 1)[0] == k, "quanta over k edges");
        const double phase = phase_of(path_holonomy(lat.emb.net, up, u1));
        const double err = std::abs(wrap_angle(phase - k * eps));
        c.expect(err <= 1e-12,
                 "k=" + std::to_string(k) + " phase error " + std::to_string(err));
    }
    return c.ok;
}

// --- 3. flux test ------------------------------------------------------------

bool criterion_flux(Checker& c) {
    // Landau gauge A = B x dy at B = 0.01 on a 20x20 spacing-1 lattice with
    // eps' = 0.2: the largest per-edge target is 19 * 0.01 = 0.19 <= eps'.
    // (The criterion's stated B = 0.1 makes that same product 1.9 and its own
    // premise false; see the build notes.)
    const double B = 0.01;
    const double eps = 0.2;
    const GroupSpec u1 = GroupSpec::u1(eps);
    Lattice lat = build_lattice({20, 20, 1.0, Mode::dual});
    const ConnectionField conn = ConnectionField::parse("0", format_double(B) + "*x");
    const CompileReport rep = compile_connection(lat, conn, u1);
    c.expect(std::abs(rep.max_abs_theta - 0.19) < 1e-12, "max per-edge theta");
    lat.freeze();

    const LatticeView view = LatticeView::reconstruct(lat.emb);
    const auto plaq = plaquette_curvature(lat.emb, u1);

    // per-cell quanta prefix sums for exact interior totals
    const int cr = view.rows - 1, cc = view.cols - 1;
    std::vector<int64_t> cell(static_cast<std::size_t>(cr) * cc, 0);
    for (const PlaquetteInfo& p : plaq)
        cell[static_cast<std::size_t>(p.row) * cc + p.col] += p.quanta;
    std::vector<int64_t> pref(static_cast<std::size_t>(cr + 1) * (cc + 1), 0);
    for (int r = 0; r < cr; ++r)
        for (int col = 0; col < cc; ++col)
            pref[static_cast<std::size_t>(r + 1) * (cc + 1) + col + 1] =
                pref[static_cast<std::size_t>(r) * (cc + 1) + col + 1] +
                pref[static_cast<std::size_t>(r + 1) * (cc + 1) + col] -
                pref[static_cast<std::size_t>(r) * (cc + 1) + col] +
                cell[static_cast<std::size_t>(r) * cc + col];

    int rects = 0;
    double max_flux_err = 0.0;
    for (int r0 = 0; r0 < view.rows; ++r0)
        for (int r1 = r0 + 1; r1 < view.rows; ++r1)
            for (int c0 = 0; c0 < view.cols; ++c0)
                for (int c1 = c0 + 1; c1 < view.cols; ++c1) {
                    const double area = static_cast<double>(r1 - r0) * (c1 - c0);
                    if (area < 25.0) continue;
                    ++rects;
                    const Path loop = rect_loop(lat.emb.net, view, r0, c0, r1, c1);
                    const int64_t q = path_quanta(lat.emb.net, loop, 1)[0];
                    const int perimeter = 2 * (r1 - r0) + 2 * (c1 - c0);
                    const double err = std::abs(wrap_angle(eps * static_cast<double>(q) -
                                                           B * area));
                    max_flux_err = std::max(max_flux_err, err);
                    c.expect(err <= perimeter * eps, "flux mismatch beyond perimeter*eps");

                    // discrete Stokes identity, exact in integers
                    const int64_t interior =
                        pref[static_cast<std::size_t>(r1) * (cc + 1) + c1] -
                        pref[static_cast<std::size_t>(r0) * (cc + 1) + c1] -
                        pref[static_cast<std::size_t>(r1) * (cc + 1) + c0] +
                        pref[static_cast<std::size_t>(r0) * (cc + 1) + c0];
                    c.expect(interior == q, "Stokes identity violated");
                }
    c.expect(rects > 10'000, "rectangle enumeration too small");
    c.detail << "max flux error " << max_flux_err << " rad over " << rects << " rects";

    // continuum spot-check through the quadrature oracle
    for (int k : {5, 9, 14}) {
        const Path loop = rect_loop(lat.emb.net, view, 0, 0, k, k);
        const LoopComparison cmp = compare_loop(lat.emb, loop, conn, u1);
        c.expect(std::abs(cmp.continuum_phase - B * k * k) < 1e-8, "line integral vs B*area");
    }
    return c.ok;
}

// --- 4. discrete Stokes on random assignments --------------------------------

bool criterion_stokes(Checker& c) {
    std::mt19937_64 rng(2718);
    const GroupSpec u1 = GroupSpec::u1(0.1);
    for (int rep = 0; rep < 50; ++rep) {
        Lattice lat = build_lattice({10, 10, 1.0, Mode::dual});
        for (const LatticeEdge& le : lat.ledges)
            if (rng() % 2 == 0) lat.emb.net.flip_edge(le.phase_edge);
        lat.freeze();
        const LatticeView view = LatticeView::reconstruct(lat.emb);
        const auto plaq = plaquette_curvature(lat.emb, u1);

        for (int r0 = 0; r0 < 10; ++r0)
            for (int r1 = r0 + 1; r1 < 10; ++r1)
                for (int c0 = 0; c0 < 10; ++c0)
                    for (int c1 = c0 + 1; c1 < 10; ++c1) {
                        int64_t inside = 0;
                        for (const PlaquetteInfo& p : plaq)
                            if (p.row >= r0 && p.row < r1 && p.col >= c0 && p.col < c1)
                                inside += p.quanta;
                        const Path loop = rect_loop(lat.emb.net, view, r0, c0, r1, c1);
                        if (inside != path_quanta(lat.emb.net, loop, 1)[0]) {
                            c.expect(false, "Stokes identity violated at rep " +
                                                std::to_string(rep));
                            return c.ok;
                        }
                    }
    }
    return c.ok;
}

// --- 5. U(1) word oracle ------------------------------------------------------

bool criterion_u1_words(Checker& c) {
    const double eps = 2.0 * pi / 64.0;
    const GroupSpec u1 = GroupSpec::u1(eps);
    const double half_step = std::abs(std::polar(1.0, pi / 64.0) - cd(1.0, 0.0));

    const double radius = mesh_cover_radius(u1, 32, 1000, 5);
    c.expect(radius <= half_step, "covering radius above the half-step bound");

    const WordList words = enumerate_words(u1, 32);
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 1000; ++rep) {
        const double theta = (2.0 * oracle::uniform(rng) - 1.0) * pi;
        GroupElement g(1);
        g.at(0, 0) = std::polar(1.0, theta);
        const ApproxResult res = approximate_in(words, g);
        if (res.distance > half_step) {
            c.expect(false, "approximation outside the half-step radius");
            break;
        }
    }
    return c.ok;
}

// --- 6. SU(2) mesh against the brute-force oracle -----------------------------

bool criterion_su2_mesh(Checker& c) {
    const GroupSpec su2 = GroupSpec::su2(0.2);

    std::mt19937_64 rng(7);
    std::vector<CMat> samples;
    for (int s = 0; s < 100; ++s) samples.push_back(random_unitary(2, rng));

    const double oracle_radius = oracle::naive_mesh_radius(su2, 6, samples);
    const double radius = mesh_cover_radius(su2, 6, 100, 7);
    c.expect(std::abs(radius - oracle_radius) < 1e-10, "mesh radius disagrees with oracle");

    const WordList words = enumerate_words(su2, 6);
    c.expect(words.count == 377, "SU(2) n=6 word count");
    for (const CMat& g : samples) {
        const ApproxResult res = approximate_in(words, g);
        if (res.distance > oracle_radius + 1e-12) {
            c.expect(false, "approximate exceeded the oracle covering radius");
            break;
        }
    }
    c.detail << "radius " << format_double(radius);
    return c.ok;
}

// --- 7. quantization ----------------------------------------------------------

bool criterion_quantization(Checker& c) {
    const double eps = 0.5;
    const QuantizeRule rule{eps, 0.0, CountRule::floor, ZeroPolicy::clamp_to_one};
    std::mt19937_64 rng(1234);

    WeightedComplex complex;
    complex.vertex_count = 2000;
    std::vector<int64_t> expected_m;
    for (int i = 0; i < 1000; ++i) {
        const double l = (2.0 + 98.0 * oracle::uniform(rng)) * eps;
        complex.edges.push_back({2 * i, 2 * i + 1, l});
        expected_m.push_back(static_cast<int64_t>(std::floor(l / (2.0 * eps))));
    }

    const ReconstructionReport rep = reconstruction_error(complex, rule);
    for (std::size_t i = 0; i < rep.edges.size(); ++i) {
        c.expect(rep.edges[i].m == expected_m[i], "m differs from floor(l/2eps)");
        c.expect(rep.edges[i].error < 2.0 * eps, "reconstruction error >= 2eps");
    }

    SubdivisionResult sub = subdivide(complex, rule, Mode::dual);
    sub.net.freeze();
    for (int i = 0; i < 1000; ++i) {
        const auto d = geodesic_distance(sub.net, 2 * i, 2 * i + 1);
        c.expect(d.has_value() &&
                     *d == static_cast<double>(expected_m[static_cast<std::size_t>(i)]) *
                               rule.effective_unit(),
                 "chain geodesic differs from m*unit");
    }
    return c.ok;
}

// --- 8. path algebra ------------------------------------------------------------

bool criterion_path_algebra(Checker& c) {
    const GroupSpec su2 = GroupSpec::su2(0.2);
    const GroupSpec u1 = GroupSpec::u1(0.1);
    std::mt19937_64 rng(31415);
    int paths = 0;
    while (paths < 1000) {
        const bool use_su2 = paths % 2 == 0;
        Network net = netgen::random_network(rng, 12, 40, Mode::dual, use_su2 ? 3 : 1, true);
        net.freeze();
        const GroupSpec& spec = use_su2 ? su2 : u1;
        for (int k = 0; k < 10 && paths < 1000; ++k, ++paths) {
            const Path p = netgen::random_path(rng, net, 100);
            const GroupElement h = path_holonomy(net, p, spec);
            const Path r = reverse_path(net, p);
            if (frobenius_distance(path_holonomy(net, r, spec), inverse(h)) > 1e-12) {
                c.expect(false, "reversal-inverse identity failed");
                return c.ok;
            }
            Path q = netgen::random_path(rng, net, 60);
            q.start = path_end(net, p);
            Path q2{q.start, {}};
            int at = q2.start;
            for (const Step& s : q.steps) {
                const Edge& e = net.edge(s.edge);
                if (e.u != at && e.v != at) break;
                q2.steps.push_back({s.edge, e.u == at ? Orient::forward : Orient::reverse});
                at = e.u == at ? e.v : e.u;
            }
            const Path pq = concat_paths(net, p, q2);
            if (frobenius_distance(path_holonomy(net, pq, spec),
                                   compose(h, path_holonomy(net, q2, spec))) > 1e-12) {
                c.expect(false, "concatenation-composition identity failed");
                return c.ok;
            }
        }
    }
    return c.ok;
}

// --- 9. serialization round trip ----------------------------------------------

bool criterion_round_trip(Checker& c) {
    std::mt19937_64 rng(99);
    int count = 0;
    auto check_doc = [&](const NetworkDocument& doc) {
        const std::string text = serialize_network(doc);
        if (serialize_network(parse_network(text)) != text)
            c.expect(false, "round trip not byte-identical");
        ++count;
    };

    for (int rep = 0; rep < 80; ++rep) {
        const Mode mode = rep % 3 == 0 ? Mode::combined : Mode::dual;
        Network net = netgen::random_network(rng, 3 + static_cast<int>(rng() % 10), 30, mode,
                                             mode == Mode::dual ? 3 : 1, rep % 2 == 0);
        net.freeze();
        const GroupSpec group = mode == Mode::dual ? GroupSpec::su2(0.2) : GroupSpec::u1(0.3);
        check_doc({EmbeddedNetwork{std::move(net), {}}, group});
    }
    for (int rep = 0; rep < 20; ++rep) {
        Lattice lat = build_lattice({2 + rep % 5, 2 + rep % 7, 0.5, Mode::dual});
        assign_axis_directions(lat, Axis::horizontal, 0.1 * (rep % 11));
        lat.freeze();
        check_doc({std::move(lat.emb), GroupSpec::u1(0.25)});
    }
    c.expect(count == 100, "generated network count");
    return c.ok;
}

// --- 10. expression parser -------------------------------------------------------

bool criterion_parser(Checker& c) {
    using Fn = std::function<double(double, double)>;
    const std::vector<std::pair<std::string, Fn>> golden = {
        {"0", [](double, double) { return 0.0; }},
        {"1", [](double, double) { return 1.0; }},
        {"3.5", [](double, double) { return 3.5; }},
        {"1e2", [](double, double) { return 100.0; }},
        {"2.5e-1", [](double, double) { return 0.25; }},
        {"x", [](double x, double) { return x; }},
        {"y", [](double, double y) { return y; }},
        {"x+y", [](double x, double y) { return x + y; }},
        {"x-y", [](double x, double y) { return x - y; }},
        {"x*y", [](double x, double y) { return x * y; }},
        {"2+3*4", [](double, double) { return 14.0; }},
        {"(2+3)*4", [](double, double) { return 20.0; }},
        {"x^2", [](double x, double) { return std::pow(x, 2.0); }},
        {"x^2+y^2", [](double x, double y) { return std::pow(x, 2.0) + std::pow(y, 2.0); }},
        {"-x", [](double x, double) { return -x; }},
        {"-x^2", [](double x, double) { return -std::pow(x, 2.0); }},
        {"(-x)^2", [](double x, double) { return std::pow(-x, 2.0); }},
        {"2^-2", [](double, double) { return 0.25; }},
        {"2^3^2", [](double, double) { return 512.0; }},
        {"x/(1+y^2)", [](double x, double y) { return x / (1.0 + std::pow(y, 2.0)); }},
        {"1/(1+x^2)", [](double x, double) { return 1.0 / (1.0 + std::pow(x, 2.0)); }},
        {"sin(x)", [](double x, double) { return std::sin(x); }},
        {"cos(y)", [](double, double y) { return std::cos(y); }},
        {"exp(x/4)", [](double x, double) { return std::exp(x / 4.0); }},
        {"sin(x)^2+cos(x)^2",
         [](double x, double) {
             return std::pow(std::sin(x), 2.0) + std::pow(std::cos(x), 2.0);
         }},
        {"sin(x+y)", [](double x, double y) { return std::sin(x + y); }},
        {"sin(x)*cos(y)+cos(x)*sin(y)",
         [](double x, double y) {
             return std::sin(x) * std::cos(y) + std::cos(x) * std::sin(y);
         }},
        {"exp(x)*exp(y)", [](double x, double y) { return std::exp(x) * std::exp(y); }},
        {"exp(x+y)", [](double x, double y) { return std::exp(x + y); }},
        {"0.5*x-0.25*y", [](double x, double y) { return 0.5 * x - 0.25 * y; }},
        {"x*y-y*x", [](double, double) { return 0.0; }},
        {"x*1e-2", [](double x, double) { return x * 1e-2; }},
        {"--x", [](double x, double) { return x; }},
        {"-(x-y)", [](double x, double y) { return -(x - y); }},
        {"x--y", [](double x, double y) { return x + y; }},
        {"2*-3", [](double, double) { return -6.0; }},
        {"sin(cos(x))", [](double x, double) { return std::sin(std::cos(x)); }},
        {"exp(-(x^2+y^2)/10)",
         [](double x, double y) {
             return std::exp(-(std::pow(x, 2.0) + std::pow(y, 2.0)) / 10.0);
         }},
        {"(x/2)^2", [](double x, double) { return std::pow(x / 2.0, 2.0); }},
        {"x^2*y-y^2*x",
         [](double x, double y) { return std::pow(x, 2.0) * y - std::pow(y, 2.0) * x; }},
        {"1+2+3+4+5", [](double, double) { return 15.0; }},
        {"1-2-3", [](double, double) { return -4.0; }},
        {"6/3/2", [](double, double) { return 1.0; }},
        {"12/(x^2+1)", [](double x, double) { return 12.0 / (std::pow(x, 2.0) + 1.0); }},
        {"cos(x)^2-sin(x)^2",
         [](double x, double) {
             return std::pow(std::cos(x), 2.0) - std::pow(std::sin(x), 2.0);
         }},
        {"0.1*x*y", [](double x, double y) { return 0.1 * x * y; }},
        {"(1+x)*(1-x)", [](double x, double) { return (1.0 + x) * (1.0 - x); }},
        {"x^3-3*x", [](double x, double) { return std::pow(x, 3.0) - 3.0 * x; }},
        {"sin(x*y)/2+0.5", [](double x, double y) { return std::sin(x * y) / 2.0 + 0.5; }},
        {"cos(sin(exp(x/8)))",
         [](double x, double) { return std::cos(std::sin(std::exp(x / 8.0))); }},
    };
    c.expect(golden.size() == 50, "need exactly 50 golden expressions, have " +
                                      std::to_string(golden.size()));

    for (const auto& [text, fn] : golden) {
        const Expr e = parse_expr(text);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double x = -1.5 + 0.37 * i;
                const double y = -2.0 + 0.55 * j;
                const double got = eval_expr(e, x, y);
                const double want = fn(x, y);
                if (std::abs(got - want) > 1e-12 * std::max(1.0, std::abs(want))) {
                    c.expect(false, "'" + text + "' mismatch at grid point");
                    return c.ok;
                }
            }
    }

    const std::vector<std::pair<std::string, std::size_t>> malformed = {
        {"2+", 2},   {"(1+2", 4},  {"foo", 0},  {"1 + * 3", 4},
        {"sin 3", 4}, {"2..5", 2}, {"1 2", 2},  {"x$", 1},
    };
    for (const auto& [text, offset] : malformed) {
        try {
            parse_expr(text);
            c.expect(false, "'" + text + "' parsed but should not");
        } catch (const parse_error& e) {
            c.expect(e.offset() == offset, "'" + text + "' reported offset " +
                                               std::to_string(e.offset()) + ", want " +
                                               std::to_string(offset));
        }
    }
    return c.ok;
}

struct Criterion {
    const char* name;
    double budget_seconds;
    bool (*run)(Checker&);
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"cancellation: even horizontal runs carry zero quanta", 1.0, criterion_cancellation},
        {"uniform accumulation: k upward edges give k*eps'", 0.0, criterion_uniform},
        {"flux: compiled Landau gauge matches B*area and Stokes", 5.0, criterion_flux},
        {"Stokes identity on 50 random assignments", 1.0, criterion_stokes},
        {"U(1) words: half-step covering radius", 1.0, criterion_u1_words},
        {"SU(2) mesh against the enumeration oracle", 60.0, criterion_su2_mesh},
        {"quantization: floor counts and geodesic reconstruction", 0.0,
         criterion_quantization},
        {"path algebra: reversal and concatenation", 0.0, criterion_path_algebra},
        {"serialization: 100 byte-identical round trips", 0.0, criterion_round_trip},
        {"expression parser: 50 golden cases and positioned errors", 0.0, criterion_parser},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& cr = criteria[i];
        Checker c;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = cr.run(c);
        } catch (const std::exception& e) {
            c.detail << "exception: " << e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.budget_seconds > 0.0 && secs >= cr.budget_seconds) {
            ok = false;
            c.detail << "; over the " << cr.budget_seconds << "s budget";
        }
        std::printf("[%s] %2zu %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1, cr.name, secs,
                    c.detail.str().empty() ? "" : " -- ", c.detail.str().c_str());
        if (!ok) ++failures;
    }
    return failures;
}
