#include "holonet/commands.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "holonet/analysis.hpp"
#include "holonet/errors.hpp"
#include "holonet/io.hpp"
#include "holonet/words.hpp"

namespace holonet {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const coarseness_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const constraint_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const eval_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

Mode parse_mode(const std::string& mode) {
    if (mode == "dual") return Mode::dual;
    if (mode == "combined") return Mode::combined;
    throw constraint_error("mode must be 'dual' or 'combined'");
}

std::vector<int> parse_vertex_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::size_t s = pos, e = end;
        while (s < e && text[s] == ' ') ++s;
        while (e > s && text[e - 1] == ' ') --e;
        int v = 0;
        const auto res = std::from_chars(text.data() + s, text.data() + e, v);
        if (res.ec != std::errc() || res.ptr != text.data() + e || s == e)
            throw constraint_error("bad vertex id '" + text.substr(pos, end - pos) + "'");
        out.push_back(v);
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',')) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != ',') ++end;
        double v = 0.0;
        const auto res = std::from_chars(text.data() + pos, text.data() + end, v);
        if (res.ec != std::errc() || res.ptr != text.data() + end)
            throw constraint_error("bad real '" + text.substr(pos, end - pos) + "'");
        out.push_back(v);
        pos = end;
    }
    return out;
}

} // namespace

int cmd_subdivide(const SubdivideOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        QuantizeRule rule;
        rule.epsilon = opt.epsilon;
        rule.unit_length = opt.unit;
        if (opt.rule == "floor") rule.count_rule = CountRule::floor;
        else if (opt.rule == "round") rule.count_rule = CountRule::round;
        else throw constraint_error("rule must be 'floor' or 'round'");
        if (opt.zero == "clamp") rule.zero_policy = ZeroPolicy::clamp_to_one;
        else if (opt.zero == "error") rule.zero_policy = ZeroPolicy::error;
        else throw constraint_error("zero policy must be 'clamp' or 'error'");
        const Mode mode = parse_mode(opt.mode);

        const WeightedComplex complex = parse_complex(read_file(opt.input));
        SubdivisionResult result = subdivide(complex, rule, mode);
        for (const std::string& w : result.warnings) err << "warning: " << w << "\n";
        result.net.freeze();

        const ReconstructionReport report = reconstruction_error(complex, rule);
        out << "edges " << complex.edges.size() << " unit " << format_double(rule.effective_unit())
            << " max_error " << format_double(report.max_error) << " mean_error "
            << format_double(report.mean_error) << "\n";

        NetworkDocument doc{EmbeddedNetwork{std::move(result.net), {}},
                            GroupSpec::u1(opt.eps_prime)};
        write_file_atomic(opt.output, serialize_network(doc));
        return 0;
    });
}

int cmd_lattice(const LatticeOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const bool fractions = opt.fx || opt.fy || opt.fd;
        const bool expressions = opt.ax || opt.ay;
        if (fractions && expressions)
            throw constraint_error("give either per-axis fractions or a connection, not both");
        if (expressions && (!opt.ax || !opt.ay))
            throw constraint_error("a connection needs both --Ax and --Ay");

        LatticeSpec spec{opt.rows, opt.cols, opt.spacing, parse_mode(opt.mode)};
        Lattice lat = build_lattice(spec);
        const GroupSpec group = GroupSpec::u1(opt.eps_prime);
        group.validate();

        if (expressions) {
            const ConnectionField conn = ConnectionField::parse(*opt.ax, *opt.ay);
            const CompileReport report = compile_connection(lat, conn, group);
            out << "compiled " << report.edges << " edges, max |theta| "
                << format_double(report.max_abs_theta) << "\n";
        } else {
            if (opt.fx) assign_axis_directions(lat, Axis::horizontal, *opt.fx);
            if (opt.fy) assign_axis_directions(lat, Axis::vertical, *opt.fy);
            if (opt.fd) assign_axis_directions(lat, Axis::diagonal, *opt.fd);
        }

        lat.freeze();
        NetworkDocument doc{std::move(lat.emb), group};
        write_file_atomic(opt.output, serialize_network(doc));
        return 0;
    });
}

int cmd_holonomy(const HolonomyOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const NetworkDocument doc = parse_network(read_file(opt.input));
        const std::vector<int> verts = parse_vertex_list(opt.path);
        if (verts.empty()) throw constraint_error("empty path");

        const Path phase_path = resolve_vertex_path(doc.emb.net, verts, EdgePreference::phase);
        const Path length_path = resolve_vertex_path(doc.emb.net, verts, EdgePreference::length);
        if (opt.loop && verts.front() != verts.back())
            throw constraint_error("--loop requires a closed vertex path");

        const std::vector<int64_t> quanta = path_quanta(doc.emb.net, phase_path, doc.group.d());
        const GroupElement h = opt.loop ? loop_holonomy(doc.emb.net, phase_path, doc.group)
                                        : path_holonomy(doc.emb.net, phase_path, doc.group);

        out << "quanta";
        for (int64_t q : quanta) out << " " << q;
        out << "\n";
        if (doc.group.dim == 1) {
            out << "phase " << format_double(phase_of(h)) << "\n";
        } else {
            for (int r = 0; r < doc.group.dim; ++r) {
                out << "matrix";
                for (int c = 0; c < doc.group.dim; ++c)
                    out << " " << format_double(h.at(r, c).real()) << " "
                        << format_double(h.at(r, c).imag());
                out << "\n";
            }
        }
        out << "length " << format_double(path_length(doc.emb.net, length_path)) << "\n";

        if (!opt.loop) {
            try {
                const auto geo = geodesic_distance(doc.emb.net, verts.front(), verts.back());
                if (geo) out << "geodesic " << format_double(*geo) << "\n";
                else out << "geodesic unreachable\n";
            } catch (const constraint_error&) {
                out << "geodesic n/a (negative distance edges)\n";
            }
        }
        return 0;
    });
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const NetworkDocument doc = parse_network(read_file(opt.input));
        const ConnectionField conn = ConnectionField::parse(opt.ax, opt.ay);
        if (!(opt.tol >= 0.0)) throw constraint_error("tolerance must be >= 0");
        if (opt.all_rects == !opt.loops_file.empty())
            throw constraint_error("give exactly one of --loops or --all-rects");

        struct Row {
            std::string id;
            LoopComparison cmp;
        };
        std::vector<Row> rows;

        if (opt.all_rects) {
            const LatticeView view = LatticeView::reconstruct(doc.emb);
            for (int r0 = 0; r0 < view.rows; ++r0)
                for (int r1 = r0 + 1; r1 < view.rows; ++r1)
                    for (int c0 = 0; c0 < view.cols; ++c0)
                        for (int c1 = c0 + 1; c1 < view.cols; ++c1) {
                            if (opt.even_sides && ((r1 - r0) % 2 != 0 || (c1 - c0) % 2 != 0))
                                continue;
                            const Path loop =
                                rect_loop(doc.emb.net, view, r0, c0, r1, c1);
                            rows.push_back({"rect_" + std::to_string(r0) + "_" +
                                                std::to_string(c0) + "_" + std::to_string(r1) +
                                                "_" + std::to_string(c1),
                                            compare_loop(doc.emb, loop, conn, doc.group)});
                        }
        } else {
            const std::string text = read_file(opt.loops_file);
            std::istringstream lines(text);
            std::string line;
            int k = 0;
            while (std::getline(lines, line)) {
                if (line.empty()) continue;
                const std::vector<int> verts = parse_vertex_list(line);
                if (verts.size() < 2 || verts.front() != verts.back())
                    throw constraint_error("loop " + std::to_string(k) +
                                           " must repeat its start vertex at the end");
                const Path loop = resolve_vertex_path(doc.emb.net, verts, EdgePreference::phase);
                rows.push_back({"loop_" + std::to_string(k),
                                compare_loop(doc.emb, loop, conn, doc.group)});
                ++k;
            }
        }

        std::ostringstream csv;
        csv << "loop_id,discrete_phase,continuum_phase,circle_distance\n";
        int failures = 0;
        for (const Row& row : rows) {
            csv << row.id << "," << format_double(row.cmp.discrete_phase) << ","
                << format_double(row.cmp.continuum_phase) << ","
                << format_double(row.cmp.circle_distance) << "\n";
            if (row.cmp.circle_distance > opt.tol) ++failures;
        }
        write_file_atomic(opt.report, csv.str());

        out << "loops " << rows.size() << " failures " << failures << "\n";
        return failures == 0 ? 0 : 4;
    });
}

int cmd_group(const GroupOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const GroupSpec spec = parse_group_text(read_file(opt.group_file));
        if (opt.mesh == opt.approximate.has_value())
            throw constraint_error("give exactly one of --mesh or --approximate");

        if (opt.mesh) {
            const double radius = mesh_cover_radius(spec, opt.n, opt.samples, opt.seed);
            out << "radius " << format_double(radius) << "\n";
            return 0;
        }

        const std::vector<double> vals = parse_real_list(*opt.approximate);
        GroupElement g(spec.dim);
        if (spec.dim == 1) {
            if (vals.size() != 1)
                throw constraint_error("U(1) target is a single phase in radians");
            g.at(0, 0) = cd(std::cos(vals[0]), std::sin(vals[0]));
        } else {
            const std::size_t want = 2 * static_cast<std::size_t>(spec.dim) * spec.dim;
            if (vals.size() != want)
                throw constraint_error("target needs " + std::to_string(want) +
                                       " reals (row-major re/im pairs)");
            for (int k = 0; k < spec.dim * spec.dim; ++k)
                g.data()[static_cast<std::size_t>(k)] =
                    cd(vals[2 * static_cast<std::size_t>(k)],
                       vals[2 * static_cast<std::size_t>(k) + 1]);
        }

        const ApproxResult res = approximate(spec, g, opt.n);
        out << "alpha";
        for (int a : res.alpha) out << " " << a;
        out << "\n";
        out << "distance " << format_double(res.distance) << "\n";
        return 0;
    });
}

} // namespace holonet
