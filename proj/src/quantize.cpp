#include "holonet/quantize.hpp"

#include <cmath>

#include "holonet/errors.hpp"
#include "holonet/parallel.hpp"

namespace holonet {

void WeightedComplex::validate() const {
    if (vertex_count < 0) throw constraint_error("complex: negative vertex count");
    for (const WEdge& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw constraint_error("complex: edge endpoint out of range");
        if (e.u == e.v) throw constraint_error("complex: self-loops are not allowed");
        if (!std::isfinite(e.length) || e.length == 0.0)
            throw constraint_error("complex: edge lengths must be finite and nonzero");
    }
}

void QuantizeRule::validate() const {
    if (!(epsilon > 0.0)) throw constraint_error("quantize: epsilon must be positive");
    if (!(effective_unit() > 0.0)) throw constraint_error("quantize: unit length must be positive");
}

int64_t QuantizeRule::raw_count(double length) const {
    const double x = std::abs(length) / (2.0 * epsilon);
    return count_rule == CountRule::floor ? static_cast<int64_t>(std::floor(x))
                                          : static_cast<int64_t>(std::llround(x));
}

int64_t QuantizeRule::count_for(double length, bool* zero_clamped) const {
    int64_t m = raw_count(length);
    if (zero_clamped) *zero_clamped = false;
    if (m == 0) {
        if (zero_policy == ZeroPolicy::error)
            throw constraint_error("quantize: edge of length " + std::to_string(length) +
                                   " quantizes to zero edges");
        m = 1;
        if (zero_clamped) *zero_clamped = true;
    }
    return m;
}

SubdivisionResult subdivide(const WeightedComplex& complex, const QuantizeRule& rule,
                            Mode mode) {
    complex.validate();
    rule.validate();
    if (mode == Mode::combined) {
        for (const auto& e : complex.edges)
            if (e.length < 0.0)
                throw constraint_error("quantize: negative length is not representable in "
                                       "combined mode");
    }

    SubdivisionResult result{Network(mode, rule.effective_unit()), {}, {}};
    result.net.add_vertices(complex.vertex_count);
    result.counts.reserve(complex.edges.size());

    for (const auto& e : complex.edges) {
        bool clamped = false;
        const int64_t m = rule.count_for(e.length, &clamped);
        if (clamped)
            result.warnings.push_back("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                      " of length " + std::to_string(e.length) +
                                      " quantizes to zero edges; clamped to one");
        result.counts.push_back(m);

        const EdgeKind kind = mode == Mode::combined
                                  ? EdgeKind::comb(0)
                                  : EdgeKind::dist(e.length > 0.0 ? 1 : -1);
        int at = e.u;
        for (int64_t i = 1; i < m; ++i) {
            const int mid = result.net.add_vertex();
            result.net.add_edge(at, mid, kind);
            at = mid;
        }
        result.net.add_edge(at, e.v, kind);
    }
    return result;
}

ReconstructionReport reconstruction_error(const WeightedComplex& complex,
                                          const QuantizeRule& rule) {
    complex.validate();
    rule.validate();
    const double unit = rule.effective_unit();
    const int n = static_cast<int>(complex.edges.size());

    ReconstructionReport report;
    report.edges.resize(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int i = 0; i < n; ++i) {
        const auto& e = complex.edges[static_cast<std::size_t>(i)];
        // Reports follow the clamp behaviour; an error policy would have
        // stopped subdivide() before any report mattered.
        const int64_t m = std::max<int64_t>(rule.raw_count(e.length), 1);
        report.edges[static_cast<std::size_t>(i)] =
            {e.u, e.v, e.length, m,
             std::abs(static_cast<double>(m) * unit - std::abs(e.length))};
    }

    double sum = 0.0;
    for (const auto& pe : report.edges) {
        report.max_error = std::max(report.max_error, pe.error);
        sum += pe.error;
    }
    report.mean_error = n > 0 ? sum / n : 0.0;
    return report;
}

} // namespace holonet
