#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holonet/network.hpp"

namespace holonet {

// Simplicial 1-skeleton with real, possibly negative edge lengths.
struct WeightedComplex {
    struct WEdge {
        int u = 0;
        int v = 0;
        double length = 0.0;
    };
    int vertex_count = 0;
    std::vector<WEdge> edges;

    void validate() const; // u != v, lengths finite and nonzero
};

enum class CountRule { floor, round };
enum class ZeroPolicy { clamp_to_one, error };

// epsilon is the scale below which length variations are unobservable; each
// weighted edge becomes m = floor(|l| / (2 epsilon)) unit edges (or round).
// The default unit length 2*epsilon keeps the reconstruction error below
// 2*epsilon; pass unit_length explicitly for other conventions.
struct QuantizeRule {
    double epsilon = 1.0;
    double unit_length = 0.0; // <= 0 means the 2*epsilon default
    CountRule count_rule = CountRule::floor;
    ZeroPolicy zero_policy = ZeroPolicy::clamp_to_one;

    double effective_unit() const { return unit_length > 0.0 ? unit_length : 2.0 * epsilon; }
    void validate() const;

    // Unit-edge count before the zero policy.
    int64_t raw_count(double length) const;

    // Unit-edge count for one weighted edge, zero policy applied.
    // zero_clamped reports whether the policy fired.
    int64_t count_for(double length, bool* zero_clamped = nullptr) const;
};

struct SubdivisionResult {
    Network net;                  // original vertices first, chain vertices after
    std::vector<int64_t> counts;  // m per weighted edge
    std::vector<std::string> warnings;
};

// Replaces each weighted edge by a chain of m unit edges through m-1 fresh
// vertices: Distance(sign l) chains in dual mode, forward Combined(0) chains
// in combined mode. Chain vertex ids are allocated edge by edge in input
// order, so the result is deterministic. The network is returned unfrozen.
SubdivisionResult subdivide(const WeightedComplex& complex, const QuantizeRule& rule,
                            Mode mode);

struct ReconstructionReport {
    struct PerEdge {
        int u = 0;
        int v = 0;
        double length = 0.0;
        int64_t m = 0;
        double error = 0.0; // | m * unit - |l| |
    };
    std::vector<PerEdge> edges;
    double max_error = 0.0;
    double mean_error = 0.0;
};

// Per-edge |m * unit_length - |l||; with the default unit 2*epsilon and the
// floor rule every entry is below 2*epsilon.
ReconstructionReport reconstruction_error(const WeightedComplex& complex,
                                          const QuantizeRule& rule);

} // namespace holonet
