#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "holonet/group.hpp"

namespace holonet {

enum class Mode { dual, combined };

enum class EdgeTag { dist, phase, comb };

// Typed edge payload. Phase and Combined are directed (storage order of the
// endpoints is the forward direction); Distance is undirected and signed.
// Combined carries one positive unit of length plus one quantum of its
// generator, and is only legal in combined-mode networks.
struct EdgeKind {
    EdgeTag tag = EdgeTag::dist;
    int gen = 0;  // generator index for phase/comb
    int sign = 1; // +1 or -1 for dist

    static EdgeKind phase(int i) { return {EdgeTag::phase, i, 1}; }
    static EdgeKind dist(int s) { return {EdgeTag::dist, 0, s}; }
    static EdgeKind comb(int i) { return {EdgeTag::comb, i, 1}; }

    bool directed() const { return tag != EdgeTag::dist; }
    bool operator==(const EdgeKind&) const = default;
};

struct Edge {
    int u = 0; // forward direction is u -> v for directed kinds
    int v = 0;
    EdgeKind kind;
};

enum class Orient { forward, reverse };

struct Step {
    int edge = 0;
    Orient orient = Orient::forward;
};

// Ordered edge traversal; consecutive steps share a vertex. Closed paths are
// loops.
struct Path {
    int start = 0;
    std::vector<Step> steps;
};

// Multigraph of typed edges. Mutable while building, immutable after
// freeze(); freezing canonicalizes the edge order (sorted by endpoints and
// kind), so edge ids are stable from then on and all queries are pure and
// thread-safe.
class Network {
public:
    Network() : Network(Mode::dual, 1.0) {}
    explicit Network(Mode mode, double unit_length = 1.0);

    Mode mode() const { return mode_; }
    double unit_length() const { return unit_length_; }
    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool frozen() const { return frozen_; }

    int add_vertex();
    void add_vertices(int n);

    // Stores (u, v) as the forward direction. Rejects self-loops, unknown
    // vertices, kinds illegal for the mode, and duplicate kind-per-pair.
    // Distance edges are normalized to u < v.
    int add_edge(int u, int v, EdgeKind kind);

    // Swaps the stored endpoint order of a directed edge.
    void flip_edge(int id);

    // Sorts edges canonically and builds adjacency. Returns the permutation
    // mapping old edge ids to new ones.
    std::vector<int> freeze();

    // Edge ids joining u and v in either storage order. Indexed lookup on
    // frozen networks, linear scan before freeze.
    std::vector<int> edges_between(int u, int v) const;

    // True if any negative distance edge is present.
    bool has_negative_edges() const;

    // Vertices adjacent through length-carrying (dist/comb) edges.
    const std::vector<std::vector<int>>& length_adjacency() const;

private:
    void check_vertex(int v) const;
    void check_mutable() const;
    uint64_t pair_key(int u, int v, const EdgeKind& k) const;

    Mode mode_;
    double unit_length_;
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::unordered_set<uint64_t> kind_keys_;
    bool frozen_ = false;
    std::vector<std::vector<int>> length_adj_;            // built at freeze
    std::vector<std::pair<uint64_t, int>> pair_index_;    // built at freeze
};

// --- path queries -----------------------------------------------------------

// Vertex the path ends at; validates incidence of every step.
int path_end(const Network& net, const Path& path);

// Net quantum count per generator index (array of size d): +1 per forward
// traversal of a phase/comb edge, -1 per reverse, distance edges contribute
// nothing. Exact integer bookkeeping.
std::vector<int64_t> path_quanta(const Network& net, const Path& path, int d);

// Running right-multiplied product of per-step transports.
GroupElement path_holonomy(const Network& net, const Path& path, const GroupSpec& spec);

// Signed unit count: +1 per positive dist step and per comb step, -1 per
// negative dist step; phase edges are lengthless.
int64_t path_unit_count(const Network& net, const Path& path);

// path_unit_count scaled by the unit length.
double path_length(const Network& net, const Path& path);

// path_holonomy with a closedness check; the value is conjugation-dependent
// for non-abelian groups, its conjugacy class (and any U(1) value) is not.
GroupElement loop_holonomy(const Network& net, const Path& path, const GroupSpec& spec);

// Minimum hop count over dist/comb edges times the unit length;
// std::nullopt when unreachable. Rejects networks with negative edges.
std::optional<double> geodesic_distance(const Network& net, int u, int v);

Path reverse_path(const Network& net, const Path& path);
Path concat_paths(const Network& net, const Path& p, const Path& q);

// Resolves a vertex sequence to steps. Prefer phase picks the phase-carrying
// edge of a dual-mode pair, prefer length the distance edge.
enum class EdgePreference { phase, length };
Path resolve_vertex_path(const Network& net, const std::vector<int>& vertices,
                         EdgePreference pref);

} // namespace holonet
