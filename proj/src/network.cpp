#include "holonet/network.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "holonet/errors.hpp"

namespace holonet {

namespace {

int kind_rank(const EdgeKind& k) {
    switch (k.tag) {
        case EdgeTag::dist: return 0;
        case EdgeTag::phase: return 1;
        case EdgeTag::comb: return 2;
    }
    return 3;
}

bool edge_less(const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    const int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
    if (ra != rb) return ra < rb;
    if (a.kind.gen != b.kind.gen) return a.kind.gen < b.kind.gen;
    return a.kind.sign < b.kind.sign;
}

} // namespace

Network::Network(Mode mode, double unit_length) : mode_(mode), unit_length_(unit_length) {
    if (!(unit_length > 0.0)) throw constraint_error("network: unit length must be positive");
}

void Network::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count_)
        throw constraint_error("network: unknown vertex " + std::to_string(v));
}

void Network::check_mutable() const {
    if (frozen_) throw constraint_error("network: frozen networks are immutable");
}

uint64_t Network::pair_key(int u, int v, const EdgeKind& k) const {
    const uint64_t lo = static_cast<uint64_t>(std::min(u, v));
    const uint64_t hi = static_cast<uint64_t>(std::max(u, v));
    // Distance edges collide regardless of sign: one per pair.
    const uint64_t tag = static_cast<uint64_t>(kind_rank(k));
    const uint64_t gen = k.tag == EdgeTag::dist ? 0 : static_cast<uint64_t>(k.gen);
    return (lo << 40) | (hi << 16) | (tag << 14) | gen;
}

namespace {
// pair_key packs two vertex ids into 24 bits each
constexpr int kMaxVertices = 1 << 24;
} // namespace

int Network::add_vertex() {
    check_mutable();
    if (vertex_count_ >= kMaxVertices) throw constraint_error("network: too many vertices");
    return vertex_count_++;
}

void Network::add_vertices(int n) {
    check_mutable();
    if (n < 0) throw constraint_error("network: negative vertex count");
    if (vertex_count_ > kMaxVertices - n) throw constraint_error("network: too many vertices");
    vertex_count_ += n;
}

int Network::add_edge(int u, int v, EdgeKind kind) {
    check_mutable();
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw constraint_error("network: self-loops are not allowed");
    if (kind.tag == EdgeTag::dist && kind.sign != 1 && kind.sign != -1)
        throw constraint_error("network: distance sign must be +1 or -1");
    if (kind.tag != EdgeTag::dist && kind.gen < 0)
        throw constraint_error("network: negative generator index");
    if (mode_ == Mode::combined) {
        if (kind.tag != EdgeTag::comb)
            throw constraint_error("network: combined mode admits only comb edges");
        if (kind.gen != 0)
            throw constraint_error("network: combined mode is single-generator (index 0)");
    } else if (kind.tag == EdgeTag::comb) {
        throw constraint_error("network: comb edges require combined mode");
    }
    const uint64_t key = pair_key(u, v, kind);
    if (!kind_keys_.insert(key).second)
        throw constraint_error("network: duplicate edge of this kind between " +
                               std::to_string(u) + " and " + std::to_string(v));
    if (kind.tag == EdgeTag::dist && u > v) std::swap(u, v);
    edges_.push_back(Edge{u, v, kind});
    return static_cast<int>(edges_.size()) - 1;
}

void Network::flip_edge(int id) {
    check_mutable();
    if (id < 0 || id >= edge_count()) throw constraint_error("network: unknown edge id");
    Edge& e = edges_[static_cast<std::size_t>(id)];
    if (!e.kind.directed()) throw constraint_error("network: cannot flip an undirected edge");
    std::swap(e.u, e.v);
}

std::vector<int> Network::freeze() {
    check_mutable();
    const int n = edge_count();
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return edge_less(edges_[a], edges_[b]); });
    std::vector<Edge> sorted;
    sorted.reserve(edges_.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos) {
        sorted.push_back(edges_[order[pos]]);
        perm[static_cast<std::size_t>(order[pos])] = pos;
    }
    edges_ = std::move(sorted);

    length_adj_.assign(static_cast<std::size_t>(vertex_count_), {});
    for (const Edge& e : edges_) {
        if (e.kind.tag == EdgeTag::phase) continue;
        length_adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        length_adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    pair_index_.clear();
    pair_index_.reserve(edges_.size());
    for (int id = 0; id < n; ++id) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        const uint64_t lo = static_cast<uint64_t>(std::min(e.u, e.v));
        const uint64_t hi = static_cast<uint64_t>(std::max(e.u, e.v));
        pair_index_.emplace_back((lo << 32) | hi, id);
    }
    std::sort(pair_index_.begin(), pair_index_.end());
    frozen_ = true;
    return perm;
}

std::vector<int> Network::edges_between(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    std::vector<int> out;
    if (frozen_) {
        const uint64_t lo = static_cast<uint64_t>(std::min(u, v));
        const uint64_t hi = static_cast<uint64_t>(std::max(u, v));
        const uint64_t key = (lo << 32) | hi;
        auto it = std::lower_bound(pair_index_.begin(), pair_index_.end(),
                                   std::make_pair(key, 0));
        for (; it != pair_index_.end() && it->first == key; ++it) out.push_back(it->second);
        return out;
    }
    for (int id = 0; id < edge_count(); ++id) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) out.push_back(id);
    }
    return out;
}

bool Network::has_negative_edges() const {
    for (const Edge& e : edges_)
        if (e.kind.tag == EdgeTag::dist && e.kind.sign < 0) return true;
    return false;
}

const std::vector<std::vector<int>>& Network::length_adjacency() const {
    if (!frozen_) throw constraint_error("network: adjacency requires a frozen network");
    return length_adj_;
}

// --- path queries -----------------------------------------------------------

namespace {

// Walks the path once, validating incidence, and hands each traversed edge
// with its effective direction to the visitor.
template <typename F>
int walk(const Network& net, const Path& path, F&& visit) {
    int at = path.start;
    if (at < 0 || at >= net.vertex_count())
        throw constraint_error("path: start vertex out of range");
    for (const Step& s : path.steps) {
        if (s.edge < 0 || s.edge >= net.edge_count())
            throw constraint_error("path: unknown edge id");
        const Edge& e = net.edge(s.edge);
        int from = e.u, to = e.v;
        if (s.orient == Orient::reverse) std::swap(from, to);
        if (!e.kind.directed() && at == to && from != at) std::swap(from, to);
        if (from != at)
            throw constraint_error("path: step over edge " + std::to_string(s.edge) +
                                   " does not leave vertex " + std::to_string(at));
        visit(e, from == e.u);
        at = to;
    }
    return at;
}

} // namespace

int path_end(const Network& net, const Path& path) {
    return walk(net, path, [](const Edge&, bool) {});
}

std::vector<int64_t> path_quanta(const Network& net, const Path& path, int d) {
    std::vector<int64_t> quanta(static_cast<std::size_t>(d), 0);
    walk(net, path, [&](const Edge& e, bool forward) {
        if (e.kind.tag == EdgeTag::dist) return;
        if (e.kind.gen >= d)
            throw constraint_error("path: generator index " + std::to_string(e.kind.gen) +
                                   " outside the group");
        quanta[static_cast<std::size_t>(e.kind.gen)] += forward ? 1 : -1;
    });
    return quanta;
}

GroupElement path_holonomy(const Network& net, const Path& path, const GroupSpec& spec) {
    std::vector<GroupElement> fwd, rev;
    for (int i = 0; i < spec.d(); ++i) {
        fwd.push_back(exp_generator(spec, i));
        rev.push_back(inverse(fwd.back()));
    }
    GroupElement h = CMat::identity(spec.dim);
    walk(net, path, [&](const Edge& e, bool forward) {
        if (e.kind.tag == EdgeTag::dist) return;
        if (e.kind.gen >= spec.d())
            throw constraint_error("path: generator index " + std::to_string(e.kind.gen) +
                                   " outside the group");
        h = h * (forward ? fwd[static_cast<std::size_t>(e.kind.gen)]
                         : rev[static_cast<std::size_t>(e.kind.gen)]);
    });
    return h;
}

int64_t path_unit_count(const Network& net, const Path& path) {
    int64_t units = 0;
    walk(net, path, [&](const Edge& e, bool) {
        if (e.kind.tag == EdgeTag::dist) units += e.kind.sign;
        else if (e.kind.tag == EdgeTag::comb) units += 1;
    });
    return units;
}

double path_length(const Network& net, const Path& path) {
    return net.unit_length() * static_cast<double>(path_unit_count(net, path));
}

GroupElement loop_holonomy(const Network& net, const Path& path, const GroupSpec& spec) {
    if (path_end(net, path) != path.start)
        throw constraint_error("loop_holonomy: path is not closed");
    return path_holonomy(net, path, spec);
}

std::optional<double> geodesic_distance(const Network& net, int u, int v) {
    if (net.has_negative_edges())
        throw constraint_error("geodesic_distance: undefined with negative distance edges");
    if (u < 0 || u >= net.vertex_count() || v < 0 || v >= net.vertex_count())
        throw constraint_error("geodesic_distance: unknown vertex");
    if (u == v) return 0.0;

    // BFS over length-carrying edges, treated as undirected unit hops.
    std::vector<std::vector<int>> local_adj;
    const std::vector<std::vector<int>>* adj = nullptr;
    if (net.frozen()) {
        adj = &net.length_adjacency();
    } else {
        local_adj.assign(static_cast<std::size_t>(net.vertex_count()), {});
        for (const Edge& e : net.edges()) {
            if (e.kind.tag == EdgeTag::phase) continue;
            local_adj[static_cast<std::size_t>(e.u)].push_back(e.v);
            local_adj[static_cast<std::size_t>(e.v)].push_back(e.u);
        }
        adj = &local_adj;
    }

    std::vector<int64_t> hops(static_cast<std::size_t>(net.vertex_count()), -1);
    std::deque<int> queue{u};
    hops[static_cast<std::size_t>(u)] = 0;
    while (!queue.empty()) {
        const int at = queue.front();
        queue.pop_front();
        if (at == v) break;
        for (int next : (*adj)[static_cast<std::size_t>(at)]) {
            if (hops[static_cast<std::size_t>(next)] >= 0) continue;
            hops[static_cast<std::size_t>(next)] = hops[static_cast<std::size_t>(at)] + 1;
            queue.push_back(next);
        }
    }
    if (hops[static_cast<std::size_t>(v)] < 0) return std::nullopt;
    return net.unit_length() * static_cast<double>(hops[static_cast<std::size_t>(v)]);
}

Path reverse_path(const Network& net, const Path& path) {
    Path r;
    r.start = path_end(net, path);
    r.steps.reserve(path.steps.size());
    for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it)
        r.steps.push_back({it->edge,
                           it->orient == Orient::forward ? Orient::reverse : Orient::forward});
    return r;
}

Path concat_paths(const Network& net, const Path& p, const Path& q) {
    if (path_end(net, p) != q.start)
        throw constraint_error("concat_paths: q does not start where p ends");
    Path r = p;
    r.steps.insert(r.steps.end(), q.steps.begin(), q.steps.end());
    return r;
}

Path resolve_vertex_path(const Network& net, const std::vector<int>& vertices,
                         EdgePreference pref) {
    if (vertices.empty()) throw constraint_error("path: empty vertex list");
    Path p;
    p.start = vertices[0];
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const int a = vertices[i], b = vertices[i + 1];
        const std::vector<int> ids = net.edges_between(a, b);
        if (ids.empty())
            throw constraint_error("path: no edge joins " + std::to_string(a) + " and " +
                                   std::to_string(b));
        int chosen = -1;
        for (int id : ids) {
            const bool carries_phase = net.edge(id).kind.tag != EdgeTag::dist;
            if ((pref == EdgePreference::phase) == carries_phase) {
                chosen = id;
                break;
            }
        }
        if (chosen < 0) chosen = ids[0];
        const Edge& e = net.edge(chosen);
        p.steps.push_back({chosen, e.u == a ? Orient::forward : Orient::reverse});
    }
    return p;
}

} // namespace holonet
