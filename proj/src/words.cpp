#include "holonet/words.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "holonet/errors.hpp"
#include "holonet/parallel.hpp"

namespace holonet {

namespace {

constexpr int64_t kCapSentinel = kMaxWords + 1;

int64_t sat_add(int64_t a, int64_t b) {
    const int64_t s = a + b;
    return s > kCapSentinel ? kCapSentinel : s;
}

// Uniform in [0,1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void gauss_pair(std::mt19937_64& rng, double& g1, double& g2) {
    const double u1 = 1.0 - uniform01(rng); // (0,1]
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    g1 = r * std::cos(t);
    g2 = r * std::sin(t);
}

double dist_flat(const cd* w, const CMat& g) {
    double s = 0.0;
    const auto& gd = g.data();
    for (std::size_t i = 0; i < gd.size(); ++i) s += std::norm(w[i] - gd[i]);
    return std::sqrt(s);
}

struct Enumerator {
    const GroupSpec& spec;
    std::vector<CMat> exps;
    std::vector<CMat> invs;
    std::vector<int> cur;
    std::vector<int> alphas;
    std::vector<cd> elements;

    explicit Enumerator(const GroupSpec& s) : spec(s), cur(s.d(), 0) {
        for (int i = 0; i < spec.d(); ++i) {
            exps.push_back(exp_generator(spec, i));
            invs.push_back(inverse(exps.back()));
        }
    }

    void emit(const CMat& m) {
        alphas.insert(alphas.end(), cur.begin(), cur.end());
        elements.insert(elements.end(), m.data().begin(), m.data().end());
    }

    // Blocks accumulate by sequential right-multiplication, the same factor
    // order as word_element, so enumerated elements match it bit for bit.
    void rec(int i, int64_t budget, const CMat& prefix) {
        if (i == spec.d()) {
            emit(prefix);
            return;
        }
        cur[i] = 0;
        rec(i + 1, budget, prefix);
        CMat p = prefix;
        for (int64_t j = 1; j <= budget; ++j) {
            p = p * invs[i];
            cur[i] = static_cast<int>(-j);
            rec(i + 1, budget - j, p);
        }
        p = prefix;
        for (int64_t j = 1; j <= budget; ++j) {
            p = p * exps[i];
            cur[i] = static_cast<int>(j);
            rec(i + 1, budget - j, p);
        }
        cur[i] = 0;
    }
};

} // namespace

int64_t count_words(int d, int64_t n) {
    if (d < 1 || n < 0) throw constraint_error("count_words: need d >= 1 and n >= 0");
    if (n > kCapSentinel) n = kCapSentinel;
    std::vector<int64_t> prev(static_cast<std::size_t>(n) + 1, 1); // d = 0
    std::vector<int64_t> row(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= d; ++i) {
        row[0] = 1;
        for (int64_t r = 1; r <= n; ++r)
            row[r] = sat_add(sat_add(row[r - 1], prev[r]), prev[r - 1]);
        std::swap(prev, row);
    }
    return prev[static_cast<std::size_t>(n)];
}

WordList enumerate_words(const GroupSpec& spec, int64_t n) {
    spec.validate();
    if (n < 0) throw constraint_error("enumerate_words: n must be >= 0");
    const int64_t count = count_words(spec.d(), n);
    if (count > kMaxWords)
        throw constraint_error("enumerate_words: " + std::to_string(count) +
                               " words exceed the cap of " + std::to_string(kMaxWords));

    Enumerator e(spec);
    e.alphas.reserve(static_cast<std::size_t>(count) * spec.d());
    e.elements.reserve(static_cast<std::size_t>(count) * spec.dim * spec.dim);
    e.rec(0, n, CMat::identity(spec.dim));

    const int d = spec.d();
    const int mm = spec.dim * spec.dim;

    // Canonical order: word norm ascending, then lexicographic alpha.
    std::vector<int64_t> perm(static_cast<std::size_t>(count));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int64_t a, int64_t b) {
        const int* pa = e.alphas.data() + a * d;
        const int* pb = e.alphas.data() + b * d;
        int64_t na = 0, nb = 0;
        for (int i = 0; i < d; ++i) {
            na += std::abs(pa[i]);
            nb += std::abs(pb[i]);
        }
        if (na != nb) return na < nb;
        return std::lexicographical_compare(pa, pa + d, pb, pb + d);
    });

    WordList out;
    out.dim = spec.dim;
    out.d = d;
    out.n = n;
    out.count = count;
    out.alphas.resize(e.alphas.size());
    out.elements.resize(e.elements.size());
    for (int64_t w = 0; w < count; ++w) {
        const int64_t src = perm[static_cast<std::size_t>(w)];
        std::copy_n(e.alphas.begin() + src * d, d, out.alphas.begin() + w * d);
        std::copy_n(e.elements.begin() + src * mm, mm, out.elements.begin() + w * mm);
    }
    return out;
}

CMat random_unitary(int dim, std::mt19937_64& rng) {
    CMat g(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            double re, im;
            gauss_pair(rng, re, im);
            g.at(r, c) = cd(re, im);
        }
    }
    // Modified Gram-Schmidt on columns; the implied R diagonal is real
    // positive, which is what makes the result Haar-ish.
    CMat q(dim);
    for (int c = 0; c < dim; ++c) {
        std::vector<cd> v(dim);
        for (int r = 0; r < dim; ++r) v[r] = g.at(r, c);
        for (int k = 0; k < c; ++k) {
            cd dot(0.0, 0.0);
            for (int r = 0; r < dim; ++r) dot += std::conj(q.at(r, k)) * v[r];
            for (int r = 0; r < dim; ++r) v[r] -= dot * q.at(r, k);
        }
        double nrm = 0.0;
        for (const cd& z : v) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        for (int r = 0; r < dim; ++r) q.at(r, c) = v[r] / nrm;
    }
    return q;
}

ApproxResult approximate_in_serial(const WordList& words, const GroupElement& g) {
    if (g.dim() != words.dim) throw constraint_error("approximate: element dimension mismatch");
    int64_t best = 0;
    double bestd = dist_flat(words.element(0), g);
    for (int64_t w = 1; w < words.count; ++w) {
        const double d = dist_flat(words.element(w), g);
        if (d < bestd) {
            bestd = d;
            best = w;
        }
    }
    return {words.alpha(best), bestd};
}

ApproxResult approximate_in(const WordList& words, const GroupElement& g) {
    if (g.dim() != words.dim) throw constraint_error("approximate: element dimension mismatch");
    int64_t best = -1;
    double bestd = 0.0;
#pragma omp parallel num_threads(thread_count())
    {
        int64_t lbest = -1;
        double lbestd = 0.0;
#pragma omp for schedule(static) nowait
        for (int64_t w = 0; w < words.count; ++w) {
            const double d = dist_flat(words.element(w), g);
            if (lbest < 0 || d < lbestd || (d == lbestd && w < lbest)) {
                lbestd = d;
                lbest = w;
            }
        }
#pragma omp critical
        {
            if (lbest >= 0 &&
                (best < 0 || lbestd < bestd || (lbestd == bestd && lbest < best))) {
                bestd = lbestd;
                best = lbest;
            }
        }
    }
    return {words.alpha(best), bestd};
}

ApproxResult approximate(const GroupSpec& spec, const GroupElement& g, int64_t n) {
    return approximate_in(enumerate_words(spec, n), g);
}

double mesh_cover_radius(const GroupSpec& spec, int64_t n, int samples, uint64_t seed) {
    if (samples < 1) throw constraint_error("mesh_cover_radius: samples must be >= 1");
    const WordList words = enumerate_words(spec, n);
    std::mt19937_64 rng(seed);
    std::vector<CMat> pool;
    pool.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) pool.push_back(random_unitary(spec.dim, rng));

    double radius = 0.0;
#pragma omp parallel for schedule(static) reduction(max : radius) \
    num_threads(thread_count())
    for (int s = 0; s < samples; ++s) {
        double mind = dist_flat(words.element(0), pool[s]);
        for (int64_t w = 1; w < words.count; ++w)
            mind = std::min(mind, dist_flat(words.element(w), pool[s]));
        radius = std::max(radius, mind);
    }
    return radius;
}

double mesh_cover_radius_serial(const GroupSpec& spec, int64_t n, int samples, uint64_t seed) {
    if (samples < 1) throw constraint_error("mesh_cover_radius: samples must be >= 1");
    const WordList words = enumerate_words(spec, n);
    std::mt19937_64 rng(seed);
    double radius = 0.0;
    for (int s = 0; s < samples; ++s) {
        const CMat u = random_unitary(spec.dim, rng);
        double mind = dist_flat(words.element(0), u);
        for (int64_t w = 1; w < words.count; ++w)
            mind = std::min(mind, dist_flat(words.element(w), u));
        radius = std::max(radius, mind);
    }
    return radius;
}

} // namespace holonet
