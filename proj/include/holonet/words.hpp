#pragma once

#include <cstdint>
#include <random>

#include "holonet/group.hpp"

namespace holonet {

// Eager cap on the enumerated word set.
inline constexpr int64_t kMaxWords = 10'000'000;

// All generator words g'(alpha) with word norm <= n, in canonical order:
// ascending word norm, ties by lexicographic alpha. Flat storage keeps the
// scan kernels cache-friendly at the 1e7-word cap.
struct WordList {
    int dim = 1;
    int d = 1;
    int64_t n = 0;
    int64_t count = 0;
    std::vector<int> alphas;   // count * d, row per word
    std::vector<cd> elements;  // count * dim*dim, row-major matrix per word

    MultiIndex alpha(int64_t w) const {
        return MultiIndex(alphas.begin() + w * d, alphas.begin() + (w + 1) * d);
    }
    const cd* element(int64_t w) const { return elements.data() + w * dim * dim; }
};

// |{alpha in Z^d : sum |alpha_i| <= n}|, saturating just above kMaxWords.
int64_t count_words(int d, int64_t n);

// Throws constraint_error when the enumeration exceeds kMaxWords.
WordList enumerate_words(const GroupSpec& spec, int64_t n);

// Haar-ish random unitary: QR of a Gaussian matrix with the R diagonal made
// real positive. Gaussians come from an explicit Box-Muller transform over
// mt19937_64 draws, so the sequence is bit-stable across platforms.
CMat random_unitary(int dim, std::mt19937_64& rng);

struct ApproxResult {
    MultiIndex alpha;
    double distance = 0.0;
};

// Best word for g among all with word norm <= n: minimal chord distance,
// ties by smaller word norm, then lexicographic alpha.
ApproxResult approximate(const GroupSpec& spec, const GroupElement& g, int64_t n);
ApproxResult approximate_in(const WordList& words, const GroupElement& g);

// Empirical covering radius: max over `samples` random unitaries of the
// min distance to the enumerated word set. Deterministic in (seed, samples, n)
// and independent of the thread count.
double mesh_cover_radius(const GroupSpec& spec, int64_t n, int samples, uint64_t seed);

// Serial reference implementations, kept for testing and benchmarks.
ApproxResult approximate_in_serial(const WordList& words, const GroupElement& g);
double mesh_cover_radius_serial(const GroupSpec& spec, int64_t n, int samples, uint64_t seed);

} // namespace holonet
