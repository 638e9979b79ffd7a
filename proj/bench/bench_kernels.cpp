// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations. Build and run:
//   cmake --build build --target holonet_bench && ./build/bench/holonet_bench

#include <chrono>
#include <cstdio>
#include <string>

#include "holonet/analysis.hpp"
#include "holonet/lattice.hpp"
#include "holonet/parallel.hpp"
#include "holonet/words.hpp"

using namespace holonet;

namespace {

template <typename F>
double time_seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-34s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n", name,
                serial * 1e3, parallel * 1e3, serial / parallel);
}

} // namespace

int main() {
    std::printf("threads: %d\n", thread_count());

    {
        const GroupSpec su2 = GroupSpec::su2(0.2);
        double r1 = 0.0, r2 = 0.0;
        const double ts = time_seconds([&] { r1 = mesh_cover_radius_serial(su2, 10, 2000, 7); });
        const double tp = time_seconds([&] { r2 = mesh_cover_radius(su2, 10, 2000, 7); });
        report("mesh_cover_radius su2 n=10", ts, tp);
        if (r1 != r2) std::printf("  MISMATCH: %.17g vs %.17g\n", r1, r2);
    }

    {
        const GroupSpec u1 = GroupSpec::u1(1e-4);
        double r1 = 0.0, r2 = 0.0;
        const double ts = time_seconds([&] { r1 = mesh_cover_radius_serial(u1, 40000, 64, 3); });
        const double tp = time_seconds([&] { r2 = mesh_cover_radius(u1, 40000, 64, 3); });
        report("mesh_cover_radius u1 n=4e4", ts, tp);
        if (r1 != r2) std::printf("  MISMATCH: %.17g vs %.17g\n", r1, r2);
    }

    {
        const GroupSpec su2 = GroupSpec::su2(0.2);
        const WordList words = enumerate_words(su2, 12);
        std::mt19937_64 rng(11);
        std::vector<CMat> targets;
        for (int i = 0; i < 64; ++i) targets.push_back(random_unitary(2, rng));
        double d1 = 0.0, d2 = 0.0;
        const double ts = time_seconds([&] {
            for (const CMat& g : targets) d1 += approximate_in_serial(words, g).distance;
        });
        const double tp = time_seconds([&] {
            for (const CMat& g : targets) d2 += approximate_in(words, g).distance;
        });
        report(("approximate_in su2 " + std::to_string(words.count) + " words").c_str(), ts,
               tp);
        if (d1 != d2) std::printf("  MISMATCH: %.17g vs %.17g\n", d1, d2);
    }

    {
        Lattice lat = build_lattice({501, 501, 1.0, Mode::dual});
        assign_axis_directions(lat, Axis::horizontal, 0.5);
        assign_axis_directions(lat, Axis::vertical, 0.7);
        lat.freeze();
        const GroupSpec u1 = GroupSpec::u1(0.1);
        int64_t q1 = 0, q2 = 0;
        const double ts = time_seconds([&] {
            for (const PlaquetteInfo& p : plaquette_curvature_serial(lat.emb, u1))
                q1 += p.quanta;
        });
        const double tp = time_seconds([&] {
            for (const PlaquetteInfo& p : plaquette_curvature(lat.emb, u1)) q2 += p.quanta;
        });
        report("plaquette_curvature 500x500", ts, tp);
        if (q1 != q2) std::printf("  MISMATCH: %lld vs %lld\n", static_cast<long long>(q1),
                                  static_cast<long long>(q2));
    }

    return 0;
}
