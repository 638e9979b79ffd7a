#include "holonet/group.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "holonet/errors.hpp"

namespace holonet {

namespace {

// Rank check over the real flattening of the generators: modified
// Gram-Schmidt, a residual below the tolerance means linear dependence.
bool generators_independent(const std::vector<CMat>& gens, double tol) {
    const int d = static_cast<int>(gens.size());
    const int m = gens.empty() ? 0 : 2 * gens[0].dim() * gens[0].dim();
    std::vector<std::vector<double>> basis;
    basis.reserve(d);
    for (const CMat& g : gens) {
        std::vector<double> v(m);
        for (int i = 0; i < m / 2; ++i) {
            v[2 * i] = g.data()[i].real();
            v[2 * i + 1] = g.data()[i].imag();
        }
        for (const auto& b : basis) {
            double dot = 0.0;
            for (int i = 0; i < m; ++i) dot += v[i] * b[i];
            for (int i = 0; i < m; ++i) v[i] -= dot * b[i];
        }
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm <= tol) return false;
        for (double& x : v) x /= nrm;
        basis.push_back(std::move(v));
    }
    return true;
}

} // namespace

void GroupSpec::validate() const {
    if (dim < 1) throw constraint_error("group: dim must be >= 1");
    if (generators.empty()) throw constraint_error("group: needs at least one generator");
    if (!(eps_prime > 0.0)) throw constraint_error("group: eps' must be positive");
    for (int i = 0; i < d(); ++i) {
        const CMat& g = generators[i];
        if (g.dim() != dim)
            throw constraint_error("group: generator " + std::to_string(i) + " is not dim x dim");
        // anti-Hermitian: eta + eta† = 0
        if (frobenius_distance(g, g.adjoint() * cd(-1.0, 0.0)) > 1e-12)
            throw constraint_error("group: generator " + std::to_string(i) +
                                   " is not anti-Hermitian (tol 1e-12)");
    }
    if (!generators_independent(generators, 1e-9))
        throw constraint_error("group: generators are not linearly independent (tol 1e-9)");
}

GroupSpec GroupSpec::u1(double eps_prime) {
    GroupSpec s;
    s.dim = 1;
    s.eps_prime = eps_prime;
    CMat g(1);
    g.at(0, 0) = cd(0.0, eps_prime);
    s.generators.push_back(g);
    return s;
}

GroupSpec GroupSpec::su2(double eps_prime) {
    GroupSpec s;
    s.dim = 2;
    s.eps_prime = eps_prime;
    const double h = eps_prime / 2.0;
    CMat gx(2), gy(2), gz(2);
    gx.at(0, 1) = cd(0.0, h);
    gx.at(1, 0) = cd(0.0, h);
    gy.at(0, 1) = cd(h, 0.0);
    gy.at(1, 0) = cd(-h, 0.0);
    gz.at(0, 0) = cd(0.0, h);
    gz.at(1, 1) = cd(0.0, -h);
    s.generators = {gx, gy, gz};
    return s;
}

int64_t word_norm(const MultiIndex& alpha) {
    int64_t n = 0;
    for (int a : alpha) n += std::llabs(a);
    return n;
}

GroupElement exp_generator(const GroupSpec& spec, int i) {
    if (i < 0 || i >= spec.d())
        throw constraint_error("exp_generator: index " + std::to_string(i) + " out of range");
    return expm(spec.generators[i]);
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
    return a * b;
}

GroupElement inverse(const GroupElement& a) {
    return a.adjoint();
}

GroupElement word_element(const GroupSpec& spec, const MultiIndex& alpha) {
    if (static_cast<int>(alpha.size()) != spec.d())
        throw constraint_error("word_element: alpha length does not match generator count");
    GroupElement r = CMat::identity(spec.dim);
    for (int i = 0; i < spec.d(); ++i) {
        if (alpha[i] == 0) continue;
        const GroupElement e = exp_generator(spec, i);
        const GroupElement f = alpha[i] > 0 ? e : inverse(e);
        const int reps = std::abs(alpha[i]);
        for (int j = 0; j < reps; ++j) r = r * f;
    }
    return r;
}

double element_distance(const GroupElement& a, const GroupElement& b) {
    return frobenius_distance(a, b);
}

GroupElement renormalize(const GroupElement& a) {
    return unitary_polar(a);
}

double phase_of(const GroupElement& a) {
    if (a.dim() != 1) throw constraint_error("phase_of: element is not 1x1");
    return std::arg(a.at(0, 0));
}

} // namespace holonet
