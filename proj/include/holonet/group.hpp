#pragma once

#include <cstdint>
#include <vector>

#include "holonet/matrix.hpp"

namespace holonet {

// A holonomy-group element is a unitary matrix; for U(1) it is 1x1 and the
// phase angle is the natural coordinate. Products of up to ~1e4 elementary
// factors keep the unitarity defect below 1e-9; callers composing more than
// that should pass the running product through renormalize().
using GroupElement = CMat;

// Signed generator exponent vector; entry i counts factors of exp(eta_i),
// negative entries count factors of the inverse.
using MultiIndex = std::vector<int>;

// Holonomy group described by a fixed generator basis of its Lie algebra.
struct GroupSpec {
    int dim = 1;                  // matrix dimension, 1 for U(1)
    std::vector<CMat> generators; // d anti-Hermitian dim x dim matrices
    double eps_prime = 0.1;       // intended magnitude of each generator

    int d() const { return static_cast<int>(generators.size()); }

    // Checks d >= 1, shapes, anti-Hermiticity (tol 1e-12) and real-linear
    // independence of the generators (rank tolerance 1e-9). Throws
    // constraint_error. Construction itself never validates, so degenerate
    // specs (e.g. a zero generator) can still be exercised directly.
    void validate() const;

    static GroupSpec u1(double eps_prime);
    // Generators (eps'/2)·(i sigma_x, i sigma_y, i sigma_z).
    static GroupSpec su2(double eps_prime);
};

int64_t word_norm(const MultiIndex& alpha);

// exp(eta_i); throws constraint_error for an out-of-range index.
GroupElement exp_generator(const GroupSpec& spec, int i);

// Matrix product a·b. Project-wide convention: traversal accumulates on the
// right, so the holonomy of path p followed by q is H(p)·H(q).
GroupElement compose(const GroupElement& a, const GroupElement& b);

// Conjugate transpose; inverse for unitary elements.
GroupElement inverse(const GroupElement& a);

// g'(alpha) = prod_i ( prod_j exp(eta_i) ), blocks in generator-index order,
// each block multiplied left to right. Negative alpha_i uses the inverse
// factor. The ordering is part of the contract for non-abelian groups.
GroupElement word_element(const GroupSpec& spec, const MultiIndex& alpha);

// Frobenius chord distance ||a - b||_F; for dim 1 this is |e^{ia} - e^{ib}|.
double element_distance(const GroupElement& a, const GroupElement& b);

// Polar-decomposition cleanup for long products (phase normalization in dim 1).
GroupElement renormalize(const GroupElement& a);

// Phase angle of a 1x1 element, in radians.
double phase_of(const GroupElement& a);

} // namespace holonet
