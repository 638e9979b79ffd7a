#pragma once

#include <complex>
#include <vector>

namespace holonet {

using cd = std::complex<double>;

// Small dense complex matrix, row-major storage. Holonomy groups here have
// matrix dimension <= 8 in practice, so everything is naive triple loops.
class CMat {
public:
    CMat() = default;
    explicit CMat(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

    static CMat identity(int dim);

    int dim() const { return dim_; }

    cd& at(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    const cd& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

    // Row-major flat view.
    const std::vector<cd>& data() const { return a_; }
    std::vector<cd>& data() { return a_; }

    CMat operator*(const CMat& o) const;
    CMat operator+(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    CMat operator*(cd s) const;
    CMat& operator*=(const CMat& o) { *this = *this * o; return *this; }

    CMat adjoint() const;
    double frobenius_norm() const;

private:
    int dim_ = 0;
    std::vector<cd> a_;
};

double frobenius_distance(const CMat& a, const CMat& b);

// ||a·a† − I||_F, distance from the unitary manifold.
double unitarity_defect(const CMat& a);

// Matrix exponential by scaling-and-squaring with a Taylor core. For the
// anti-Hermitian generators used here the relative error is well below 1e-12.
CMat expm(const CMat& a);

// Nearest unitary (polar factor) by Newton–Schulz iteration. Requires
// ||a†a − I||_F < 1; intended for drift cleanup after long products.
CMat unitary_polar(const CMat& a);

} // namespace holonet
