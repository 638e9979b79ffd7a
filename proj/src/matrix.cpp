#include "holonet/matrix.hpp"

#include <cmath>

#include "holonet/errors.hpp"

namespace holonet {

CMat CMat::identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = cd(1.0, 0.0);
    return m;
}

CMat CMat::operator*(const CMat& o) const {
    if (dim_ != o.dim_) throw constraint_error("matrix dimension mismatch");
    CMat r(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            const cd aik = at(i, k);
            if (aik == cd(0.0, 0.0)) continue;
            for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    }
    return r;
}

CMat CMat::operator+(const CMat& o) const {
    if (dim_ != o.dim_) throw constraint_error("matrix dimension mismatch");
    CMat r(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

CMat CMat::operator-(const CMat& o) const {
    if (dim_ != o.dim_) throw constraint_error("matrix dimension mismatch");
    CMat r(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

CMat CMat::operator*(cd s) const {
    CMat r(dim_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

CMat CMat::adjoint() const {
    CMat r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

double CMat::frobenius_norm() const {
    double s = 0.0;
    for (const cd& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double frobenius_distance(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim()) throw constraint_error("matrix dimension mismatch");
    double s = 0.0;
    const auto& x = a.data();
    const auto& y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
    return std::sqrt(s);
}

double unitarity_defect(const CMat& a) {
    return frobenius_distance(a * a.adjoint(), CMat::identity(a.dim()));
}

CMat expm(const CMat& a) {
    // Scale so the Taylor series converges fast, then square back.
    double nrm = a.frobenius_norm();
    int s = 0;
    while (nrm > 0.25) {
        nrm *= 0.5;
        ++s;
    }
    CMat x = a * cd(std::ldexp(1.0, -s), 0.0);

    CMat term = CMat::identity(a.dim());
    CMat sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = term * x * cd(1.0 / k, 0.0);
        sum = sum + term;
        if (term.frobenius_norm() <= 1e-20 * sum.frobenius_norm()) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

CMat unitary_polar(const CMat& a) {
    if (a.dim() == 1) {
        const cd z = a.at(0, 0);
        const double m = std::abs(z);
        if (m == 0.0) throw constraint_error("renormalize: zero element");
        CMat r(1);
        r.at(0, 0) = z / m;
        return r;
    }
    CMat x = a;
    const CMat id = CMat::identity(a.dim());
    for (int it = 0; it < 24; ++it) {
        const CMat g = x.adjoint() * x;
        const double defect = frobenius_distance(g, id);
        if (defect <= 1e-15) break;
        if (defect >= 1.0) throw constraint_error("renormalize: input too far from unitary");
        x = x * ((id * cd(3.0, 0.0) - g) * cd(0.5, 0.0));
    }
    return x;
}

} // namespace holonet
