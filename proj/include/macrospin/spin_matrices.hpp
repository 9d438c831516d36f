#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "half_int.hpp"

namespace macrospin {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

struct SpinMatrices {
    ComplexMatrix jx, jy, jz;
};

// Angular-momentum matrices in the |j,m> basis with m descending
// (m = j, j-1, ..., -j). Jz is diagonal; Jx, Jy come from the ladder
// operators <m+1|J+|m> = sqrt(j(j+1) - m(m+1)).
inline SpinMatrices spin_matrices(HalfInt j)
{
    if (j.twice() < 0) throw std::invalid_argument("spin_matrices: j < 0");
    const long long dim = j.twice() + 1;
    const double jv = j.to_double();

    ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix jplus = ComplexMatrix::Zero(dim, dim);
    for (long long r = 0; r < dim; ++r) {
        double m = jv - static_cast<double>(r); // row r holds m = j - r
        jz(r, r) = m;
        if (r > 0) jplus(r - 1, r) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
    }
    ComplexMatrix jminus = jplus.adjoint();
    SpinMatrices out;
    out.jx = 0.5 * (jplus + jminus);
    out.jy = Complex(0.0, -0.5) * (jplus - jminus);
    out.jz = jz;
    return out;
}

} // namespace macrospin
