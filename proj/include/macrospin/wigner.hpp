#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "half_int.hpp"
#include "spin_matrices.hpp"

namespace macrospin {

namespace detail {

// 113-bit accumulator for the alternating nu-sum; the terms can exceed the
// result by ~1e17 at j = 50, which no double-precision summation survives.
using WignerFloat = boost::multiprecision::cpp_bin_float_quad;

// Exact binomial coefficient.
inline boost::multiprecision::cpp_int binomial_exact(long long n, long long k)
{
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    boost::multiprecision::cpp_int result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

// base^e for nonnegative integer e, with the convention 0^0 = 1.
inline WignerFloat ipow(WignerFloat base, long long e)
{
    WignerFloat result = 1;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

} // namespace detail

// Wigner small-d matrix element d^j_{m_row,m_col}(beta), evaluated as the
// explicit finite sum over nu with binomial coefficients:
//
//   d^j_{m',m} = sqrt[(j+m')!(j-m')! / ((j+m)!(j-m)!)] (-1)^{j+m'}
//                * sum_nu (-1)^nu C(j+m,nu) C(j-m, j+m'-nu)
//                  (cos b/2)^{2nu-m-m'} (sin b/2)^{2j+m+m'-2nu}
//
// with m' the row label and m the column label. The binomials and the
// factorial-ratio prefactor are exact big integers; the alternating sum is
// accumulated in 113-bit floating point in ascending nu, which keeps the
// absolute error below 1e-15 even where the terms exceed the result by
// seventeen orders of magnitude. Left-to-right order makes results
// bit-reproducible across runs.
inline double wigner_d_element(HalfInt j, HalfInt m_row, HalfInt m_col, double beta)
{
    if (j.twice() < 0) throw std::invalid_argument("wigner_d_element: j < 0");
    if (!m_row.is_projection_of(j) || !m_col.is_projection_of(j))
        throw std::invalid_argument("wigner_d_element: invalid (j, m) labels");

    using detail::WignerFloat;
    const long long j2 = j.twice();
    const long long mr2 = m_row.twice(); // m'
    const long long mc2 = m_col.twice(); // m
    const long long jpm = (j2 + mc2) / 2;  // j + m
    const long long jmm = (j2 - mc2) / 2;  // j - m
    const long long jpmr = (j2 + mr2) / 2; // j + m'
    const long long jmmr = (j2 - mr2) / 2; // j - m'

    const WignerFloat c = cos(WignerFloat(beta) / 2);
    const WignerFloat s = sin(WignerFloat(beta) / 2);
    const int sign = (((j2 + mr2) / 2) % 2 == 0) ? 1 : -1;

    // prefactor sqrt[(j+m')!(j-m')! / ((j+m)!(j-m)!)] via paired factorial
    // ratios (a+b = c+d = 2j keeps magnitudes tame)
    WignerFloat ratio = 1;
    for (long long i = jpm + 1; i <= jpmr; ++i) ratio *= i;
    for (long long i = jpmr + 1; i <= jpm; ++i) ratio /= i;
    for (long long i = jmm + 1; i <= jmmr; ++i) ratio *= i;
    for (long long i = jmmr + 1; i <= jmm; ++i) ratio /= i;
    const WignerFloat pre = sqrt(ratio);

    const long long nu_lo = std::max<long long>(0, (mc2 + mr2) / 2);
    const long long nu_hi = std::min(jpm, jpmr);
    WignerFloat acc = 0;
    for (long long nu = nu_lo; nu <= nu_hi; ++nu) {
        const long long ce = 2 * nu - (mc2 + mr2) / 2;
        const long long se = j2 + (mc2 + mr2) / 2 - 2 * nu;
        WignerFloat term = WignerFloat(detail::binomial_exact(jpm, nu)
                                       * detail::binomial_exact(jmm, jpmr - nu))
                           * detail::ipow(c, ce) * detail::ipow(s, se);
        acc += (nu % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sign * pre * acc);
}

// Full (2j+1)x(2j+1) rotation matrix, rows and columns indexed by
// m = j, j-1, ..., -j.
inline RealMatrix wigner_d_matrix(HalfInt j, double beta)
{
    if (j.twice() < 0) throw std::invalid_argument("wigner_d_matrix: j < 0");
    using detail::WignerFloat;
    const long long j2 = j.twice();
    const long long dim = j2 + 1;

    // shared tables: powers of cos/sin(beta/2), Pascal rows, and the
    // sqrt[(j+m)!(j-m)!] prefactors (C(2j, k) and (2j)! are exact in 113 bits
    // for the sizes this library targets)
    const WignerFloat c = cos(WignerFloat(beta) / 2);
    const WignerFloat s = sin(WignerFloat(beta) / 2);
    std::vector<WignerFloat> powc(j2 + 1), pows(j2 + 1);
    powc[0] = 1;
    pows[0] = 1;
    for (long long e = 1; e <= j2; ++e) {
        powc[e] = powc[e - 1] * c;
        pows[e] = pows[e - 1] * s;
    }
    std::vector<std::vector<WignerFloat>> binom(j2 + 1);
    for (long long n = 0; n <= j2; ++n) {
        binom[n].resize(n + 1);
        boost::multiprecision::cpp_int b = 1;
        for (long long k = 0; k <= n; ++k) {
            binom[n][k] = WignerFloat(b);
            if (k < n) { b *= (n - k); b /= (k + 1); }
        }
    }
    std::vector<WignerFloat> root_fact(dim); // sqrt[(j+m)!(j-m)!], m = j - r
    {
        boost::multiprecision::cpp_int f = 1;
        std::vector<boost::multiprecision::cpp_int> fact(j2 + 1);
        fact[0] = 1;
        for (long long i = 1; i <= j2; ++i) { f *= i; fact[i] = f; }
        for (long long r = 0; r < dim; ++r)
            root_fact[r] = sqrt(WignerFloat(fact[j2 - r] * fact[r]));
    }

    RealMatrix d(dim, dim);
    for (long long r = 0; r < dim; ++r) {
        const long long mr2 = j2 - 2 * r; // m'
        const long long jpmr = (j2 + mr2) / 2;
        for (long long col = 0; col < dim; ++col) {
            const long long mc2 = j2 - 2 * col; // m
            const long long jpm = (j2 + mc2) / 2;
            const long long jmm = (j2 - mc2) / 2;
            const long long msum = (mc2 + mr2) / 2;
            const long long nu_lo = std::max<long long>(0, msum);
            const long long nu_hi = std::min(jpm, jpmr);
            WignerFloat acc = 0;
            for (long long nu = nu_lo; nu <= nu_hi; ++nu) {
                WignerFloat term = binom[jpm][nu] * binom[jmm][jpmr - nu]
                                   * powc[2 * nu - msum] * pows[j2 + msum - 2 * nu];
                acc += (nu % 2 == 0) ? term : -term;
            }
            const int sign = (jpmr % 2 == 0) ? 1 : -1;
            d(r, col) = static_cast<double>(sign * (root_fact[r] / root_fact[col]) * acc);
        }
    }
    return d;
}

// Independent cross-check: exp(-i beta Jy) evaluated through the spectral
// decomposition of Jy. Shares no code with the explicit-sum route above.
inline ComplexMatrix rotation_oracle(HalfInt j, double beta)
{
    SpinMatrices mats = spin_matrices(j);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mats.jy);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("rotation_oracle: eigensolver failed");
    const long long dim = j.twice() + 1;
    ComplexMatrix phases = ComplexMatrix::Zero(dim, dim);
    for (long long i = 0; i < dim; ++i)
        phases(i, i) = std::exp(Complex(0.0, -beta * es.eigenvalues()(i)));
    return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

} // namespace macrospin
