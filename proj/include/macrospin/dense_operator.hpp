#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "ensemble.hpp"
#include "spin_matrices.hpp"
#include "wigner.hpp"

namespace macrospin {

// Operator in the full (2s+1)^N tensor-product representation.
struct DenseOperator {
    long long spin_count = 0;
    HalfInt single_spin;
    ComplexMatrix mat;
};

namespace detail {

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

// Single-particle spin component along n.
inline ComplexMatrix spin_along(HalfInt s, const Direction& n)
{
    SpinMatrices mats = spin_matrices(s);
    return n.x * mats.jx + n.y * mats.jy + n.z * mats.jz;
}

// Eigenprojector of the single-particle spin component along n with
// eigenvalue k, via the Lagrange interpolation polynomial on the known
// spectrum {s, s-1, ..., -s}.
inline ComplexMatrix single_spin_projector(HalfInt s, const Direction& n, HalfInt k)
{
    if (!k.is_projection_of(s))
        throw std::invalid_argument("single_spin_projector: invalid k");
    const long long dim = s.twice() + 1;
    ComplexMatrix sn = spin_along(s, n);
    ComplexMatrix p = ComplexMatrix::Identity(dim, dim);
    for (long long k2 = s.twice(); k2 >= -s.twice(); k2 -= 2) {
        if (k2 == k.twice()) continue;
        double kp = static_cast<double>(k2) / 2.0;
        p = p * (sn - kp * ComplexMatrix::Identity(dim, dim)) / (k.to_double() - kp);
    }
    return p;
}

} // namespace detail

// Total spin component J.n = sum_i S_i.n on the full tensor space.
inline DenseOperator collective_operator(const EnsembleSpec& spec, const Direction& n)
{
    spec.require_dense();
    const long long d1 = spec.single_spin().twice() + 1;
    const long long total = spec.dense_dimension();
    ComplexMatrix sn = detail::spin_along(spec.single_spin(), n);

    ComplexMatrix sum = ComplexMatrix::Zero(total, total);
    for (long long i = 0; i < spec.spin_count(); ++i) {
        ComplexMatrix term = ComplexMatrix::Identity(1, 1);
        for (long long p = 0; p < spec.spin_count(); ++p) {
            term = detail::kron(term, p == i ? sn : ComplexMatrix::Identity(d1, d1));
        }
        sum += term;
    }
    return DenseOperator{spec.spin_count(), spec.single_spin(), std::move(sum)};
}

// Magnetization projector P_m(n) built literally as the combinatorial sum
// over (k_1, ..., k_N) with k_1 + ... + k_N = m of tensor products of
// single-particle eigenprojectors along n.
inline DenseOperator projector_tensor_sum(const EnsembleSpec& spec, const Direction& n,
                                          HalfInt m)
{
    spec.require_dense();
    if (!spec.valid_outcome(m))
        throw std::invalid_argument("projector_tensor_sum: invalid outcome m");

    const HalfInt s = spec.single_spin();
    const long long n_spins = spec.spin_count();
    const long long total = spec.dense_dimension();

    std::vector<ComplexMatrix> single;
    for (long long k2 = s.twice(); k2 >= -s.twice(); k2 -= 2)
        single.push_back(detail::single_spin_projector(s, n, HalfInt::from_twice(k2)));

    ComplexMatrix acc = ComplexMatrix::Zero(total, total);
    // depth-first over k_1..k_N, pruning branches whose remaining spins
    // cannot reach the target sum; the partial tensor product rides along
    auto recurse = [&](auto&& self, long long depth, long long partial2,
                       const ComplexMatrix& partial) -> void {
        long long remaining = n_spins - depth;
        long long need2 = m.twice() - partial2;
        if (std::abs(need2) > remaining * s.twice()) return;
        if (depth == n_spins) {
            acc += partial;
            return;
        }
        for (long long idx = 0; idx < s.twice() + 1; ++idx) {
            self(self, depth + 1, partial2 + (s.twice() - 2 * idx),
                 detail::kron(partial, single[idx]));
        }
    };
    recurse(recurse, 0, 0, ComplexMatrix::Identity(1, 1));
    return DenseOperator{n_spins, s, std::move(acc)};
}

// Independent construction of the same projector via the Lagrange
// interpolation polynomial on J.n (the spectrum is integer-spaced, so no
// eigensolver is needed). Used as an oracle against the tensor-sum build.
inline DenseOperator projector_spectral(const EnsembleSpec& spec, const Direction& n,
                                        HalfInt m)
{
    spec.require_dense();
    if (!spec.valid_outcome(m))
        throw std::invalid_argument("projector_spectral: invalid outcome m");
    DenseOperator jn = collective_operator(spec, n);
    const long long total = spec.dense_dimension();
    ComplexMatrix p = ComplexMatrix::Identity(total, total);
    const long long jmax2 = spec.j_max().twice();
    for (long long mp2 = jmax2; mp2 >= -jmax2; mp2 -= 2) {
        if (mp2 == m.twice()) continue;
        double mp = static_cast<double>(mp2) / 2.0;
        p = p * (jn.mat - mp * ComplexMatrix::Identity(total, total)) / (m.to_double() - mp);
    }
    return DenseOperator{spec.spin_count(), spec.single_spin(), std::move(p)};
}

// Product of single-particle Jy rotations: the dense rotation operator
// U(beta) = exp(-i beta s_y)^{tensor N}, built from the matrix-exponential
// oracle so the dense path stays independent of the explicit d-matrix sum.
inline DenseOperator dense_rotation(const EnsembleSpec& spec, double beta)
{
    spec.require_dense();
    ComplexMatrix u1 = rotation_oracle(spec.single_spin(), beta);
    ComplexMatrix u = ComplexMatrix::Identity(1, 1);
    for (long long i = 0; i < spec.spin_count(); ++i) u = detail::kron(u, u1);
    return DenseOperator{spec.spin_count(), spec.single_spin(), std::move(u)};
}

inline DenseOperator commutator(const DenseOperator& a, const DenseOperator& b)
{
    if (a.spin_count != b.spin_count || !(a.single_spin == b.single_spin)
        || a.mat.rows() != b.mat.rows())
        throw std::invalid_argument("commutator: ensemble mismatch");
    return DenseOperator{a.spin_count, a.single_spin, a.mat * b.mat - b.mat * a.mat};
}

inline double frobenius_norm(const DenseOperator& a) { return a.mat.norm(); }

} // namespace macrospin
