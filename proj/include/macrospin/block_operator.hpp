#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ensemble.hpp"
#include "wigner.hpp"

namespace macrospin {

// Operator in the direct-sum representation: one matrix per total-j value.
// Magnetization projectors and the polar rotation act identically on all
// lambda_j copies of a j-block, so a single matrix per j is stored and the
// multiplicity enters only through traces and norms.
struct BlockEntry {
    HalfInt j;
    BigInt multiplicity;
    ComplexMatrix block; // (2j+1) x (2j+1), basis m = j, ..., -j
};

struct BlockOperator {
    long long spin_count = 0;
    HalfInt single_spin;
    std::vector<BlockEntry> entries; // ascending j
};

// P_m in the direct-sum representation: within each j-block the diagonal
// matrix with a single 1 at position m (zero block when |m| > j).
inline BlockOperator block_projector(const EnsembleSpec& spec, HalfInt m)
{
    if (!spec.valid_outcome(m))
        throw std::invalid_argument("block_projector: invalid outcome m");
    BlockOperator out{spec.spin_count(), spec.single_spin(), {}};
    for (const auto& [j, lambda] : spec.table().entries) {
        const long long dim = j.twice() + 1;
        ComplexMatrix block = ComplexMatrix::Zero(dim, dim);
        if (m.is_projection_of(j)) {
            long long idx = (j.twice() - m.twice()) / 2; // m descending
            block(idx, idx) = 1.0;
        }
        out.entries.push_back({j, lambda, std::move(block)});
    }
    return out;
}

// The polar rotation D(beta): the Wigner d-matrix in every j-block.
inline BlockOperator block_rotation(const EnsembleSpec& spec, double beta)
{
    BlockOperator out{spec.spin_count(), spec.single_spin(), {}};
    for (const auto& [j, lambda] : spec.table().entries)
        out.entries.push_back({j, lambda, wigner_d_matrix(j, beta).cast<Complex>()});
    return out;
}

namespace detail {

inline void check_match(const BlockOperator& a, const BlockOperator& b)
{
    if (a.spin_count != b.spin_count || !(a.single_spin == b.single_spin)
        || a.entries.size() != b.entries.size())
        throw std::invalid_argument("block operators: ensemble mismatch");
}

} // namespace detail

inline BlockOperator conjugate(const BlockOperator& u, const BlockOperator& a)
{
    detail::check_match(u, a);
    BlockOperator out{a.spin_count, a.single_spin, {}};
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        out.entries.push_back({a.entries[i].j, a.entries[i].multiplicity,
                               u.entries[i].block * a.entries[i].block
                                   * u.entries[i].block.adjoint()});
    }
    return out;
}

inline BlockOperator commutator(const BlockOperator& a, const BlockOperator& b)
{
    detail::check_match(a, b);
    BlockOperator out{a.spin_count, a.single_spin, {}};
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto& x = a.entries[i].block;
        const auto& y = b.entries[i].block;
        out.entries.push_back({a.entries[i].j, a.entries[i].multiplicity, x * y - y * x});
    }
    return out;
}

// sqrt(sum_j lambda_j ||block_j||_F^2), matching the dense Frobenius norm.
inline double frobenius_norm(const BlockOperator& a)
{
    double sum = 0.0; // ascending j, fixed order
    for (const auto& e : a.entries)
        sum += static_cast<double>(e.multiplicity) * e.block.squaredNorm();
    return std::sqrt(sum);
}

// Multiplicity-weighted trace, comparable with the dense-representation trace.
inline Complex weighted_trace(const BlockOperator& a)
{
    Complex sum = 0.0;
    for (const auto& e : a.entries)
        sum += static_cast<double>(e.multiplicity) * e.block.trace();
    return sum;
}

// Frobenius norm of [P_m, D(beta) P_n D(beta)^dagger], the workhorse of
// the theorem scans.
inline double commutator_norm(const EnsembleSpec& spec, HalfInt m, HalfInt n, double beta)
{
    BlockOperator pm = block_projector(spec, m);
    BlockOperator pn = block_projector(spec, n);
    BlockOperator rot = block_rotation(spec, beta);
    return frobenius_norm(commutator(pm, conjugate(rot, pn)));
}

} // namespace macrospin
