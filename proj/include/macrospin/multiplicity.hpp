#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>

#include "half_int.hpp"

namespace macrospin {

using BigInt = boost::multiprecision::cpp_int;

// Irrep content of the N-fold tensor power of a spin-s particle:
// j -> lambda_j, the number of copies of the total-spin-j representation.
struct MultiplicityTable {
    long long spin_count = 0;   // N
    HalfInt single_spin;        // s
    std::map<HalfInt, BigInt> entries;

    HalfInt j_max() const { return HalfInt::from_twice(spin_count * single_spin.twice()); }

    BigInt total_dimension() const
    {
        BigInt sum = 0;
        for (const auto& [j, lambda] : entries) sum += lambda * (j.twice() + 1);
        return sum;
    }
};

// Dynamic programming over repeated angular-momentum addition:
// c_1(s) = 1, c_{n+1}(j) = sum over j' with |j'-s| <= j <= j'+s of c_n(j').
// The dimension identity sum_j lambda_j (2j+1) = (2s+1)^N is checked
// exactly before returning.
inline MultiplicityTable multiplicities(long long spin_count, HalfInt single_spin)
{
    if (spin_count < 1) throw std::invalid_argument("multiplicities: N < 1");
    if (single_spin.twice() < 0) throw std::invalid_argument("multiplicities: s < 0");

    const long long s2 = single_spin.twice();
    std::map<HalfInt, BigInt> current;
    current[single_spin] = 1;
    for (long long n = 1; n < spin_count; ++n) {
        std::map<HalfInt, BigInt> next;
        for (const auto& [jp, count] : current) {
            long long lo = std::abs(jp.twice() - s2);
            long long hi = jp.twice() + s2;
            for (long long j2 = lo; j2 <= hi; j2 += 2)
                next[HalfInt::from_twice(j2)] += count;
        }
        current = std::move(next);
    }

    MultiplicityTable table;
    table.spin_count = spin_count;
    table.single_spin = single_spin;
    table.entries = std::move(current);

    BigInt expected = boost::multiprecision::pow(BigInt(s2 + 1), static_cast<unsigned>(spin_count));
    if (table.total_dimension() != expected)
        throw std::logic_error("multiplicities: dimension identity violated");
    return table;
}

} // namespace macrospin
