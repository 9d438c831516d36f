#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "half_int.hpp"
#include "legendre.hpp"
#include "wigner.hpp"

namespace macrospin {

// Closed form of the commutator matrix element within a j-block:
//   Gamma_{k,k'} = d^j_{m,n}(b) (delta_{k,m} d^j_{k',n}(b)
//                                - delta_{k',m} d^j_{k,n}(b)).
// Antisymmetric under k <-> k'; nonzero only when exactly one of k, k'
// equals m.
inline double gamma_element(HalfInt j, HalfInt m, HalfInt n, HalfInt k, HalfInt k_prime,
                            double beta)
{
    for (HalfInt label : {m, n, k, k_prime}) {
        if (!label.is_projection_of(j))
            throw std::invalid_argument("gamma_element: invalid label for j");
    }
    double dmn = wigner_d_element(j, m, n, beta);
    double left = (k == m) ? wigner_d_element(j, k_prime, n, beta) : 0.0;
    double right = (k_prime == m) ? wigner_d_element(j, k, n, beta) : 0.0;
    return dmn * (left - right);
}

struct Witness {
    HalfInt j;
    HalfInt k;
};

namespace detail {

// Magnetic labels of j ordered by |k| ascending, positive before negative,
// skipping m. Deterministic tie-breaking for golden outputs.
inline std::vector<HalfInt> candidate_labels(HalfInt j, HalfInt m)
{
    std::vector<HalfInt> ks;
    for (long long k2 = j.twice(); k2 >= -j.twice(); k2 -= 2)
        if (k2 != m.twice()) ks.push_back(HalfInt::from_twice(k2));
    std::stable_sort(ks.begin(), ks.end(), [](HalfInt a, HalfInt b) {
        long long aa = std::abs(a.twice()), bb = std::abs(b.twice());
        if (aa != bb) return aa < bb;
        return a.twice() > b.twice();
    });
    return ks;
}

} // namespace detail

// Constructive noncommutation witness: a pair (j, k) with k != m and
// d^j_{m,n}(beta) d^j_{k,n}(beta) != 0, which makes Gamma_{m,k} nonzero
// and hence the commutator [P_m, P~_n] nonzero.
//
// The construction follows the two-case analysis: for m = n = 0 scan the
// available j for the smallest one with P_j(cos beta) != 0 and take k = j;
// otherwise take j = max{|m|, |n|} and k = -m when |m| > |n|, else the
// smallest-|k| label that keeps both factors nonzero. If the constructive
// choice is unavailable, the remaining (j, k) pairs are scanned before
// giving up, so a none return means no available j admits a witness.
inline std::optional<Witness> witness(HalfInt m, HalfInt n, double beta,
                                      const std::vector<HalfInt>& j_values)
{
    if (j_values.empty()) throw std::invalid_argument("witness: empty j_values");
    constexpr double kThreshold = 1e-12;

    std::vector<HalfInt> js = j_values;
    std::sort(js.begin(), js.end());
    auto available = [&](HalfInt j) {
        return std::binary_search(js.begin(), js.end(), j)
               && m.is_projection_of(j) && n.is_projection_of(j);
    };
    auto product = [&](HalfInt j, HalfInt k) {
        return std::abs(wigner_d_element(j, m, n, beta) * wigner_d_element(j, k, n, beta));
    };

    if (m.twice() == 0 && n.twice() == 0) {
        for (HalfInt j : js) {
            if (j.twice() < 2 || !j.is_integer()) continue;
            if (std::abs(legendre(j.to_int(), std::cos(beta))) > kThreshold)
                return Witness{j, j}; // d^j_{0,0} = P_j(cos beta), k = j reuses it
        }
        return std::nullopt;
    }

    HalfInt jstar = std::max(m.abs(), n.abs());
    if (available(jstar)) {
        if (m.abs() > n.abs()) {
            HalfInt k = -m;
            if (product(jstar, k) > kThreshold) return Witness{jstar, k};
        } else {
            for (HalfInt k : detail::candidate_labels(jstar, m))
                if (product(jstar, k) > kThreshold) return Witness{jstar, k};
        }
    }

    // fallback: exhaustive scan over the available j values
    for (HalfInt j : js) {
        if (!m.is_projection_of(j) || !n.is_projection_of(j)) continue;
        for (HalfInt k : detail::candidate_labels(j, m))
            if (product(j, k) > kThreshold) return Witness{j, k};
    }
    return std::nullopt;
}

} // namespace macrospin
