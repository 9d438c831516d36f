#pragma once

#include <cmath>
#include <stdexcept>

namespace macrospin {

// P_l(x) by the three-term recurrence
// (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}, seeded with P_0 = 1, P_1 = x.
inline double legendre(long long l, double x)
{
    if (l < 0) throw std::domain_error("legendre: negative degree");
    if (std::abs(x) > 1.0) throw std::domain_error("legendre: |x| > 1");
    if (l == 0) return 1.0;
    double pm1 = 1.0;
    double p = x;
    for (long long k = 1; k < l; ++k) {
        double pnext = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        pm1 = p;
        p = pnext;
    }
    return p;
}

} // namespace macrospin
