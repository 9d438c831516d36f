#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "half_int.hpp"
#include "multiplicity.hpp"

namespace macrospin {

// Unit vector in R^3; the measurement axis n of a magnetization projector.
struct Direction {
    double x = 0.0, y = 0.0, z = 1.0;

    Direction() = default;
    Direction(double x_, double y_, double z_) : x(x_), y(y_), z(z_)
    {
        double norm = std::sqrt(x * x + y * y + z * z);
        if (std::abs(norm - 1.0) > 1e-6)
            throw std::invalid_argument("Direction: vector is not unit length");
        x /= norm;
        y /= norm;
        z /= norm;
    }

    static Direction ex() { return Direction(1, 0, 0); }
    static Direction ey() { return Direction(0, 1, 0); }
    static Direction ez() { return Direction(0, 0, 1); }

    // Direction at polar angle beta in the XZ plane.
    static Direction xz(double beta) { return Direction(std::sin(beta), 0.0, std::cos(beta)); }

    double dot(const Direction& o) const { return x * o.x + y * o.y + z * o.z; }

    // Angle between two axes, clamped into [0, pi].
    double angle_to(const Direction& o) const
    {
        return std::acos(std::clamp(dot(o), -1.0, 1.0));
    }
};

// An ensemble of N spin-s particles with its cached irrep decomposition.
class EnsembleSpec {
public:
    static constexpr long long kDefaultDenseLimit = 4096;

    EnsembleSpec(long long spin_count, HalfInt single_spin,
                 long long dense_limit = kDefaultDenseLimit)
        : spin_count_(spin_count),
          single_spin_(single_spin),
          dense_limit_(dense_limit),
          table_(multiplicities(spin_count, single_spin))
    {
    }

    long long spin_count() const { return spin_count_; }
    HalfInt single_spin() const { return single_spin_; }
    const MultiplicityTable& table() const { return table_; }
    HalfInt j_max() const { return table_.j_max(); }

    // (2s+1)^N, or -1 when it exceeds the dense limit.
    long long dense_dimension() const
    {
        BigInt dim = table_.total_dimension();
        return dim <= dense_limit_ ? static_cast<long long>(dim) : -1;
    }

    void require_dense() const
    {
        if (dense_dimension() < 0)
            throw std::domain_error("EnsembleSpec: dense dimension exceeds limit "
                                    + std::to_string(dense_limit_));
    }

    bool valid_outcome(HalfInt m) const { return m.is_projection_of(j_max()); }

    // Outcomes m = Ns, Ns-1, ..., -Ns in descending order.
    std::vector<HalfInt> outcomes() const
    {
        std::vector<HalfInt> out;
        for (long long m2 = j_max().twice(); m2 >= -j_max().twice(); m2 -= 2)
            out.push_back(HalfInt::from_twice(m2));
        return out;
    }

    bool operator==(const EnsembleSpec& o) const
    {
        return spin_count_ == o.spin_count_ && single_spin_ == o.single_spin_;
    }

private:
    long long spin_count_;
    HalfInt single_spin_;
    long long dense_limit_;
    MultiplicityTable table_;
};

} // namespace macrospin
