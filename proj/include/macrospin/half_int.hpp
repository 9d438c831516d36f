#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace macrospin {

// Exact half-integer quantum number, stored as twice its value.
// All comparisons and arithmetic are integer-exact; j and m never
// pass through floating point.
class HalfInt {
public:
    constexpr HalfInt() : twice_(0) {}
    constexpr explicit HalfInt(long long twice) : twice_(twice) {}

    static constexpr HalfInt from_int(long long n) { return HalfInt(2 * n); }
    static constexpr HalfInt from_twice(long long t) { return HalfInt(t); }

    constexpr long long twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    // Valid only when is_integer().
    long long to_int() const
    {
        if (!is_integer())
            throw std::logic_error("HalfInt: " + str() + " is not an integer");
        return twice_ / 2;
    }

    constexpr double to_double() const { return static_cast<double>(twice_) / 2.0; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

    // True when m is a valid magnetic label for spin j: |m| <= j and
    // matching parity.
    constexpr bool is_projection_of(HalfInt j) const
    {
        long long a = twice_ < 0 ? -twice_ : twice_;
        return a <= j.twice_ && ((twice_ - j.twice_) % 2 == 0);
    }

    // Parses "3", "-2", "1/2", "-3/2". Denominator must be 1 or 2.
    static HalfInt parse(const std::string& s)
    {
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                std::size_t pos = 0;
                long long n = std::stoll(s, &pos);
                if (pos != s.size()) throw std::invalid_argument(s);
                return from_int(n);
            }
            std::size_t pos = 0;
            long long num = std::stoll(s.substr(0, slash), &pos);
            if (pos != slash) throw std::invalid_argument(s);
            long long den = std::stoll(s.substr(slash + 1), &pos);
            if (pos != s.size() - slash - 1) throw std::invalid_argument(s);
            if (den == 1) return from_int(num);
            if (den == 2) return from_twice(num);
            throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw std::invalid_argument("HalfInt: cannot parse \"" + s + "\"");
        }
    }

    // "2", "-1", "1/2", "-3/2".
    std::string str() const
    {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    long long twice_;
};

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

} // namespace macrospin
