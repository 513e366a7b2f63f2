#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pidyn {

/// Exact rational number over 64-bit integers, always stored in lowest
/// terms with a positive denominator. Intermediate products use 128-bit
/// arithmetic; results that do not fit back into 64 bits throw.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(long long num, long long den);
    // NOLINTNEXTLINE(google-explicit-constructor): integers embed naturally
    constexpr Rational(long long value) : num_(value), den_(1) {}

    long long num() const { return num_; }
    long long den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    /// "a/b", or just "a" when the denominator is 1.
    std::string str() const;
    /// Parses "a/b" or a bare integer. Throws std::invalid_argument.
    static Rational parse(const std::string& text);

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    static Rational reduce(__int128 num, __int128 den);
    long long num_;
    long long den_;
};

}  // namespace pidyn
