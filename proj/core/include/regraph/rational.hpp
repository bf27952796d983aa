#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace regraph {

// Exact non-negative rational with 64-bit numerator/denominator, always kept
// reduced with a positive denominator. Big enough for every quantity in this
// library (path-length sums and Moore-bound terms stay far below 2^62);
// intermediate products use 128-bit arithmetic.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}

    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        normalize();
    }

    static Rational from_int(std::int64_t v) { return Rational(v, 1); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ <
               static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Fixed-point decimal string with `places` fractional digits, rounded
    // half away from zero; matches the table style used in reports ("2.2000").
    std::string to_decimal_string(int places = 4) const {
        std::int64_t scale = 1;
        for (int i = 0; i < places; ++i) scale *= 10;
        __int128 scaled = static_cast<__int128>(num_) * scale;
        __int128 q = scaled / den_;
        __int128 r = scaled % den_;
        if (2 * r >= den_) ++q;
        auto whole = static_cast<std::int64_t>(q / scale);
        auto frac = static_cast<std::int64_t>(q % scale);
        std::string s = std::to_string(whole);
        if (places > 0) {
            std::string f = std::to_string(frac);
            s += "." + std::string(places - f.size(), '0') + f;
        }
        return s;
    }

    std::string to_fraction_string() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace regraph
