#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ngl {

// Exact rational with 64-bit numerator/denominator, always normalized
// (den > 0, gcd(num, den) == 1). Overflow throws; desk-scale games keep
// values far below the limit.
struct Frac {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Frac() = default;
    Frac(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Frac: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Frac: multiply overflow");
        return r;
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Frac: add overflow");
        return r;
    }

    friend Frac operator+(const Frac& a, const Frac& b) {
        const std::int64_t g = std::gcd(a.den, b.den);
        const std::int64_t bd = b.den / g;
        return Frac(checked_add(checked_mul(a.num, bd), checked_mul(b.num, a.den / g)),
                    checked_mul(a.den, bd));
    }
    friend Frac operator-(const Frac& a, const Frac& b) { return a + Frac(-b.num, b.den); }
    friend Frac operator*(const Frac& a, const Frac& b) {
        const std::int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
        const std::int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
        return Frac(checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1));
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.num == 0) throw std::invalid_argument("Frac: divide by zero");
        return a * Frac(b.den, b.num);
    }
    friend bool operator==(const Frac& a, const Frac& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
    friend bool operator<(const Frac& a, const Frac& b) {
        return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
    }
    friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
    friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
    friend bool operator>=(const Frac& a, const Frac& b) { return !(a < b); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Parses "n" or "n/d".
    static Frac parse(const std::string& s) {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Frac(std::stoll(s));
        return Frac(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
};

}  // namespace ngl
