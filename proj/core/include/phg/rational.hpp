#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phg {

// Exact rational on 64-bit components, always normalized with den > 0.
// Intermediate products go through 128 bits; desk-scale parameters stay far
// below that.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num) * b.num, i128(a.den) * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return make(i128(a.num) * b.den, i128(a.den) * b.num);
    }
    Rational operator-() const { return Rational(-num, den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num) * b.den < i128(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool is_integer() const { return den == 1; }

    // True iff r * x is an integer.
    bool times_is_integer(std::int64_t x) const { return (i128(num) * x) % den == 0; }

    // r * x, which must be an integer.
    std::int64_t times_int(std::int64_t x) const {
        i128 v = i128(num) * x;
        if (v % den != 0) throw std::domain_error("Rational: product is not integral");
        return static_cast<std::int64_t>(v / den);
    }

    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "a/b", "a", or a plain decimal such as "0.25".
    static Rational parse(std::string_view s);

private:
    using i128 = __int128;
    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: 64-bit overflow");
        Rational r;
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        return r;
    }
    static i128 gcd128(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a;
    }
};

inline Rational Rational::parse(std::string_view s) {
    auto bad = [&] { throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    auto to_i64 = [&](std::string_view t) -> std::int64_t {
        if (t.empty()) bad();
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(std::string(t), &pos);
        } catch (...) { bad(); }
        if (pos != t.size()) bad();
        return v;
    };
    auto slash = s.find('/');
    if (slash != std::string_view::npos)
        return Rational(to_i64(s.substr(0, slash)), to_i64(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (fp.empty() || fp.size() > 15) bad();
        bool neg = !ip.empty() && ip[0] == '-';
        std::int64_t den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        std::int64_t whole = ip.empty() || ip == "-" ? 0 : to_i64(ip);
        std::int64_t frac = to_i64(fp);
        if (frac < 0) bad();
        return Rational(whole * den + (neg ? -frac : frac), den);
    }
    return Rational(to_i64(s));
}

}  // namespace phg
