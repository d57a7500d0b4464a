#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "escrate/words.hpp"

namespace escrate {

// T(x, y) = (Mx, Ny) mod 1 on the 2-torus; symbol alpha = N a + b.
struct TorusMapSpec {
    std::size_t M = 2;
    std::size_t N = 2;

    TorusMapSpec(std::size_t m, std::size_t n) : M(m), N(n)
    {
        if (M < 2 || N < 2) throw invalid_input("expansion factors must be at least 2");
    }
    std::size_t q() const { return M * N; }
};

// [i M^-m, (i+1) M^-m) x [j N^-n, (j+1) N^-n)
struct Rectangle {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t m = 0;
    std::size_t n = 0;

    void validate(const TorusMapSpec& s) const
    {
        BigInt mm = 1, nn = 1;
        for (std::size_t k = 0; k < m; ++k) mm *= static_cast<unsigned long long>(s.M);
        for (std::size_t k = 0; k < n; ++k) nn *= static_cast<unsigned long long>(s.N);
        if (BigInt(static_cast<unsigned long long>(i)) >= mm)
            throw invalid_input("rectangle index i out of range [0, M^m)");
        if (BigInt(static_cast<unsigned long long>(j)) >= nn)
            throw invalid_input("rectangle index j out of range [0, N^n)");
        if (m == 0 && n == 0) throw invalid_input("rectangle needs a positive resolution");
    }

    Rational measure(const TorusMapSpec& s) const
    {
        BigInt d = 1;
        for (std::size_t k = 0; k < m; ++k) d *= static_cast<unsigned long long>(s.M);
        for (std::size_t k = 0; k < n; ++k) d *= static_cast<unsigned long long>(s.N);
        return Rational(1, d);
    }
};

namespace detail {

inline std::vector<Symbol> digits(std::size_t value, std::size_t base, std::size_t count)
{
    std::vector<Symbol> d(count, 0);
    for (std::size_t k = count; k-- > 0;) {
        d[k] = static_cast<Symbol>(value % base);
        value /= base;
    }
    return d;
}

} // namespace detail

// Words of length max(m, n); the coarser side's missing digits run over all
// values, last free position varying fastest.
inline WordSet rectangle_to_words(const TorusMapSpec& s, const Rectangle& r)
{
    r.validate(s);
    const std::size_t len = std::max(r.m, r.n);
    const auto a_fixed = detail::digits(r.i, s.M, r.m);
    const auto b_fixed = detail::digits(r.j, s.N, r.n);
    const std::size_t free_a = len - r.m, free_b = len - r.n;
    const std::size_t free_count = free_a + free_b;
    const std::size_t free_base = free_a ? s.M : s.N;
    std::size_t combos = 1;
    for (std::size_t k = 0; k < free_count; ++k) combos *= free_base;
    WordSet out(s.q());
    for (std::size_t c = 0; c < combos; ++c) {
        auto extra = detail::digits(c, free_base, free_count);
        std::vector<Symbol> a = a_fixed, b = b_fixed;
        if (free_a) a.insert(a.end(), extra.begin(), extra.end());
        else b.insert(b.end(), extra.begin(), extra.end());
        std::vector<Symbol> w(len);
        for (std::size_t k = 0; k < len; ++k) w[k] = static_cast<Symbol>(s.N * a[k] + b[k]);
        out.insert(Word(std::move(w), s.q()));
    }
    return out;
}

struct Interval {
    Rational lo;
    Rational hi;
    friend bool operator==(const Interval& x, const Interval& y) { return x.lo == y.lo && x.hi == y.hi; }
};

// Half-open x and y intervals of points whose itinerary starts with `prefix`.
inline std::pair<Interval, Interval> encode_point(const TorusMapSpec& s, const std::vector<Symbol>& prefix)
{
    Rational x = 0, y = 0, wx = 1, wy = 1;
    for (Symbol alpha : prefix) {
        if (alpha >= s.q()) throw invalid_input("symbol " + std::to_string(alpha) + " outside alphabet of size " + std::to_string(s.q()));
        wx /= static_cast<long long>(s.M);
        wy /= static_cast<long long>(s.N);
        x += wx * static_cast<long long>(alpha / s.N);
        y += wy * static_cast<long long>(alpha % s.N);
    }
    return {Interval{x, x + wx}, Interval{y, y + wy}};
}

struct MeasureComparison {
    bool equal = false;
    // (alpha, beta) with M^alpha = N^beta and gcd 1, when such a pair exists.
    std::optional<std::pair<std::size_t, std::size_t>> alpha_beta;
};

namespace detail {

inline std::map<std::size_t, std::size_t> factorize(std::size_t x)
{
    std::map<std::size_t, std::size_t> f;
    for (std::size_t p = 2; p * p <= x; ++p)
        while (x % p == 0) {
            ++f[p];
            x /= p;
        }
    if (x > 1) ++f[x];
    return f;
}

} // namespace detail

inline MeasureComparison equal_measure_classes(const TorusMapSpec& s, std::pair<std::size_t, std::size_t> a,
                                               std::pair<std::size_t, std::size_t> b)
{
    MeasureComparison out;
    Rectangle ra{0, 0, a.first, a.second}, rb{0, 0, b.first, b.second};
    out.equal = ra.measure(s) == rb.measure(s);
    auto fm = detail::factorize(s.M), fn = detail::factorize(s.N);
    bool same_primes = fm.size() == fn.size();
    if (same_primes)
        for (const auto& [p, e] : fm)
            if (!fn.count(p)) same_primes = false;
    if (same_primes) {
        // alpha e_p = beta f_p for every prime p
        const std::size_t e0 = fm.begin()->second, f0 = fn.begin()->second;
        bool proportional = true;
        for (const auto& [p, e] : fm)
            if (e * f0 != fn[p] * e0) proportional = false;
        if (proportional) {
            std::size_t g = std::gcd(e0, f0);
            out.alpha_beta = std::make_pair(f0 / g, e0 / g);
        }
    }
    return out;
}

} // namespace escrate
