#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "escrate/algebra/polynomial.hpp"

namespace escrate {

inline constexpr double default_root_tolerance = 1e-13;

// Interval (lo, hi) over which `polynomial` changes sign strictly.
class RootBracket {
public:
    RootBracket(IntPolynomial p, Rational lo, Rational hi)
        : p_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi))
    {
        if (!(lo_ < hi_)) throw invalid_input("root bracket needs lo < hi");
        int a = p_.sign_at(lo_);
        int b = p_.sign_at(hi_);
        if (a == 0 || b == 0 || a == b) throw invalid_input("polynomial does not change sign on the bracket");
    }

    const IntPolynomial& polynomial() const { return p_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

private:
    IntPolynomial p_;
    Rational lo_;
    Rational hi_;
};

// Exact bisection down to width tol, then Newton polish clamped to the final
// bracket.
inline double isolate_dominant_positive_root(const RootBracket& bracket, double tol = default_root_tolerance)
{
    const IntPolynomial& p = bracket.polynomial();
    Rational lo = bracket.lo();
    Rational hi = bracket.hi();
    const int slo = p.sign_at(lo);
    const Rational width(tol);
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        int s = p.sign_at(mid);
        if (s == 0) return mid.convert_to<double>();
        if (s == slo) lo = mid;
        else hi = mid;
    }
    const IntPolynomial dp = p.derivative();
    const long double a = lo.convert_to<long double>();
    const long double b = hi.convert_to<long double>();
    long double r = (a + b) / 2;
    for (int it = 0; it < 3; ++it) {
        long double d = dp.evaluate(r);
        if (d == 0) break;
        long double next = r - p.evaluate(r) / d;
        if (!(next >= a && next <= b)) break;
        r = next;
    }
    return static_cast<double>(r);
}

inline double isolate_dominant_positive_root(const IntPolynomial& p, const RootBracket& bracket,
                                             double tol = default_root_tolerance)
{
    if (p.primitive_part() != bracket.polynomial().primitive_part())
        throw invalid_input("bracket belongs to a different polynomial");
    return isolate_dominant_positive_root(bracket, tol);
}

// Sturm sequence of a square-free polynomial.
class SturmChain {
public:
    explicit SturmChain(const IntPolynomial& p)
    {
        if (p.is_zero()) throw invalid_input("Sturm chain of zero polynomial");
        chain_.push_back(p);
        if (p.degree() < 1) return;
        chain_.push_back(p.derivative());
        while (true) {
            const IntPolynomial& a = chain_[chain_.size() - 2];
            const IntPolynomial& b = chain_.back();
            if (b.degree() < 1) break;
            // prem multiplies by lc(b)^k; keep the sign of the true remainder.
            IntPolynomial r = pseudo_remainder(a, b);
            if (r.is_zero()) break;
            int k = a.degree() - b.degree() + 1;
            bool flip = b.leading() < 0 && (k % 2 == 1);
            IntPolynomial next = r.primitive_part();
            // primitive_part forces a positive leading coefficient; restore -rem's sign.
            bool rem_negative_leading = (r.leading() < 0) != flip;
            if (!rem_negative_leading) next = -next;
            chain_.push_back(next);
        }
    }

    int sign_changes(const Rational& x) const
    {
        int changes = 0;
        int last = 0;
        for (const auto& f : chain_) {
            int s = f.sign_at(x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

    // Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const { return sign_changes(a) - sign_changes(b); }

private:
    std::vector<IntPolynomial> chain_;
};

// 1 + max |a_i / a_n|: every real root lies in (-bound, bound).
inline BigInt cauchy_root_bound(const IntPolynomial& p)
{
    const BigInt lc = boost::multiprecision::abs(p.leading());
    BigInt best = 0;
    for (int i = 0; i < p.degree(); ++i) {
        BigInt a = boost::multiprecision::abs(p.coeffs()[static_cast<std::size_t>(i)]);
        BigInt q = (a + lc - 1) / lc;
        if (q > best) best = q;
    }
    return best + 1;
}

// Largest real root of p: either exact (a rational root found on a grid
// point) or a bracket on the square-free part. Empty when p has no real root.
struct LargestRoot {
    std::optional<Rational> exact;
    std::optional<RootBracket> bracket;
    double value() const
    {
        return exact ? exact->convert_to<double>() : isolate_dominant_positive_root(*bracket);
    }
};

// Scans unit intervals downward from `start` (or the Cauchy bound when larger
// roots exist) and then halves with Sturm counts until one simple root remains.
inline std::optional<LargestRoot> largest_real_root(const IntPolynomial& p, std::optional<BigInt> start = std::nullopt)
{
    if (p.degree() < 1) return std::nullopt;
    const IntPolynomial s = square_free_part(p);
    const SturmChain sturm(s);
    BigInt top = cauchy_root_bound(s);
    const Rational top_r(top);
    if (start) {
        Rational st(*start);
        if (st < top_r && sturm.count(st, top_r) == 0) top = *start;
    }
    const Rational bottom(-cauchy_root_bound(s));
    Rational hi(top);
    if (s.sign_at(hi) == 0) return LargestRoot{hi, std::nullopt};
    if (sturm.count(bottom, hi) == 0) return std::nullopt;

    auto refine = [&](Rational lo, Rational up) -> LargestRoot {
        if (s.sign_at(up) == 0) return LargestRoot{up, std::nullopt};
        while (true) {
            if (sturm.count(lo, up) == 1 && s.sign_at(lo) != 0)
                return LargestRoot{std::nullopt, RootBracket(s, lo, up)};
            Rational mid = (lo + up) / 2;
            int above = sturm.count(mid, up);
            if (above == 0 && s.sign_at(mid) == 0) return LargestRoot{mid, std::nullopt};
            if (above > 0) lo = mid;
            else up = mid;
        }
    };

    if (sturm.count(Rational(0), hi) == 0) return refine(bottom, Rational(0));
    for (BigInt j = top; j > 0; --j) {
        Rational a(j - 1);
        Rational b(j);
        if (sturm.count(a, b) > 0) return refine(a, b);
    }
    return std::nullopt;
}

} // namespace escrate
