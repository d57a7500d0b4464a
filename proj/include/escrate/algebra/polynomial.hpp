#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "escrate/error.hpp"

namespace escrate {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense univariate polynomial with arbitrary-precision integer coefficients.
// coeffs()[i] is the coefficient of z^i (ascending order). The zero
// polynomial has no coefficients and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(const BigInt& constant) { if (constant != 0) c_.push_back(constant); }
    IntPolynomial(long long constant) : IntPolynomial(BigInt(constant)) {}
    IntPolynomial(int constant) : IntPolynomial(BigInt(constant)) {}

    static IntPolynomial from_ascending(std::vector<BigInt> coeffs)
    {
        IntPolynomial p;
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }

    static IntPolynomial from_descending(std::vector<BigInt> coeffs)
    {
        std::reverse(coeffs.begin(), coeffs.end());
        return from_ascending(std::move(coeffs));
    }

    static IntPolynomial monomial(const BigInt& coeff, std::size_t degree)
    {
        if (coeff == 0) return {};
        IntPolynomial p;
        p.c_.assign(degree + 1, BigInt(0));
        p.c_[degree] = coeff;
        return p;
    }

    static IntPolynomial z() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

    const BigInt& leading() const
    {
        if (c_.empty()) throw invalid_input("zero polynomial has no leading coefficient");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    // Index of the lowest nonzero coefficient; -1 for zero.
    int order() const
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return static_cast<int>(i);
        return -1;
    }

    BigInt content() const
    {
        BigInt g = 0;
        for (const auto& a : c_) {
            g = boost::multiprecision::gcd(g, a);
            if (g == 1) break;
        }
        return boost::multiprecision::abs(g);
    }

    // Divided by content, leading coefficient made positive.
    IntPolynomial primitive_part() const
    {
        if (is_zero()) return {};
        BigInt g = content();
        if (leading() < 0) g = -g;
        IntPolynomial p = *this;
        for (auto& a : p.c_) a /= g;
        return p;
    }

    IntPolynomial derivative() const
    {
        IntPolynomial d;
        if (c_.size() <= 1) return d;
        d.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d.c_[i - 1] = c_[i] * static_cast<unsigned long long>(i);
        d.trim();
        return d;
    }

    // Exact value at a rational point.
    Rational evaluate(const Rational& x) const
    {
        const BigInt& a = boost::multiprecision::numerator(x);
        const BigInt& b = boost::multiprecision::denominator(x);
        return Rational(scaled_value(a, b), power(b, degree() < 0 ? 0 : degree()));
    }

    // Sign of p(x); avoids building the rational.
    int sign_at(const Rational& x) const
    {
        BigInt v = scaled_value(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    }

    long double evaluate(long double x) const
    {
        long double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->convert_to<long double>();
        return acc;
    }

    double evaluate(double x) const { return static_cast<double>(evaluate(static_cast<long double>(x))); }

    IntPolynomial operator-() const
    {
        IntPolynomial p = *this;
        for (auto& a : p.c_) a = -a;
        return p;
    }

    IntPolynomial& operator+=(const IntPolynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }

    IntPolynomial& operator-=(const IntPolynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    IntPolynomial& operator*=(const IntPolynomial& o)
    {
        *this = *this * o;
        return *this;
    }

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        IntPolynomial r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }

    friend IntPolynomial operator*(const BigInt& s, IntPolynomial p)
    {
        if (s == 0) return {};
        for (auto& a : p.c_) a *= s;
        return p;
    }

    // Coefficientwise exact division by an integer.
    IntPolynomial divided_by(const BigInt& s) const
    {
        if (s == 0) throw invalid_input("division of a polynomial by zero");
        IntPolynomial p = *this;
        for (auto& a : p.c_) {
            BigInt q, r;
            boost::multiprecision::divide_qr(a, s, q, r);
            if (r != 0) throw invalid_input("inexact integer division of polynomial");
            a = std::move(q);
        }
        return p;
    }

    IntPolynomial shifted(std::size_t k) const
    {
        if (is_zero()) return {};
        IntPolynomial p;
        p.c_.assign(k, BigInt(0));
        p.c_.insert(p.c_.end(), c_.begin(), c_.end());
        return p;
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

    // Descending terms, e.g. "z^2 - 5z - 4".
    std::string to_string(std::string_view var = "z") const
    {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& a = c_[static_cast<std::size_t>(i)];
            if (a == 0) continue;
            BigInt mag = boost::multiprecision::abs(a);
            if (first) {
                if (a < 0) os << '-';
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) os << mag;
            if (i >= 1) os << var;
            if (i >= 2) os << '^' << i;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    static BigInt power(const BigInt& b, int e)
    {
        BigInt r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

    // b^deg * p(a/b), an integer.
    BigInt scaled_value(const BigInt& a, const BigInt& b) const
    {
        if (c_.empty()) return 0;
        BigInt acc = c_.back();
        BigInt bpow = 1;
        for (int i = degree() - 1; i >= 0; --i) {
            bpow *= b;
            acc = acc * a + c_[static_cast<std::size_t>(i)] * bpow;
        }
        return acc;
    }

    std::vector<BigInt> c_;
};

// lc(b)^(deg a - deg b + 1) * a mod b.
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero()) throw invalid_input("pseudo-remainder by zero polynomial");
    if (a.degree() < b.degree()) return a;
    IntPolynomial r = a;
    const BigInt lb = b.leading();
    int e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        IntPolynomial t = IntPolynomial::monomial(r.leading(), static_cast<std::size_t>(r.degree() - b.degree()));
        r = lb * r - t * b;
        --e;
    }
    for (; e > 0; --e) r = lb * r;
    return r;
}

// Exact quotient a / b; throws when b does not divide a over Z[z].
inline IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero()) throw invalid_input("division by zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw invalid_input("inexact polynomial division");
    std::vector<BigInt> rem = a.coeffs();
    const auto db = static_cast<std::size_t>(b.degree());
    std::vector<BigInt> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, BigInt(0));
    const BigInt& lb = b.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
        BigInt& top = rem[k + db];
        if (top == 0) continue;
        BigInt q, r;
        boost::multiprecision::divide_qr(top, lb, q, r);
        if (r != 0) throw invalid_input("inexact polynomial division");
        for (std::size_t i = 0; i <= db; ++i) rem[k + i] -= q * b.coeffs()[i];
        quot[k] = std::move(q);
    }
    for (const auto& x : rem)
        if (x != 0) throw invalid_input("inexact polynomial division");
    return IntPolynomial::from_ascending(std::move(quot));
}

// Greatest common divisor in Z[z], positive leading coefficient.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero()) return b.is_zero() ? IntPolynomial{} : b.primitive_part() * IntPolynomial(b.content());
    if (b.is_zero()) return a.primitive_part() * IntPolynomial(a.content());
    BigInt c = boost::multiprecision::gcd(a.content(), b.content());
    IntPolynomial x = a.primitive_part();
    IntPolynomial y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPolynomial r = pseudo_remainder(x, y);
        x = std::move(y);
        y = r.is_zero() ? IntPolynomial{} : r.primitive_part();
    }
    return c * x.primitive_part();
}

inline IntPolynomial square_free_part(const IntPolynomial& p)
{
    if (p.degree() < 1) return p;
    IntPolynomial g = gcd(p, p.derivative());
    return exact_quotient(p.primitive_part(), g.primitive_part()).primitive_part();
}

} // namespace escrate
