#pragma once

#include <cassert>
#include <string>
#include <utility>

#include "escrate/algebra/polynomial.hpp"

namespace escrate {

// Quotient of integer polynomials kept in lowest terms: gcd(num, den) is a
// unit, contents are coprime and the denominator has positive leading
// coefficient. Zero is stored as 0/1.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(IntPolynomial num, IntPolynomial den = IntPolynomial(1))
        : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) throw invalid_input("rational function with zero denominator");
        reduce();
    }

    const IntPolynomial& numerator() const { return num_; }
    const IntPolynomial& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    // deg num <= deg den, i.e. a well-defined series in z^-1.
    bool is_proper() const { return num_.is_zero() || num_.degree() <= den_.degree(); }

    Rational evaluate(const Rational& x) const
    {
        Rational d = den_.evaluate(x);
        if (d == 0) throw singular_matrix("rational function evaluated at a pole");
        return num_.evaluate(x) / d;
    }

    double evaluate(double x) const { return num_.evaluate(x) / den_.evaluate(x); }

    RationalFunction operator-() const { return RationalFunction(-num_, den_); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero()) throw invalid_input("division by zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    // "2/(z + 1)", "(2z + 1)/(z^2 + z)", "z^2 - 1".
    std::string to_string(std::string_view var = "z") const
    {
        if (den_ == IntPolynomial(1)) return num_.to_string(var);
        return wrap(num_, var) + "/" + wrap(den_, var);
    }

private:
    static bool single_term(const IntPolynomial& p)
    {
        int terms = 0;
        for (const auto& c : p.coeffs())
            if (c != 0) ++terms;
        return terms <= 1;
    }

    static std::string wrap(const IntPolynomial& p, std::string_view var)
    {
        if (single_term(p) && (p.degree() == 0 || p.leading() > 0)) return p.to_string(var);
        return "(" + p.to_string(var) + ")";
    }

    void reduce()
    {
        if (num_.is_zero()) {
            den_ = IntPolynomial(1);
            return;
        }
        IntPolynomial g = gcd(num_, den_);
        if (g.degree() > 0 || g != IntPolynomial(1)) {
            num_ = exact_quotient(num_, g);
            den_ = exact_quotient(den_, g);
        }
        BigInt c = boost::multiprecision::gcd(num_.content(), den_.content());
        if (c > 1) {
            num_ = num_.divided_by(c);
            den_ = den_.divided_by(c);
        }
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        assert(gcd(num_, den_).degree() == 0);
    }

    IntPolynomial num_;
    IntPolynomial den_;
};

} // namespace escrate
