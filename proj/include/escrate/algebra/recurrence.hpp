#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "escrate/algebra/rational_function.hpp"

namespace escrate {

// f_j = (c_1 f_{j-1} + ... + c_d f_{j-d}) / leading for j >= initial.size().
struct LinearRecurrence {
    std::vector<BigInt> coefficients;
    BigInt leading = 1;
    std::vector<BigInt> initial;

    std::size_t order() const { return coefficients.size(); }

    std::vector<BigInt> terms(std::size_t count) const
    {
        std::vector<BigInt> f;
        f.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            if (j < initial.size()) {
                f.push_back(initial[j]);
                continue;
            }
            BigInt acc = 0;
            for (std::size_t i = 1; i <= coefficients.size() && i <= j; ++i) acc += coefficients[i - 1] * f[j - i];
            BigInt q, r;
            boost::multiprecision::divide_qr(acc, leading, q, r);
            if (r != 0) throw invalid_input("recurrence produces non-integral terms");
            f.push_back(std::move(q));
        }
        return f;
    }

    // leading r^d - c_1 r^{d-1} - ... - c_d
    IntPolynomial characteristic_polynomial() const
    {
        std::vector<BigInt> desc;
        desc.push_back(leading);
        for (const auto& c : coefficients) desc.push_back(-c);
        return IntPolynomial::from_descending(std::move(desc));
    }

    // "f(k+2) = 5 f(k+1) + 4 f(k)"
    std::string to_string(const std::string& name = "f") const
    {
        const std::size_t d = coefficients.size();
        if (d == 0) return name + "(k) = 0";
        std::string s;
        if (leading != 1) s += leading.str() + " ";
        s += name + "(k+" + std::to_string(d) + ") =";
        bool first = true;
        for (std::size_t i = 1; i <= d; ++i) {
            const BigInt& c = coefficients[i - 1];
            if (c == 0) continue;
            BigInt mag = boost::multiprecision::abs(c);
            if (first) s += c < 0 ? " -" : "";
            else s += c < 0 ? " -" : " +";
            s += " ";
            if (mag != 1) s += mag.str() + " ";
            std::size_t shift = d - i;
            s += name + (shift == 0 ? "(k)" : "(k+" + std::to_string(shift) + ")");
            first = false;
        }
        if (first) s += " 0";
        return s;
    }
};

// Coefficients f_0..f_{count-1} of F = sum f_k z^-k by long division in z^-1.
inline std::vector<BigInt> series_coefficients(const RationalFunction& F, std::size_t count)
{
    if (!F.is_proper()) throw invalid_input("rational function is not proper; no series in 1/z");
    const IntPolynomial& N = F.numerator();
    const IntPolynomial& D = F.denominator();
    const int d = D.degree();
    const BigInt& lead = D.leading();
    std::vector<BigInt> f;
    f.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const long long idx = static_cast<long long>(d) - static_cast<long long>(j);
        BigInt acc = idx >= 0 ? N.coeff(static_cast<std::size_t>(idx)) : BigInt(0);
        for (std::size_t i = 1; i <= static_cast<std::size_t>(d) && i <= j; ++i)
            acc -= D.coeff(static_cast<std::size_t>(d) - i) * f[j - i];
        BigInt q, r;
        boost::multiprecision::divide_qr(acc, lead, q, r);
        if (r != 0) throw invalid_input("series coefficients are not integral");
        f.push_back(std::move(q));
    }
    return f;
}

// The recurrence is the denominator read backwards; it holds once the
// numerator's lowest-order terms are exhausted.
inline LinearRecurrence recurrence_from_rational(const RationalFunction& F)
{
    if (!F.is_proper()) throw invalid_input("rational function is not proper; no series in 1/z");
    const IntPolynomial& D = F.denominator();
    const int d = D.degree();
    LinearRecurrence rec;
    rec.leading = D.leading();
    for (int i = 1; i <= d; ++i) rec.coefficients.push_back(-D.coeff(static_cast<std::size_t>(d - i)));
    std::size_t need = static_cast<std::size_t>(d);
    if (!F.numerator().is_zero())
        need = std::max<std::size_t>(need, static_cast<std::size_t>(d - F.numerator().order() + 1));
    rec.initial = series_coefficients(F, need);
    return rec;
}

} // namespace escrate
