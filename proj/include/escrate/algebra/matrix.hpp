#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "escrate/algebra/rational_function.hpp"

namespace escrate {

// Square matrix of integer polynomials, row-major.
class PolynomialMatrix {
public:
    PolynomialMatrix() = default;
    explicit PolynomialMatrix(std::size_t n) : n_(n), a_(n * n) {}
    PolynomialMatrix(std::initializer_list<std::initializer_list<IntPolynomial>> rows)
    {
        n_ = rows.size();
        a_.reserve(n_ * n_);
        for (const auto& r : rows) {
            if (r.size() != n_) throw invalid_input("polynomial matrix must be square");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    std::size_t size() const { return n_; }
    IntPolynomial& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const IntPolynomial& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    friend bool operator==(const PolynomialMatrix& x, const PolynomialMatrix& y)
    {
        return x.n_ == y.n_ && x.a_ == y.a_;
    }

private:
    std::size_t n_ = 0;
    std::vector<IntPolynomial> a_;
};

// Fraction-free Gaussian elimination; every division is exact in Z[z].
inline IntPolynomial bareiss_determinant(PolynomialMatrix m)
{
    const std::size_t n = m.size();
    if (n == 0) return IntPolynomial(1);
    bool negate = false;
    IntPolynomial prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return {};
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                IntPolynomial t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = exact_quotient(t, prev);
            }
            m(i, k) = IntPolynomial{};
        }
        prev = m(k, k);
    }
    IntPolynomial d = m(n - 1, n - 1);
    return negate ? -d : d;
}

// Sum of all entries of M^-1. Uses det(M + J) - det(M) = 1^T adj(M) 1 with
// J the all-ones matrix.
inline RationalFunction rational_matrix_inverse_sum(const PolynomialMatrix& m)
{
    if (m.size() == 0) return RationalFunction();
    IntPolynomial det = bareiss_determinant(m);
    if (det.is_zero()) throw singular_matrix("correlation matrix is singular (determinant is identically zero)");
    PolynomialMatrix shifted = m;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) shifted(i, j) += IntPolynomial(1);
    IntPolynomial adj_sum = bareiss_determinant(std::move(shifted)) - det;
    return RationalFunction(adj_sum, det);
}

// Solves M x = b over Q(z) by Cramer's rule.
inline std::vector<RationalFunction> solve_polynomial_system(const PolynomialMatrix& m,
                                                             const std::vector<IntPolynomial>& b)
{
    const std::size_t n = m.size();
    if (b.size() != n) throw invalid_input("right-hand side size mismatch");
    IntPolynomial det = bareiss_determinant(m);
    if (det.is_zero()) throw singular_matrix("linear system matrix is singular");
    std::vector<RationalFunction> x;
    x.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
        PolynomialMatrix mc = m;
        for (std::size_t r = 0; r < n; ++r) mc(r, c) = b[r];
        x.emplace_back(bareiss_determinant(std::move(mc)), det);
    }
    return x;
}

} // namespace escrate
