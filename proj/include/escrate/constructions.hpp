#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "escrate/algebra/roots.hpp"
#include "escrate/words.hpp"

namespace escrate {

struct ConstructionParams {
    std::size_t q = 2;
    std::size_t m = 1;
    int variant = 1;
    std::size_t ell = 1;
    std::size_t r = 1;
    // Empty means the top ell symbols q-ell..q-1.
    std::vector<Symbol> reserved;

    std::vector<Symbol> reserved_symbols() const
    {
        if (!reserved.empty()) return reserved;
        std::vector<Symbol> s;
        for (std::size_t i = q - ell; i < q; ++i) s.push_back(static_cast<Symbol>(i));
        return s;
    }

    void validate() const
    {
        if (q < 2) throw invalid_input("construction needs q >= 2");
        if (m < 1) throw invalid_input("construction needs m >= 1");
        switch (variant) {
        case 1:
            if (ell != 1 || r != 1) throw invalid_input("construction 1 uses ell = 1 and r = 1");
            break;
        case 2:
            if (ell < 1 || ell + 1 >= q) throw invalid_input("construction 2 needs 1 <= ell < q-1");
            if (r != 1) throw invalid_input("construction 2 uses r = 1");
            break;
        case 3:
            if (ell < 1 || ell + 1 >= q) throw invalid_input("construction 3 needs 1 <= ell < q-1");
            if (r < 1 || r >= m) throw invalid_input("construction 3 needs 1 <= r < m");
            break;
        default:
            throw invalid_input("variant must be 1, 2 or 3");
        }
        if (!reserved.empty()) {
            if (reserved.size() != ell) throw invalid_input("reserved symbol count must equal ell");
            std::vector<bool> seen(q, false);
            for (Symbol s : reserved) {
                if (s >= q || seen[s]) throw invalid_input("reserved symbols must be distinct and < q");
                seen[s] = true;
            }
        }
    }

    // (q-ell)^(m-r) * ell^r
    BigInt cardinality() const
    {
        BigInt c = 1;
        for (std::size_t i = 0; i + r < m; ++i) c *= static_cast<unsigned long long>(q - ell);
        for (std::size_t i = 0; i < r; ++i) c *= static_cast<unsigned long long>(ell);
        return c;
    }
};

namespace detail {

// Odometer over tuples of `len` symbols drawn from `alphabet`, lexicographic.
template <class F>
void for_each_tuple(const std::vector<Symbol>& alphabet, std::size_t len, F&& f)
{
    std::vector<std::size_t> idx(len, 0);
    std::vector<Symbol> cur(len);
    while (true) {
        for (std::size_t k = 0; k < len; ++k) cur[k] = alphabet[idx[k]];
        f(cur);
        std::size_t k = len;
        while (k > 0 && idx[k - 1] + 1 == alphabet.size()) idx[--k] = 0;
        if (k == 0) return;
        ++idx[k - 1];
    }
}

} // namespace detail

// Words w.u with w over the free symbols (length m - r) and u over the
// reserved symbols (length r); ordered by w, then u.
inline WordSet construct_property_P(const ConstructionParams& p)
{
    p.validate();
    const auto reserved = p.reserved_symbols();
    std::vector<bool> is_reserved(p.q, false);
    for (Symbol s : reserved) is_reserved[s] = true;
    std::vector<Symbol> free;
    for (Symbol s = 0; s < p.q; ++s)
        if (!is_reserved[s]) free.push_back(s);
    WordSet out(p.q);
    const std::size_t head = p.m - p.r;
    auto emit = [&](const std::vector<Symbol>& w) {
        detail::for_each_tuple(reserved, p.r, [&](const std::vector<Symbol>& u) {
            std::vector<Symbol> s = w;
            s.insert(s.end(), u.begin(), u.end());
            out.insert(Word(std::move(s), p.q));
        });
    };
    if (head == 0) emit({});
    else detail::for_each_tuple(free, head, emit);
    return out;
}

// Every autocorrelation is z^(m-1) and every cross-correlation vanishes,
// i.e. no proper suffix of any word is a prefix of any word.
inline bool verify_property_P(const WordSet& w)
{
    if (w.empty()) return true;
    if (!w.equal_length()) throw invalid_input("property (P) is defined for equal-length words");
    const std::size_t m = w[0].size();
    for (std::size_t len = 1; len < m; ++len) {
        std::unordered_set<std::uint64_t> prefixes;
        prefixes.reserve(w.size() * 2);
        for (const auto& x : w) prefixes.insert(x.prefix(len).code());
        for (const auto& x : w)
            if (prefixes.count(x.suffix(len).code())) return false;
    }
    return true;
}

// Largest m >= n with (q-ell)^(m-r) ell^r >= q^(m-n), by exact integer search.
inline std::size_t max_m_bound(std::size_t q, std::size_t n, std::size_t ell, std::size_t r = 1)
{
    if (ell >= q) throw invalid_input("ell must be smaller than q");
    if (ell < 1 || n < 1 || r < 1) throw invalid_input("n, ell and r must be positive");
    auto feasible = [&](std::size_t m) {
        if (m < r) return false;
        BigInt card = 1, need = 1;
        for (std::size_t i = 0; i + r < m; ++i) card *= static_cast<unsigned long long>(q - ell);
        for (std::size_t i = 0; i < r; ++i) card *= static_cast<unsigned long long>(ell);
        for (std::size_t i = 0; i + n < m; ++i) need *= static_cast<unsigned long long>(q);
        return card >= need;
    };
    if (!feasible(n)) throw invalid_input("no m >= n satisfies the cardinality condition");
    std::size_t m = n;
    while (feasible(m + 1)) {
        ++m;
        if (m > 100000) throw invalid_input("bound search did not terminate");
    }
    return m;
}

// n + ((n-r) ln(q-ell) + r ln ell) / (ln q - ln(q-ell))
inline double max_m_bound_closed_form(std::size_t q, std::size_t n, std::size_t ell, std::size_t r = 1)
{
    const double lq = std::log(static_cast<double>(q)), lf = std::log(static_cast<double>(q - ell));
    return static_cast<double>(n) +
           (static_cast<double>(n - r) * lf + static_cast<double>(r) * std::log(static_cast<double>(ell))) / (lq - lf);
}

struct MuRoot {
    double mu = 0;
    double rho = 0;
    IntPolynomial polynomial;
    // m < (n-1) + (n-1) ln(q-1)/(ln q - ln(q-1))
    bool within_stated_bound = false;
    // m < n + (n-1) ln(q-1)/(ln q - ln(q-1))
    bool within_proof_bound = false;
};

// r^m - q r^(m-1) + q^(m-n)
inline IntPolynomial p_mn(std::size_t q, std::size_t m, std::size_t n)
{
    if (m < n || n < 1) throw invalid_input("p_{m,n} needs m >= n >= 1");
    BigInt k = 1;
    for (std::size_t i = 0; i < m - n; ++i) k *= static_cast<unsigned long long>(q);
    IntPolynomial p = IntPolynomial::monomial(1, m) - IntPolynomial::monomial(static_cast<unsigned long long>(q), m - 1);
    return p + IntPolynomial(k);
}

inline MuRoot mu_mn_root(std::size_t q, std::size_t m, std::size_t n)
{
    if (q < 2) throw invalid_input("q must be at least 2");
    MuRoot out;
    out.polynomial = p_mn(q, m, n);
    const Rational lo(static_cast<long long>(q - 1)), hi(static_cast<long long>(q));
    const bool ok = out.polynomial.sign_at(Rational(0)) > 0 && out.polynomial.sign_at(lo) < 0 &&
                    out.polynomial.sign_at(hi) > 0;
    if (!ok)
        throw invalid_input("outside theorem regime: p_{" + std::to_string(m) + "," + std::to_string(n) +
                            "} fails the sign checks p(0) > 0, p(q-1) < 0, p(q) > 0");
    out.mu = isolate_dominant_positive_root(RootBracket(out.polynomial, lo, hi));
    out.rho = -std::log(out.mu / static_cast<double>(q));
    const double lq = std::log(static_cast<double>(q)), lq1 = std::log(static_cast<double>(q - 1));
    const double tail = static_cast<double>(n - 1) * lq1 / (lq - lq1);
    out.within_stated_bound = static_cast<double>(m) < static_cast<double>(n - 1) + tail;
    out.within_proof_bound = static_cast<double>(m) < static_cast<double>(n) + tail;
    return out;
}

struct MonotonicityRow {
    std::size_t m = 0;
    std::optional<MuRoot> root;
};

struct MonotonicityReport {
    std::vector<MonotonicityRow> rows;
    bool monotone = true;
    bool partial = false;
};

inline MonotonicityReport rho_monotonicity_check(std::size_t q, std::size_t n, std::size_t m_lo, std::size_t m_hi)
{
    if (m_lo > m_hi) throw invalid_input("empty m range");
    MonotonicityReport rep;
    for (std::size_t m = m_lo; m <= m_hi; ++m) {
        MonotonicityRow row{m, std::nullopt};
        try {
            row.root = mu_mn_root(q, m, n);
        } catch (const invalid_input&) {
            rep.partial = true;
        }
        rep.rows.push_back(std::move(row));
    }
    const MuRoot* prev = nullptr;
    for (const auto& row : rep.rows) {
        if (!row.root) {
            prev = nullptr;
            continue;
        }
        if (prev && !(row.root->mu < prev->mu && row.root->rho > prev->rho)) rep.monotone = false;
        prev = &*row.root;
    }
    return rep;
}

} // namespace escrate
