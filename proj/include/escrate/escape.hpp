#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "escrate/algebra/recurrence.hpp"
#include "escrate/spectral.hpp"

namespace escrate {

// Ambient SFT plus hole words, normalized to a common length n. Hole words
// whose extensions are ambient-forbidden are dropped (F and F1 disjoint).
class HoleSpec {
public:
    HoleSpec(const SubshiftSpec& ambient, const WordSet& hole) : original_hole_(hole)
    {
        if (hole.q() != ambient.q() && !hole.empty()) throw invalid_input("hole and ambient use different alphabets");
        for (const auto& w : hole)
            if (!ambient.allows(w)) throw invalid_input("hole word " + w.to_string() + " is forbidden in the ambient shift");
        n_ = std::max<std::size_t>({ambient.word_length(), hole.max_length(), 2});
        ambient_ = ambient.with_length(n_);
        hole_ = WordSet(ambient.q());
        for (const auto& w : normalize_equal_length(hole.empty() ? WordSet(ambient.q()) : hole, n_))
            if (ambient.allows(w)) hole_.insert(w);
    }

    const SubshiftSpec& ambient() const { return ambient_; }
    const WordSet& hole() const { return hole_; }
    const WordSet& original_hole() const { return original_hole_; }
    std::size_t word_length() const { return n_; }
    std::size_t q() const { return ambient_.q(); }

    // Sigma_{F u F1}
    SubshiftSpec with_hole_removed() const { return ambient_.with_forbidden(hole_, n_); }

private:
    SubshiftSpec ambient_;
    WordSet hole_;
    WordSet original_hole_;
    std::size_t n_ = 2;
};

enum class EscapeMethod { spectral, combinatorial };

inline const char* to_string(EscapeMethod m) { return m == EscapeMethod::spectral ? "spectral" : "combinatorial"; }

struct CombinatorialDetails {
    RationalFunction a;
    RationalFunction generating_function;
    LinearRecurrence recurrence;
};

struct EscapeResult {
    double rho = 0;
    EscapeMethod method = EscapeMethod::spectral;
    double lambda_ambient = 0;
    double lambda_with_hole = 0;
    // spectral
    std::size_t dim_ambient = 0;
    std::size_t dim_with_hole = 0;
    bool with_hole_reducible = false;
    // combinatorial
    std::optional<CombinatorialDetails> combinatorial;

    bool infinite() const { return std::isinf(rho); }
};

// Fixed-point text, or "inf" for the empty-survivor sentinel.
inline std::string format_rate(double rho, int precision = 6)
{
    if (std::isinf(rho)) return "inf";
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(precision);
    os << rho;
    return os.str();
}

namespace detail {

inline double rate_from_lambdas(double la, double lb)
{
    if (lb <= 0) return std::numeric_limits<double>::infinity();
    double rho = std::log(la) - std::log(lb);
    if (rho < 0) {
        if (rho < -1e-12) throw tolerance_failure("negative escape rate " + std::to_string(rho));
        rho = 0;
    }
    return rho;
}

} // namespace detail

inline EscapeResult escape_rate_spectral(const HoleSpec& h, std::size_t max_dim = default_max_dim)
{
    EscapeResult r;
    r.method = EscapeMethod::spectral;
    TransitionMatrix a = higher_block_matrix(h.ambient(), max_dim);
    if (!h.ambient().is_full_shift() && !essentially_irreducible(a))
        throw reducible_matrix("ambient subshift is reducible");
    r.dim_ambient = a.dim();
    r.lambda_ambient = h.ambient().is_full_shift() ? static_cast<double>(h.q()) : spectral_radius(a);
    a = TransitionMatrix();
    if (h.hole().empty()) {
        r.lambda_with_hole = r.lambda_ambient;
        r.dim_with_hole = r.dim_ambient;
        r.rho = 0;
        return r;
    }
    TransitionMatrix b = higher_block_matrix(h.with_hole_removed(), max_dim);
    r.dim_with_hole = b.dim();
    r.with_hole_reducible = !is_irreducible(b).irreducible;
    r.lambda_with_hole = spectral_radius(b);
    r.rho = detail::rate_from_lambdas(r.lambda_ambient, r.lambda_with_hole);
    return r;
}

// F(z) = z / ((z - q) + a(z)) with a(z) the sum of entries of M^-1.
inline RationalFunction generating_function(std::size_t q, const WordSet& w, RationalFunction* a_out = nullptr)
{
    if (!w.is_reduced()) throw not_reduced("word set is not reduced (a word occurs inside another)");
    RationalFunction a = w.empty() ? RationalFunction() : rational_matrix_inverse_sum(correlation_matrix(w));
    if (a_out) *a_out = a;
    const IntPolynomial zq = IntPolynomial::z() - IntPolynomial(static_cast<long long>(q));
    return RationalFunction(IntPolynomial::z() * a.denominator(), zq * a.denominator() + a.numerator());
}

inline EscapeResult escape_rate_combinatorial(std::size_t q, const WordSet& w)
{
    if (!w.empty() && w.q() != q) throw invalid_input("word alphabet size does not match q");
    EscapeResult r;
    r.method = EscapeMethod::combinatorial;
    RationalFunction a;
    RationalFunction f = generating_function(q, w, &a);
    LinearRecurrence rec = recurrence_from_rational(f);
    r.lambda_ambient = static_cast<double>(q);
    auto root = largest_real_root(f.denominator(), BigInt(static_cast<long long>(q)));
    r.lambda_with_hole = root ? root->value() : 0.0;
    r.rho = detail::rate_from_lambdas(r.lambda_ambient, r.lambda_with_hole);
    r.combinatorial = CombinatorialDetails{a, f, rec};
    return r;
}

// Solves the (k+1)x(k+1) system for F, F_1..F_k directly and checks F
// against the closed form.
inline std::vector<RationalFunction> solve_generating_system(std::size_t q, const WordSet& w)
{
    if (!w.is_reduced()) throw not_reduced("word set is not reduced (a word occurs inside another)");
    const std::size_t k = w.size();
    const IntPolynomial z = IntPolynomial::z();
    PolynomialMatrix p(k + 1);
    p(0, 0) = z - IntPolynomial(static_cast<long long>(q));
    for (std::size_t j = 1; j <= k; ++j) p(0, j) = z;
    for (std::size_t i = 1; i <= k; ++i) {
        p(i, 0) = IntPolynomial(1);
        for (std::size_t j = 1; j <= k; ++j) p(i, j) = -(z * correlation_polynomial(w[j - 1], w[i - 1]));
    }
    std::vector<IntPolynomial> rhs(k + 1);
    rhs[0] = z;
    auto sol = solve_polynomial_system(p, rhs);
    if (sol.front() != generating_function(q, w))
        throw tolerance_failure("linear system and closed form disagree on F(z)");
    return sol;
}

namespace detail {

// Block-path view of an ambient SFT for admissibility questions.
class AdmissibleWords {
public:
    explicit AdmissibleWords(const SubshiftSpec& ambient, std::size_t max_dim = default_max_dim)
        : spec_(ambient), t_(higher_block_matrix(ambient, max_dim)), alive_(essential_nodes(t_))
    {
        index_of_.assign(ambient.q(), -1);
        for (std::size_t k = 0; k < ambient.alphabet().size(); ++k) index_of_[ambient.alphabet()[k]] = static_cast<long>(k);
    }

    std::size_t block_length() const { return spec_.word_length() - 1; }
    std::size_t dim() const { return t_.dim(); }

    // State of the block starting at position s, or -1.
    long block(const Word& w, std::size_t s) const
    {
        const std::size_t a = spec_.alphabet().size();
        std::size_t idx = 0;
        for (std::size_t k = 0; k < block_length(); ++k) {
            long x = index_of_[w[s + k]];
            if (x < 0) return -1;
            idx = idx * a + static_cast<std::size_t>(x);
        }
        return alive_[idx] ? static_cast<long>(idx) : -1;
    }

    // Positive-measure cylinder: an essential block path.
    bool admissible(const Word& w) const
    {
        const std::size_t b = block_length();
        if (w.size() < b) return true;
        long prev = -1;
        for (std::size_t s = 0; s + b <= w.size(); ++s) {
            long cur = block(w, s);
            if (cur < 0) return false;
            if (prev >= 0 && !t_(static_cast<std::size_t>(prev), static_cast<std::size_t>(cur))) return false;
            prev = cur;
        }
        return true;
    }

    // Is there an essential path of exactly `steps` edges from -> to?
    bool reachable(std::size_t from, std::size_t to, std::size_t steps) const
    {
        std::vector<char> cur(t_.dim(), 0), next(t_.dim(), 0);
        cur[from] = 1;
        for (std::size_t s = 0; s < steps; ++s) {
            std::fill(next.begin(), next.end(), 0);
            bool any = false;
            for (std::size_t i = 0; i < t_.dim(); ++i)
                if (cur[i])
                    for (auto j : t_.successors(i))
                        if (alive_[j]) next[j] = any = 1;
            if (!any) return false;
            cur.swap(next);
        }
        return cur[to] != 0;
    }

private:
    SubshiftSpec spec_;
    TransitionMatrix t_;
    std::vector<bool> alive_;
    std::vector<long> index_of_;
};

} // namespace detail

struct MinimalPeriod {
    std::size_t period = 0;
    // false: no periodic point of period <= n lies in the hole and `period`
    // is the trivial value n
    bool realized = false;
};

// Least period <= n of a periodic point of the ambient shift lying in the hole.
inline MinimalPeriod minimal_period(const HoleSpec& h)
{
    if (h.hole().empty()) throw invalid_input("minimal period of an empty hole");
    const std::size_t n = h.word_length();
    detail::AdmissibleWords adm(h.ambient());
    for (std::size_t l = 1; l <= n; ++l) {
        for (const auto& u : h.hole()) {
            bool periodic = true;
            for (std::size_t i = 0; i + l < n && periodic; ++i) periodic = u[i + l] == u[i];
            if (!periodic) continue;
            // One full turn of the cycle plus a window closes every transition.
            std::vector<Symbol> s;
            for (std::size_t i = 0; i < l + n; ++i) s.push_back(u[i % l]);
            if (adm.admissible(Word(std::move(s), h.q()))) return {l, true};
        }
    }
    return {n, false};
}

// Least l >= 1 with mu(sigma^-l H  n  H) > 0.
inline std::size_t poincare_recurrence_time(const HoleSpec& h)
{
    if (h.hole().empty()) throw invalid_input("recurrence time of an empty hole");
    const std::size_t n = h.word_length();
    detail::AdmissibleWords adm(h.ambient());
    std::vector<const Word*> usable;
    for (const auto& u : h.hole())
        if (adm.admissible(u)) usable.push_back(&u);
    if (usable.empty()) throw invalid_input("hole has zero measure");
    const std::size_t b = adm.block_length();
    for (std::size_t l = 1; l <= n + adm.dim() + 1; ++l) {
        for (const Word* u : usable)
            for (const Word* v : usable) {
                if (l < n) {
                    bool overlap = true;
                    for (std::size_t i = l; i < n && overlap; ++i) overlap = (*u)[i] == (*v)[i - l];
                    if (overlap && adm.admissible(*u + v->suffix(l))) return l;
                } else {
                    long from = adm.block(*u, n - b);
                    long to = adm.block(*v, 0);
                    if (from >= 0 && to >= 0 &&
                        adm.reachable(static_cast<std::size_t>(from), static_cast<std::size_t>(to), l - n + b))
                        return l;
                }
            }
    }
    throw tolerance_failure("no return to the hole found; ambient shift is not irreducible");
}

inline double hole_measure(const HoleSpec& h, std::size_t max_dim = default_max_dim)
{
    ParryMeasure mu(h.ambient(), max_dim);
    double s = 0;
    for (const auto& w : h.hole()) s += mu(w);
    return s;
}

struct MethodComparison {
    EscapeResult spectral;
    EscapeResult combinatorial;
    double difference = 0;
};

inline constexpr double method_agreement_tolerance = 1e-9;

inline MethodComparison compare_methods(std::size_t q, const WordSet& w, std::size_t max_dim = default_max_dim)
{
    MethodComparison c;
    c.combinatorial = escape_rate_combinatorial(q, w);
    c.spectral = escape_rate_spectral(HoleSpec(SubshiftSpec::full_shift(q), w), max_dim);
    if (c.spectral.infinite() || c.combinatorial.infinite()) {
        c.difference = c.spectral.infinite() == c.combinatorial.infinite() ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        c.difference = std::abs(c.spectral.rho - c.combinatorial.rho);
    }
    if (!(c.difference <= method_agreement_tolerance))
        throw tolerance_failure("spectral rho " + format_rate(c.spectral.rho, 12) + " and combinatorial rho " +
                                format_rate(c.combinatorial.rho, 12) + " disagree for hole {" + w.to_string() + "}");
    return c;
}

} // namespace escrate
