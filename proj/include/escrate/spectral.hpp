#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "escrate/algebra/roots.hpp"
#include "escrate/shift.hpp"

namespace escrate {

struct PerronOptions {
    double tolerance = 1e-14;
    std::size_t max_iterations = 100000;
    // Replace lambda by the exact largest root of the characteristic
    // polynomial for small matrices.
    bool exact_refinement = true;
    std::size_t exact_refinement_max_dim = 12;
};

// u is the left and v the right eigenvector; |u|_2 = 1 and u.v = 1.
struct PerronData {
    double lambda = 0;
    std::vector<double> left;
    std::vector<double> right;
    bool reducible = false;
    std::size_t iterations = 0;
};

namespace detail {

// Power iteration on (T + I) from a positive vector. `transpose` iterates
// x <- x (T + I) instead. T must be irreducible, so every iterate stays
// positive and min/max of y_i / x_i bracket lambda + 1 (Collatz-Wielandt).
inline double power_iterate(const TransitionMatrix& t, bool transpose, const PerronOptions& opt,
                            std::vector<double>& x, std::size_t& iterations)
{
    const std::size_t n = t.dim();
    x.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    double lo = 0, hi = 0;
    iterations = 0;
    for (std::size_t it = 0; it < opt.max_iterations; ++it) {
        ++iterations;
        if (!transpose) {
            for (std::size_t i = 0; i < n; ++i) {
                double s = x[i];
                for (auto j : t.successors(i)) s += x[j];
                y[i] = s;
            }
        } else {
            y = x;
            for (std::size_t i = 0; i < n; ++i)
                for (auto j : t.successors(i)) y[j] += x[i];
        }
        lo = std::numeric_limits<double>::infinity();
        hi = 0;
        double yy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] / x[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            yy += y[i] * y[i];
        }
        const double norm = std::sqrt(yy);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (hi - lo <= opt.tolerance * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi) - 1.0;
}

inline PerronData perron_irreducible(const TransitionMatrix& t, const PerronOptions& opt)
{
    PerronData d;
    std::size_t it_r = 0, it_l = 0;
    double lr = power_iterate(t, false, opt, d.right, it_r);
    double ll = power_iterate(t, true, opt, d.left, it_l);
    d.iterations = std::max(it_r, it_l);
    d.lambda = 0.5 * (lr + ll);
    double uv = 0;
    for (std::size_t i = 0; i < t.dim(); ++i) uv += d.left[i] * d.right[i];
    for (auto& x : d.right) x /= uv;
    return d;
}

inline double radius_irreducible(const TransitionMatrix& t, const PerronOptions& opt)
{
    if (t.dim() == 1) return t(0, 0) ? 1.0 : 0.0;
    std::vector<double> x;
    std::size_t it = 0;
    return power_iterate(t, false, opt, x, it);
}

} // namespace detail

// det(zI - T), exact. Intended for small matrices.
inline IntPolynomial characteristic_polynomial(const TransitionMatrix& t)
{
    const std::size_t n = t.dim();
    if (n > 64) throw invalid_input("characteristic polynomial limited to dimension 64");
    PolynomialMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntPolynomial e = t(i, j) ? IntPolynomial(-1) : IntPolynomial();
            if (i == j) e += IntPolynomial::z();
            m(i, j) = e;
        }
    return bareiss_determinant(std::move(m));
}

namespace detail {

inline double refine_lambda(const TransitionMatrix& t, double approx, const PerronOptions& opt)
{
    if (!opt.exact_refinement || t.dim() > opt.exact_refinement_max_dim || t.dim() == 0) return approx;
    auto root = largest_real_root(characteristic_polynomial(t), BigInt(static_cast<long long>(std::ceil(approx)) + 1));
    if (!root) return approx;
    double exact = root->value();
    // Guard against a float iterate that converged somewhere odd.
    if (std::abs(exact - approx) > 1e-6 * std::max(1.0, approx)) return approx;
    return exact;
}

} // namespace detail

// Spectral radius: the largest Perron value over strongly connected components.
inline double spectral_radius(const TransitionMatrix& t, const PerronOptions& opt = {})
{
    if (!t.has_edges()) return 0.0;
    auto rep = is_irreducible(t);
    double best = 0;
    if (rep.irreducible) {
        best = detail::radius_irreducible(t, opt);
    } else {
        for (std::size_t c = 0; c < rep.scc.components.size(); ++c) {
            if (!rep.scc.nontrivial(c, t)) continue;
            const auto& comp = rep.scc.components[c];
            // Max out-degree inside the component bounds its radius.
            std::size_t bound = 0;
            for (auto v : comp) {
                std::size_t d = 0;
                for (auto j : t.successors(v)) d += rep.scc.component_of[j] == c;
                bound = std::max(bound, d);
            }
            if (static_cast<double>(bound) <= best) continue;
            best = std::max(best, detail::radius_irreducible(induced_subgraph(t, comp), opt));
        }
    }
    return detail::refine_lambda(t, best, opt);
}

inline PerronData perron(const TransitionMatrix& t, const PerronOptions& opt = {})
{
    if (!t.has_edges()) throw invalid_input("Perron data of the zero matrix is undefined");
    auto rep = is_irreducible(t);
    PerronData d;
    if (rep.irreducible) {
        d = detail::perron_irreducible(t, opt);
        d.lambda = detail::refine_lambda(t, d.lambda, opt);
        return d;
    }
    // Vectors come from the essential graph when it is irreducible, else
    // from the dominant component; zero elsewhere.
    const double lambda = spectral_radius(t, opt);
    std::vector<std::size_t> support;
    auto alive = essential_nodes(t);
    for (std::size_t i = 0; i < alive.size(); ++i)
        if (alive[i]) support.push_back(i);
    bool usable = !support.empty() && is_irreducible(induced_subgraph(t, support)).irreducible;
    if (!usable) {
        double best = -1;
        for (std::size_t c = 0; c < rep.scc.components.size(); ++c) {
            if (!rep.scc.nontrivial(c, t)) continue;
            double r = detail::radius_irreducible(induced_subgraph(t, rep.scc.components[c]), opt);
            if (r > best) {
                best = r;
                support = rep.scc.components[c];
            }
        }
    }
    PerronData sub = detail::perron_irreducible(induced_subgraph(t, support), opt);
    d.left.assign(t.dim(), 0.0);
    d.right.assign(t.dim(), 0.0);
    for (std::size_t k = 0; k < support.size(); ++k) {
        d.left[support[k]] = sub.left[k];
        d.right[support[k]] = sub.right[k];
    }
    d.lambda = lambda;
    d.iterations = sub.iterations;
    d.reducible = true;
    return d;
}

// ln(spectral radius); -infinity for a nilpotent matrix.
inline double topological_entropy(const TransitionMatrix& t, const PerronOptions& opt = {})
{
    if (!t.has_edges()) throw invalid_input("entropy of the zero matrix is undefined");
    double r = spectral_radius(t, opt);
    return r > 0 ? std::log(r) : -std::numeric_limits<double>::infinity();
}

// Parry measure of cylinders for an SFT, over its higher-block presentation.
class ParryMeasure {
public:
    explicit ParryMeasure(const SubshiftSpec& spec, std::size_t max_dim = default_max_dim)
        : spec_(spec), t_(higher_block_matrix(spec, max_dim))
    {
        auto alive = essential_nodes(t_);
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < alive.size(); ++i)
            if (alive[i]) support.push_back(i);
        if (support.empty()) throw reducible_matrix("subshift is empty; Parry measure undefined");
        TransitionMatrix core = induced_subgraph(t_, support);
        if (!is_irreducible(core).irreducible)
            throw reducible_matrix("subshift is reducible; Parry measure requires an irreducible transition matrix");
        PerronData sub = detail::perron_irreducible(core, {});
        pd_.lambda = detail::refine_lambda(core, sub.lambda, {});
        pd_.iterations = sub.iterations;
        pd_.left.assign(t_.dim(), 0.0);
        pd_.right.assign(t_.dim(), 0.0);
        for (std::size_t k = 0; k < support.size(); ++k) {
            pd_.left[support[k]] = sub.left[k];
            pd_.right[support[k]] = sub.right[k];
        }
        index_of_.assign(spec.q(), -1);
        for (std::size_t k = 0; k < spec.alphabet().size(); ++k) index_of_[spec.alphabet()[k]] = static_cast<long>(k);
    }

    double lambda() const { return pd_.lambda; }
    const PerronData& perron_data() const { return pd_; }
    const TransitionMatrix& presentation() const { return t_; }
    const SubshiftSpec& spec() const { return spec_; }

    double operator()(const Word& w) const
    {
        if (w.q() != spec_.q()) throw invalid_input("word alphabet size does not match the subshift");
        const std::size_t b = spec_.word_length() - 1;
        if (w.size() < b) {
            double sum = 0;
            for (Symbol a : spec_.alphabet()) sum += (*this)(w + Word({a}, spec_.q()));
            return sum;
        }
        const std::size_t a = spec_.alphabet().size();
        std::vector<std::size_t> path;
        for (std::size_t s = 0; s + b <= w.size(); ++s) {
            std::size_t idx = 0;
            for (std::size_t k = 0; k < b; ++k) {
                long x = index_of_[w[s + k]];
                if (x < 0) return 0.0;
                idx = idx * a + static_cast<std::size_t>(x);
            }
            path.push_back(idx);
        }
        for (std::size_t k = 0; k + 1 < path.size(); ++k)
            if (!t_(path[k], path[k + 1])) return 0.0;
        const double edges = static_cast<double>(path.size() - 1);
        return pd_.left[path.front()] * pd_.right[path.back()] / std::pow(pd_.lambda, edges);
    }

private:
    SubshiftSpec spec_;
    TransitionMatrix t_;
    PerronData pd_;
    std::vector<long> index_of_;
};

inline double parry_cylinder_measure(const SubshiftSpec& spec, const Word& w)
{
    return ParryMeasure(spec)(w);
}

} // namespace escrate
