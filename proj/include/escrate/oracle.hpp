#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <ostream>
#include <thread>
#include <unordered_set>
#include <vector>

#include "escrate/escape.hpp"

namespace escrate {

inline constexpr std::uint64_t default_enumeration_budget = 100000000;

// Counts of words of length 0..k_max avoiding every word of F, found by
// walking all words symbol by symbol and abandoning a prefix as soon as it
// ends in a forbidden word.
inline std::vector<std::uint64_t> count_avoiding_words_upto(std::size_t q, const WordSet& f, std::size_t k_max,
                                                            std::uint64_t budget = default_enumeration_budget)
{
    if (q < 1) throw invalid_input("alphabet size must be positive");
    if (!f.empty() && f.q() != q) throw invalid_input("forbidden words use a different alphabet size");
    long double space = 1;
    for (std::size_t i = 0; i < k_max; ++i) space *= static_cast<long double>(q);
    if (space > static_cast<long double>(budget))
        throw budget_exceeded("enumerating " + std::to_string(q) + "^" + std::to_string(k_max) + " words exceeds the budget");

    std::size_t longest = f.max_length();
    std::vector<std::unordered_set<std::uint64_t>> by_len(longest + 1);
    for (const auto& w : f) by_len[w.size()].insert(w.code());
    std::vector<std::uint64_t> qpow(longest + 1, 1);
    for (std::size_t l = 1; l <= longest; ++l) qpow[l] = qpow[l - 1] * q;

    std::vector<std::uint64_t> counts(k_max + 1, 0);
    counts[0] = 1;
    std::vector<std::uint64_t> prefix(k_max + 1, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t d) {
        for (std::size_t s = 0; s < q; ++s) {
            prefix[d + 1] = prefix[d] * q + s;
            bool bad = false;
            for (std::size_t l = 1; l <= longest && l <= d + 1 && !bad; ++l) {
                if (by_len[l].empty()) continue;
                std::uint64_t tail = prefix[d + 1] - prefix[d + 1 - l] * qpow[l];
                bad = by_len[l].count(tail) > 0;
            }
            if (bad) continue;
            ++counts[d + 1];
            if (d + 1 < k_max) walk(d + 1);
        }
    };
    if (k_max > 0) walk(0);
    return counts;
}

inline std::uint64_t count_avoiding_words(std::size_t q, const WordSet& f, std::size_t k,
                                          std::uint64_t budget = default_enumeration_budget)
{
    return count_avoiding_words_upto(q, f, k, budget)[k];
}

// s_t = fraction of samples that have not met the hole by step t.
struct SurvivalCurve {
    std::vector<double> fraction;
    std::vector<std::uint64_t> survivors;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    static SurvivalCurve from_fractions(std::vector<double> f)
    {
        SurvivalCurve c;
        c.fraction = std::move(f);
        return c;
    }

    void write_csv(std::ostream& out, int precision = 6) const
    {
        out << "step,survivors,fraction\n";
        char buf[64];
        for (std::size_t t = 0; t < fraction.size(); ++t) {
            std::snprintf(buf, sizeof buf, "%.*f", precision, fraction[t]);
            out << t << ',' << (t < survivors.size() ? survivors[t] : 0) << ',' << buf << '\n';
        }
    }
};

namespace detail {

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Independent stream per (seed, sample index).
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index)
{
    SplitMix64 mix{seed};
    std::uint64_t a = mix.next();
    SplitMix64 s{a ^ (index * 0xd1b54a32d192ed03ULL)};
    s.next();
    return s;
}

inline std::size_t sample_cumulative(const double* cum, std::size_t n, double u)
{
    std::size_t k = static_cast<std::size_t>(std::upper_bound(cum, cum + n, u) - cum);
    return std::min(k, n - 1);
}

} // namespace detail

// Parry-chain sampling in symbol space; results do not depend on `threads`.
inline SurvivalCurve simulate_survival(const SubshiftSpec& ambient, const WordSet& hole, std::uint64_t samples,
                                       std::size_t steps, std::uint64_t seed, unsigned threads = 0,
                                       std::size_t max_dim = default_max_dim)
{
    if (samples == 0) throw invalid_input("need at least one sample");
    HoleSpec h(ambient, hole);
    ParryMeasure mu(h.ambient(), max_dim);
    const TransitionMatrix& t = mu.presentation();
    const auto& u = mu.perron_data().left;
    const auto& v = mu.perron_data().right;
    const double lambda = mu.lambda();
    const std::size_t n = h.word_length();
    const std::size_t q = h.q();
    const std::size_t a = h.ambient().alphabet().size();
    const auto& alpha = h.ambient().alphabet();

    std::vector<std::size_t> init_nodes;
    std::vector<double> init_cum;
    double acc = 0;
    for (std::size_t i = 0; i < t.dim(); ++i)
        if (u[i] * v[i] > 0) {
            acc += u[i] * v[i];
            init_nodes.push_back(i);
            init_cum.push_back(acc);
        }
    for (auto& c : init_cum) c /= acc;

    // Per-edge cumulative transition probabilities v_j / (lambda v_i).
    std::vector<double> edge_cum(t.edge_count(), 0.0);
    for (std::size_t i = 0; i < t.dim(); ++i) {
        if (v[i] <= 0) continue;
        auto succ = t.successors(i);
        double c = 0;
        const std::size_t base = t.row_start()[i];
        for (std::size_t k = 0; k < succ.size(); ++k) {
            c += v[succ[k]] / (lambda * v[i]);
            edge_cum[base + k] = c;
        }
        for (std::size_t k = 0; k < succ.size(); ++k) edge_cum[base + k] /= c;
    }

    detail::CodeSet holes(h.hole(), q, n);
    std::uint64_t window_mod = 1;
    for (std::size_t k = 0; k < n; ++k) window_mod *= q;
    const std::size_t symbols = steps + n - 1;
    const bool empty_hole = h.hole().empty();

    // First hole start for a sample, or steps + 1 when it survives throughout.
    auto run = [&](std::uint64_t index) -> std::size_t {
        if (empty_hole) return steps + 1;
        auto rng = detail::stream_for(seed, index);
        std::size_t node = init_nodes[detail::sample_cumulative(init_cum.data(), init_cum.size(), rng.uniform())];
        Word first = t.label(node);
        std::uint64_t code = 0;
        std::size_t pos = 0;
        auto push = [&](Symbol s) -> bool {
            code = (code * q + s) % window_mod;
            ++pos;
            return pos >= n && holes.contains(code);
        };
        for (Symbol s : first)
            if (push(s)) return pos - n;
        while (pos < symbols) {
            auto succ = t.successors(node);
            const std::size_t base = t.row_start()[node];
            std::size_t k = detail::sample_cumulative(edge_cum.data() + base, succ.size(), rng.uniform());
            node = succ[k];
            if (push(alpha[node % a])) return pos - n;
        }
        return steps + 1;
    };

    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, samples));
    std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(steps + 2, 0));
    auto chunk = [&](unsigned w) {
        std::uint64_t lo = samples * w / workers, hi = samples * (w + 1) / workers;
        for (std::uint64_t i = lo; i < hi; ++i) ++hist[w][std::min(run(i), steps + 1)];
    };
    if (workers == 1) {
        chunk(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
        for (auto& th : pool) th.join();
    }
    std::vector<std::uint64_t> total(steps + 2, 0);
    for (const auto& hv : hist)
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += hv[k];

    SurvivalCurve c;
    c.samples = samples;
    c.seed = seed;
    c.survivors.assign(steps + 1, 0);
    // survivors at t = samples whose first hole start is >= t
    std::uint64_t remaining = samples;
    for (std::size_t tt = 0; tt <= steps; ++tt) {
        if (tt > 0) remaining -= total[tt - 1];
        c.survivors[tt] = remaining;
    }
    c.fraction.resize(steps + 1);
    for (std::size_t tt = 0; tt <= steps; ++tt)
        c.fraction[tt] = static_cast<double>(c.survivors[tt]) / static_cast<double>(samples);
    return c;
}

struct EscapeFit {
    double rho_hat = 0;
    double standard_error = 0;
    // ln s_t on the fitted line at t = 0
    double intercept = 0;
    std::size_t first_step = 0;
    std::size_t points = 0;
};

// Least-squares slope of -ln s_t over the second half of the positive part.
inline EscapeFit fit_escape_rate(const SurvivalCurve& c)
{
    std::size_t positive = 0;
    while (positive < c.fraction.size() && c.fraction[positive] > 0) ++positive;
    const std::size_t first = positive / 2;
    const std::size_t count = positive - first;
    if (count < 10)
        throw invalid_input("survival curve reaches zero too early to fit; use more samples or fewer steps");
    double sx = 0, sy = 0;
    for (std::size_t t = first; t < positive; ++t) {
        sx += static_cast<double>(t);
        sy += std::log(c.fraction[t]);
    }
    const double mx = sx / static_cast<double>(count), my = sy / static_cast<double>(count);
    double sxx = 0, sxy = 0;
    for (std::size_t t = first; t < positive; ++t) {
        double dx = static_cast<double>(t) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(c.fraction[t]) - my);
    }
    const double slope = sxy / sxx;
    double ssr = 0;
    for (std::size_t t = first; t < positive; ++t) {
        double r = std::log(c.fraction[t]) - (my + slope * (static_cast<double>(t) - mx));
        ssr += r * r;
    }
    EscapeFit f;
    f.rho_hat = -slope;
    f.standard_error = std::sqrt(ssr / static_cast<double>(count - 2) / sxx);
    f.intercept = my - slope * mx;
    f.first_step = first;
    f.points = count;
    return f;
}

} // namespace escrate
