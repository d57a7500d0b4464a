#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "escrate/escrate.hpp"
#include "oracles.hpp"

using namespace escrate;

namespace {

IntPolynomial poly(std::vector<long long> descending)
{
    std::vector<BigInt> c(descending.begin(), descending.end());
    return IntPolynomial::from_descending(c);
}

double spectral_full(std::size_t q, const char* hole)
{
    return escape_rate_spectral(HoleSpec(SubshiftSpec::full_shift(q), WordSet::parse_inline(hole, q))).rho;
}

HoleSpec full_hole(std::size_t q, const char* hole) { return HoleSpec(SubshiftSpec::full_shift(q), WordSet::parse_inline(hole, q)); }

} // namespace

TEST(HoleSpec, NormalizesToCommonLength)
{
    HoleSpec h(SubshiftSpec::full_shift(3), WordSet::parse_inline("2,110", 3));
    EXPECT_EQ(h.word_length(), 3u);
    EXPECT_EQ(h.hole().size(), 10u);
    EXPECT_THROW(HoleSpec(SubshiftSpec::full_shift(3), WordSet::parse_inline("01", 2)), invalid_input);
    EXPECT_THROW(HoleSpec(SubshiftSpec(3, WordSet::parse_inline("01", 3)), WordSet::parse_inline("201", 3)), invalid_input);
}

TEST(Spectral, WorkedExamples)
{
    EXPECT_NEAR(spectral_full(6, "00,01"), oracle::closed::rho_00_01(), 1e-10);
    EXPECT_NEAR(spectral_full(6, "04,05"), oracle::closed::rho_04_05(), 1e-10);
    EXPECT_EQ(spectral_full(6, ""), 0.0);
    auto r = escape_rate_spectral(HoleSpec(detail::golden_mean_squared(), WordSet::parse_inline("00", 4)));
    EXPECT_NEAR(r.rho, 0.188, 5e-4);
}

TEST(Spectral, InfiniteRate)
{
    // only 111... survives: zero entropy
    auto r = escape_rate_spectral(full_hole(2, "0"));
    EXPECT_NEAR(r.rho, std::log(2.0), 1e-12);
    // nothing survives
    auto all = escape_rate_spectral(full_hole(2, "0,1"));
    EXPECT_TRUE(all.infinite());
    EXPECT_EQ(format_rate(all.rho), "inf");
}

TEST(Combinatorial, SingleWordClosedForms)
{
    for (Symbol a = 0; a < 6; ++a)
        for (Symbol b = 0; b < 6; ++b) {
            WordSet w(6, {Word({a, b}, 6)});
            const double expected = a == b ? oracle::closed::rho_aa() : oracle::closed::rho_ab();
            EXPECT_NEAR(escape_rate_combinatorial(6, w).rho, expected, 1e-9);
        }
    EXPECT_NEAR(escape_rate_combinatorial(2, WordSet::parse_inline("0", 2)).rho, std::log(2.0), 1e-12);
}

TEST(Combinatorial, GeneratingFunctions)
{
    auto r = escape_rate_combinatorial(6, WordSet::parse_inline("00,01", 6));
    ASSERT_TRUE(r.combinatorial);
    EXPECT_EQ(r.combinatorial->a, RationalFunction(poly({2}), poly({1, 1})));
    EXPECT_EQ(r.combinatorial->generating_function, RationalFunction(poly({1, 1, 0}), poly({1, -5, -4})));
    EXPECT_EQ(r.combinatorial->recurrence.coefficients, (std::vector<BigInt>{5, 4}));
    EXPECT_EQ(r.combinatorial->recurrence.initial, (std::vector<BigInt>{1, 6}));
    EXPECT_NEAR(r.lambda_with_hole, oracle::closed::lambda_00_01(), 1e-12);

    auto g = generating_function(6, WordSet::parse_inline("04,05", 6));
    EXPECT_EQ(g, RationalFunction(poly({1, 0, 0}), poly({1, -6, 2})));
    auto rec = recurrence_from_rational(g);
    EXPECT_EQ(rec.coefficients, (std::vector<BigInt>{6, -2}));
    EXPECT_EQ(rec.initial, (std::vector<BigInt>{1, 6}));
    EXPECT_EQ(generating_function(6, WordSet(6)), RationalFunction(poly({1, 0}), poly({1, -6})));
    EXPECT_THROW(generating_function(6, WordSet::parse_inline("0,01", 6)), not_reduced);
}

TEST(Combinatorial, LinearSystem)
{
    auto sol = solve_generating_system(6, WordSet::parse_inline("00,01", 6));
    ASSERT_EQ(sol.size(), 3u);
    EXPECT_EQ(sol[0], RationalFunction(poly({1, 1, 0}), poly({1, -5, -4})));
    // k = 1: F_1 = 1/(1 + (z - q)(ww)_z)
    auto one = solve_generating_system(6, WordSet::parse_inline("00", 6));
    EXPECT_EQ(one[1], RationalFunction(IntPolynomial(1), IntPolynomial(1) + poly({1, -6}) * poly({1, 1})));
}

TEST(Combinatorial, CountsMatchEnumeration)
{
    auto f = generating_function(6, WordSet::parse_inline("00,01", 6));
    auto c = series_coefficients(f, 7);
    for (unsigned k = 0; k < 7; ++k) EXPECT_EQ(c[k], BigInt(oracle::brute_count(6, {"00", "01"}, k))) << k;
}

TEST(CompareMethods, AgreeOnExamples)
{
    auto c = compare_methods(6, WordSet::parse_inline("00,01", 6));
    EXPECT_LE(c.difference, 1e-9);
    EXPECT_NEAR(c.spectral.rho, oracle::closed::rho_00_01(), 1e-10);
    auto d = compare_methods(3, WordSet::parse_inline("01", 3));
    EXPECT_NEAR(d.spectral.rho, -std::log((3 + std::sqrt(5.0)) / 6), 1e-10);
    auto e = compare_methods(6, WordSet::parse_inline("33", 6));
    EXPECT_NEAR(e.combinatorial.rho, oracle::closed::rho_aa(), 1e-10);
}

TEST(CompareMethods, RandomHoles)
{
    std::mt19937 rng(17);
    int done = 0;
    while (done < 40) {
        const std::size_t q = 2 + rng() % 4;
        const std::size_t len = 1 + rng() % 3;
        WordSet w(q);
        const std::size_t k = 1 + rng() % 5;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Symbol> s(len);
            for (auto& x : s) x = static_cast<Symbol>(rng() % q);
            w.insert(Word(s, q));
        }
        if (w.size() == std::pow(q, len)) continue;
        auto c = compare_methods(q, w);
        EXPECT_LE(c.difference, method_agreement_tolerance) << w.to_string();
        ++done;
    }
}

TEST(MinimalPeriod, Examples)
{
    EXPECT_EQ(minimal_period(full_hole(6, "0000,0001,0010,0011")).period, 1u);
    auto p = minimal_period(full_hole(6, "0002,0003,0012,0013"));
    EXPECT_EQ(p.period, 4u);
    EXPECT_TRUE(p.realized);
    EXPECT_EQ(minimal_period(full_hole(6, "010")).period, 2u);
    EXPECT_EQ(minimal_period(full_hole(6, "01")).period, 2u);
    EXPECT_EQ(minimal_period(full_hole(6, "00")).period, 1u);
    EXPECT_THROW(minimal_period(full_hole(6, "")), invalid_input);
}

TEST(MinimalPeriod, FallsBackWhenNoPeriodicPoint)
{
    // least period through any of these words is 4
    HoleSpec h(detail::golden_mean_squared(), WordSet::parse_inline("103,203,301,302", 4));
    auto p = minimal_period(h);
    EXPECT_FALSE(p.realized);
    EXPECT_EQ(p.period, h.word_length());
}

TEST(Poincare, Examples)
{
    EXPECT_EQ(poincare_recurrence_time(full_hole(6, "00")), 1u);
    EXPECT_EQ(poincare_recurrence_time(full_hole(6, "01,10")), 1u);
    EXPECT_EQ(poincare_recurrence_time(full_hole(6, "23")), 2u);
    EXPECT_EQ(poincare_recurrence_time(full_hole(6, "012")), 3u);
    EXPECT_EQ(poincare_recurrence_time(full_hole(6, "010")), 2u);
}

TEST(Ordering, PeriodOrdersRate)
{
    // full shift q=6, single words of length 2 and 3: smaller period, smaller rate
    for (const char* group : {"00,01", "000,001,010,011,012"}) {
        auto ws = WordSet::parse_inline(group, 6);
        std::vector<std::pair<std::size_t, double>> v;
        for (const auto& w : ws) {
            HoleSpec h(SubshiftSpec::full_shift(6), WordSet(6, {w}));
            v.emplace_back(minimal_period(h).period, escape_rate_spectral(h).rho);
        }
        for (const auto& a : v)
            for (const auto& b : v)
                if (a.first < b.first) {
                    EXPECT_LT(a.second, b.second);
                }
    }
}

TEST(Ordering, CounterExampleInProduct)
{
    auto amb = detail::t2_t2_s();
    HoleSpec h00(amb, WordSet::parse_inline("00", amb.q())), h01(amb, WordSet::parse_inline("01", amb.q()));
    EXPECT_LT(minimal_period(h00).period, minimal_period(h01).period);
    EXPECT_GT(escape_rate_spectral(h00).rho, escape_rate_spectral(h01).rho);
}

TEST(Monotonicity, AddingWordsNeverLowersRate)
{
    std::mt19937 rng(23);
    for (int t = 0; t < 20; ++t) {
        WordSet w(4);
        double prev = 0;
        for (int k = 0; k < 6; ++k) {
            std::vector<Symbol> s(3);
            for (auto& x : s) x = static_cast<Symbol>(rng() % 4);
            w.insert(Word(s, 4));
            double r = escape_rate_spectral(HoleSpec(SubshiftSpec::full_shift(4), w)).rho;
            EXPECT_GE(r, prev - 1e-12);
            prev = r;
        }
    }
}

TEST(HoleMeasure, FullShiftAndGoldenMeanSquared)
{
    EXPECT_NEAR(hole_measure(full_hole(6, "00,01")), 2.0 / 36, 1e-15);
    HoleSpec g(detail::golden_mean_squared(), WordSet::parse_inline("00", 4));
    EXPECT_NEAR(hole_measure(g), 0.2, 1e-12);
    HoleSpec g3(detail::golden_mean_squared(), WordSet::parse_inline("03", 4));
    EXPECT_NEAR(hole_measure(g3), 0.0763932, 1e-7);
}

TEST(Spectral, RejectsReducibleAmbient)
{
    HoleSpec h(SubshiftSpec(2, WordSet::parse_inline("01,10", 2)), WordSet::parse_inline("00", 2));
    EXPECT_THROW(escape_rate_spectral(h), reducible_matrix);
}
