#include <gtest/gtest.h>

#include <algorithm>

#include "escrate/escrate.hpp"

using namespace escrate;

namespace {

WordSet words(const char* s, std::size_t q) { return WordSet::parse_inline(s, q); }

} // namespace

TEST(Rectangle, FigureExamples)
{
    TorusMapSpec s(3, 2);
    EXPECT_EQ(rectangle_to_words(s, {5, 2, 2, 2}), words("34", 6));
    EXPECT_EQ(rectangle_to_words(s, {0, 0, 2, 1}), words("00,01", 6));
    EXPECT_EQ(rectangle_to_words(s, {6, 1, 2, 1}), words("50,51", 6));
    EXPECT_EQ(Rectangle({5, 2, 2, 2}).measure(s), Rational(1, 36));
}

TEST(Rectangle, Validation)
{
    TorusMapSpec s(3, 2);
    EXPECT_THROW(rectangle_to_words(s, {9, 0, 2, 1}), invalid_input);
    EXPECT_THROW(rectangle_to_words(s, {0, 2, 2, 1}), invalid_input);
    EXPECT_THROW(rectangle_to_words(s, {0, 0, 0, 0}), invalid_input);
    EXPECT_THROW(TorusMapSpec(1, 2), invalid_input);
}

TEST(EncodePoint, Examples)
{
    TorusMapSpec s(3, 2);
    auto [x, y] = encode_point(s, {3, 4});
    EXPECT_EQ(x, (Interval{Rational(5, 9), Rational(6, 9)}));
    EXPECT_EQ(y, (Interval{Rational(2, 4), Rational(3, 4)}));
    auto [x0, y0] = encode_point(s, {});
    EXPECT_EQ(x0, (Interval{Rational(0), Rational(1)}));
    EXPECT_EQ(y0, (Interval{Rational(0), Rational(1)}));
    auto [x1, y1] = encode_point(s, {0});
    EXPECT_EQ(x1, (Interval{Rational(0), Rational(1, 3)}));
    EXPECT_EQ(y1, (Interval{Rational(0), Rational(1, 2)}));
    EXPECT_THROW(encode_point(s, {6}), invalid_input);
}

TEST(Rectangle, RoundTripCoversExactly)
{
    for (auto [M, N] : {std::pair<std::size_t, std::size_t>{3, 2}, {2, 3}, {4, 2}}) {
        TorusMapSpec s(M, N);
        for (std::size_t m = 0; m <= 3; ++m)
            for (std::size_t n = 0; n <= 3; ++n) {
                if (m + n == 0) continue;
                std::size_t im = 1, jn = 1;
                for (std::size_t k = 0; k < m; ++k) im *= M;
                for (std::size_t k = 0; k < n; ++k) jn *= N;
                for (std::size_t i = 0; i < im; i += std::max<std::size_t>(1, im / 3))
                    for (std::size_t j = 0; j < jn; j += std::max<std::size_t>(1, jn / 3)) {
                        Rectangle r{i, j, m, n};
                        auto w = rectangle_to_words(s, r);
                        const Rational x_lo(static_cast<long long>(i), static_cast<long long>(im));
                        const Rational x_hi(static_cast<long long>(i + 1), static_cast<long long>(im));
                        const Rational y_lo(static_cast<long long>(j), static_cast<long long>(jn));
                        const Rational y_hi(static_cast<long long>(j + 1), static_cast<long long>(jn));
                        Rational area = 0;
                        for (const auto& u : w) {
                            auto [x, y] = encode_point(s, u.symbols());
                            EXPECT_TRUE(x.lo >= x_lo && x.hi <= x_hi);
                            EXPECT_TRUE(y.lo >= y_lo && y.hi <= y_hi);
                            area += (x.hi - x.lo) * (y.hi - y.lo);
                        }
                        // cells are disjoint cylinders, so equal area means exact cover
                        EXPECT_EQ(area, r.measure(s));
                        Rational q_measure = 0;
                        for (const auto& u : w) {
                            Rational c = 1;
                            for (std::size_t k = 0; k < u.size(); ++k) c /= static_cast<long long>(s.q());
                            q_measure += c;
                        }
                        EXPECT_EQ(q_measure, r.measure(s));
                    }
            }
    }
}

TEST(Rectangle, FreeDigitsOnCoarseSide)
{
    // m=1, n=2: the second horizontal digit runs over 0..M-1
    TorusMapSpec s(3, 2);
    EXPECT_EQ(rectangle_to_words(s, {0, 0, 1, 2}), words("00,02,04", 6));
    EXPECT_EQ(rectangle_to_words(s, {1, 3, 1, 2}), words("31,33,35", 6));
    // m=2, n=1: the second vertical digit runs over 0..N-1
    EXPECT_EQ(rectangle_to_words(s, {7, 1, 2, 1}), words("52,53", 6));
}

TEST(MeasureClasses, Examples)
{
    auto a = equal_measure_classes(TorusMapSpec(3, 2), {2, 1}, {1, 2});
    EXPECT_FALSE(a.equal);
    EXPECT_FALSE(a.alpha_beta);
    EXPECT_TRUE(equal_measure_classes(TorusMapSpec(3, 2), {2, 1}, {2, 1}).equal);
    auto b = equal_measure_classes(TorusMapSpec(4, 2), {1, 2}, {2, 0});
    EXPECT_TRUE(b.equal);
    ASSERT_TRUE(b.alpha_beta);
    EXPECT_EQ(*b.alpha_beta, std::make_pair(std::size_t{1}, std::size_t{2}));
}
