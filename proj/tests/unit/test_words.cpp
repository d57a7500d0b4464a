#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "escrate/escrate.hpp"
#include "oracles.hpp"

using namespace escrate;

TEST(Word, ParseAndPrint)
{
    auto w = Word::parse("0405", 6);
    EXPECT_EQ(w.size(), 4u);
    EXPECT_EQ(w.to_string(), "0405");
    auto big = Word::parse("10.3.11", 12);
    EXPECT_EQ(big.size(), 3u);
    EXPECT_EQ(big[2], 11u);
    EXPECT_THROW(Word::parse("06", 6), invalid_input);
    EXPECT_THROW(Word::parse("0x", 6), invalid_input);
}

TEST(Word, Containment)
{
    auto w = Word::parse("01020", 3);
    EXPECT_TRUE(w.contains(Word::parse("102", 3)));
    EXPECT_FALSE(w.contains(Word::parse("11", 3)));
}

TEST(WordSet, InlineParsingAndDeduplication)
{
    auto s = WordSet::parse_inline("00, 01;00", 6);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_TRUE(s.contains(Word::parse("01", 6)));
    EXPECT_TRUE(s.equal_length());
    EXPECT_TRUE(s.is_reduced());
    EXPECT_FALSE(WordSet::parse_inline("0,01", 6).is_reduced());
}

TEST(WordSet, FileRoundTrip)
{
    auto s = WordSet::parse_inline("012,21,0", 3);
    std::stringstream io;
    write_word_set(io, s);
    EXPECT_EQ(read_word_set(io), s);
    std::istringstream bad("0,1\n");
    EXPECT_THROW(read_word_set(bad), invalid_input);
}

TEST(Correlation, ExamplesFromDefinition)
{
    const std::size_t q = 2;
    auto c = [&](const char* u, const char* w) { return correlation_polynomial(Word::parse(u, q), Word::parse(w, q)); };
    EXPECT_EQ(c("00", "00").to_string(), "z + 1");
    EXPECT_EQ(c("01", "01").to_string(), "z");
    EXPECT_EQ(c("10", "01").to_string(), "1");
    EXPECT_EQ(c("01", "10").to_string(), "1");
    EXPECT_EQ(c("01", "00").to_string(), "0");
    EXPECT_EQ(c("10100", "00").to_string(), "z + 1");
    EXPECT_EQ(c("101001", "10010").to_string(), "z^3 + 1");
    EXPECT_EQ(c("101", "101").to_string(), "z^2 + 1");
}

TEST(Correlation, MatchesStringOracle)
{
    std::mt19937 rng(3);
    for (int t = 0; t < 500; ++t) {
        const unsigned q = 2 + t % 3;
        std::uniform_int_distribution<int> len(1, 6), sym(0, static_cast<int>(q) - 1);
        std::string a, b;
        for (int i = len(rng); i > 0; --i) a += static_cast<char>('0' + sym(rng));
        for (int i = len(rng); i > 0; --i) b += static_cast<char>('0' + sym(rng));
        auto bits = correlation_bits(Word::parse(a, q), Word::parse(b, q));
        std::string got;
        for (bool x : bits) got += x ? '1' : '0';
        EXPECT_EQ(got, oracle::correlation_bits(a, b)) << a << " " << b;
    }
}

TEST(Correlation, MatrixEntryOrder)
{
    auto s = WordSet::parse_inline("00,01", 6);
    auto m = correlation_matrix(s);
    // (i, j) = (w_j w_i)_z
    EXPECT_EQ(m(0, 0).to_string(), "z + 1");
    EXPECT_EQ(m(0, 1).to_string(), "0");
    EXPECT_EQ(m(1, 0).to_string(), "1");
    EXPECT_EQ(m(1, 1).to_string(), "z");
    EXPECT_THROW(correlation_matrix(WordSet(6)), invalid_input);
}

TEST(Normalize, RightExtension)
{
    auto s = normalize_equal_length(WordSet::parse_inline("0,12", 3), 2);
    EXPECT_EQ(s.to_string(), WordSet::parse_inline("00,01,02,12", 3).to_string());
    auto t = normalize_equal_length(WordSet::parse_inline("1", 2), 3);
    EXPECT_EQ(t.size(), 4u);
    EXPECT_THROW(normalize_equal_length(WordSet::parse_inline("012", 3), 2), invalid_input);
}

TEST(Normalize, SameOccurrencesWithRoomToExtend)
{
    // x avoids the normalized set iff no word of W starts at a position
    // leaving at least n symbols
    const std::vector<std::string> w{"1", "020"};
    auto n = normalize_equal_length(WordSet::parse_inline("1,020", 3), 3);
    std::vector<std::string> ns;
    for (const auto& x : n) ns.push_back(x.to_string());
    for (unsigned long long c = 0; c < 729; ++c) {
        const std::string x = oracle::word_of(c, 3, 6);
        bool early = false;
        for (const auto& u : w)
            for (std::size_t p = 0; p + 3 <= x.size(); ++p) early = early || x.compare(p, u.size(), u) == 0;
        bool hit = false;
        for (const auto& u : ns) hit = hit || x.find(u) != std::string::npos;
        EXPECT_EQ(hit, early) << x;
    }
}
