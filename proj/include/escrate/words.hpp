#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "escrate/algebra/matrix.hpp"

namespace escrate {

using Symbol = std::uint32_t;

class Word {
public:
    Word() = default;
    Word(std::vector<Symbol> symbols, std::size_t q) : s_(std::move(symbols)), q_(q)
    {
        if (q_ < 1) throw invalid_input("alphabet size must be positive");
        if (s_.empty()) throw invalid_input("words must be nonempty");
        for (Symbol a : s_)
            if (a >= q_) throw invalid_input("symbol " + std::to_string(a) + " outside alphabet of size " + std::to_string(q_));
    }

    // "0102" (one decimal digit per symbol) or "10.3.11" for larger alphabets.
    static Word parse(std::string_view text, std::size_t q)
    {
        std::vector<Symbol> s;
        if (text.find('.') != std::string_view::npos) {
            std::size_t pos = 0;
            while (pos <= text.size()) {
                std::size_t dot = text.find('.', pos);
                if (dot == std::string_view::npos) dot = text.size();
                s.push_back(parse_symbol(text.substr(pos, dot - pos)));
                pos = dot + 1;
            }
        } else {
            for (char c : text) {
                if (c < '0' || c > '9') throw invalid_input("bad symbol '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
                s.push_back(static_cast<Symbol>(c - '0'));
            }
        }
        return Word(std::move(s), q);
    }

    std::size_t size() const { return s_.size(); }
    std::size_t q() const { return q_; }
    Symbol operator[](std::size_t i) const { return s_[i]; }
    const std::vector<Symbol>& symbols() const { return s_; }
    auto begin() const { return s_.begin(); }
    auto end() const { return s_.end(); }

    Word prefix(std::size_t len) const { return Word({s_.begin(), s_.begin() + static_cast<std::ptrdiff_t>(len)}, q_); }
    Word suffix(std::size_t len) const { return Word({s_.end() - static_cast<std::ptrdiff_t>(len), s_.end()}, q_); }

    Word operator+(const Word& o) const
    {
        std::vector<Symbol> s = s_;
        s.insert(s.end(), o.s_.begin(), o.s_.end());
        return Word(std::move(s), q_);
    }

    bool contains(const Word& f) const
    {
        return std::search(s_.begin(), s_.end(), f.s_.begin(), f.s_.end()) != s_.end();
    }

    // Base-q value, most significant symbol first.
    std::uint64_t code() const
    {
        std::uint64_t c = 0;
        for (Symbol a : s_) c = c * q_ + a;
        return c;
    }

    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < s_.size(); ++i) {
            if (q_ > 10 && i > 0) out += '.';
            out += std::to_string(s_[i]);
        }
        return out;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.q_ == b.q_ && a.s_ == b.s_; }
    friend auto operator<=>(const Word& a, const Word& b)
    {
        if (auto c = a.q_ <=> b.q_; c != 0) return c;
        return a.s_ <=> b.s_;
    }

private:
    static Symbol parse_symbol(std::string_view t)
    {
        if (t.empty()) throw invalid_input("empty symbol in word");
        unsigned long v = 0;
        for (char c : t) {
            if (c < '0' || c > '9') throw invalid_input("bad symbol '" + std::string(t) + "'");
            v = v * 10 + static_cast<unsigned long>(c - '0');
            if (v > 0xffffffffUL) throw invalid_input("symbol too large");
        }
        return static_cast<Symbol>(v);
    }

    std::vector<Symbol> s_;
    std::size_t q_ = 0;
};

// Ordered, duplicate-free collection of words over one alphabet.
class WordSet {
public:
    WordSet() = default;
    explicit WordSet(std::size_t q) : q_(q) {}
    WordSet(std::size_t q, const std::vector<Word>& words) : q_(q)
    {
        for (const auto& w : words) insert(w);
    }

    // Comma or whitespace separated words, e.g. "00,01".
    static WordSet parse_inline(std::string_view text, std::size_t q)
    {
        WordSet out(q);
        std::string token;
        auto flush = [&] {
            if (!token.empty()) out.insert(Word::parse(token, q));
            token.clear();
        };
        for (char c : text) {
            if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == ';') flush();
            else token += c;
        }
        flush();
        return out;
    }

    bool insert(const Word& w)
    {
        if (w.q() != q_) throw invalid_input("word alphabet size does not match the set");
        if (index_.count(w)) return false;
        index_.insert(w);
        words_.push_back(w);
        return true;
    }

    std::size_t q() const { return q_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    const Word& operator[](std::size_t i) const { return words_[i]; }
    const std::vector<Word>& words() const { return words_; }
    auto begin() const { return words_.begin(); }
    auto end() const { return words_.end(); }
    bool contains(const Word& w) const { return index_.count(w) > 0; }

    std::size_t max_length() const
    {
        std::size_t n = 0;
        for (const auto& w : words_) n = std::max(n, w.size());
        return n;
    }

    std::size_t min_length() const
    {
        if (words_.empty()) return 0;
        std::size_t n = words_.front().size();
        for (const auto& w : words_) n = std::min(n, w.size());
        return n;
    }

    bool equal_length() const { return words_.empty() || min_length() == max_length(); }

    // No word occurs as a factor of a different word.
    bool is_reduced() const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            for (std::size_t j = 0; j < words_.size(); ++j)
                if (i != j && words_[j].size() <= words_[i].size() && words_[i].contains(words_[j])) return false;
        return true;
    }

    WordSet united(const WordSet& o) const
    {
        WordSet u = *this;
        for (const auto& w : o) u.insert(w);
        return u;
    }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (i) s += ',';
            s += words_[i].to_string();
        }
        return s;
    }

    friend bool operator==(const WordSet& a, const WordSet& b) { return a.q_ == b.q_ && a.words_ == b.words_; }

private:
    std::size_t q_ = 0;
    std::vector<Word> words_;
    std::set<Word> index_;
};

// Bit l set iff w, shifted l places right under u, agrees with u on the overlap.
inline std::vector<bool> correlation_bits(const Word& u, const Word& w)
{
    if (u.q() != w.q()) throw invalid_input("correlation of words over different alphabets");
    std::vector<bool> b(u.size(), false);
    for (std::size_t l = 0; l < u.size(); ++l) {
        std::size_t overlap = std::min(u.size() - l, w.size());
        bool match = true;
        for (std::size_t t = 0; t < overlap && match; ++t) match = u[l + t] == w[t];
        b[l] = match;
    }
    return b;
}

// (uw)_z = sum_l b_l z^{|u|-1-l}
inline IntPolynomial correlation_polynomial(const Word& u, const Word& w)
{
    std::vector<bool> b = correlation_bits(u, w);
    std::vector<BigInt> asc(u.size(), BigInt(0));
    for (std::size_t l = 0; l < b.size(); ++l)
        if (b[l]) asc[u.size() - 1 - l] = 1;
    return IntPolynomial::from_ascending(std::move(asc));
}

// Entry (i, j) is (w_j w_i)_z.
inline PolynomialMatrix correlation_matrix(const WordSet& W)
{
    if (W.empty()) throw invalid_input("correlation matrix of an empty word set");
    PolynomialMatrix m(W.size());
    for (std::size_t i = 0; i < W.size(); ++i)
        for (std::size_t j = 0; j < W.size(); ++j) m(i, j) = correlation_polynomial(W[j], W[i]);
    return m;
}

// Replaces every shorter word by all of its right extensions to length n.
inline WordSet normalize_equal_length(const WordSet& W, std::size_t n)
{
    if (n < W.max_length()) throw invalid_input("target length " + std::to_string(n) + " is shorter than the longest word");
    if (n == 0) throw invalid_input("target length must be positive");
    WordSet out(W.q());
    for (const auto& w : W) {
        std::size_t extra = n - w.size();
        std::vector<Symbol> tail(extra, 0);
        while (true) {
            std::vector<Symbol> s = w.symbols();
            s.insert(s.end(), tail.begin(), tail.end());
            out.insert(Word(std::move(s), W.q()));
            std::size_t k = extra;
            while (k > 0 && tail[k - 1] + 1 == W.q()) tail[--k] = 0;
            if (k == 0) break;
            ++tail[k - 1];
        }
    }
    return out;
}

// Word-set text format: "q=<int>" header, one word per line with
// comma-separated symbols, '#' comments.
inline WordSet read_word_set(std::istream& in)
{
    std::string line;
    std::size_t q = 0;
    bool have_q = false;
    WordSet out;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) continue;
        if (!have_q) {
            if (line.rfind("q=", 0) != 0) throw invalid_input("word file must start with a q=<int> header");
            try {
                q = std::stoul(line.substr(2));
            } catch (const std::exception&) {
                throw invalid_input("bad q header: " + line);
            }
            if (q < 1) throw invalid_input("q must be positive");
            have_q = true;
            out = WordSet(q);
            continue;
        }
        std::vector<Symbol> s;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok.erase(0, tok.find_first_not_of(" \t"));
            tok.erase(tok.find_last_not_of(" \t") + 1);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw invalid_input("line " + std::to_string(lineno) + ": bad symbol '" + tok + "'");
            s.push_back(static_cast<Symbol>(std::stoul(tok)));
        }
        out.insert(Word(std::move(s), q));
    }
    if (!have_q) throw invalid_input("word file is missing the q=<int> header");
    return out;
}

inline void write_word_set(std::ostream& out, const WordSet& W)
{
    out << "q=" << W.q() << '\n';
    for (const auto& w : W) {
        for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << w[i];
        out << '\n';
    }
}

} // namespace escrate
