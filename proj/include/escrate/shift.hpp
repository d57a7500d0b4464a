#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "escrate/words.hpp"

namespace escrate {

inline constexpr std::size_t default_max_dim = 20000;

// Forbidden-word set of an SFT. Length-1 forbidden words delete symbols from
// the alphabet; everything else is normalized by right extension to a common
// length n >= 2 over the remaining alphabet.
class SubshiftSpec {
public:
    SubshiftSpec() = default;
    SubshiftSpec(std::size_t q, const WordSet& forbidden, std::size_t min_length = 2)
        : q_(q), original_(forbidden.empty() ? WordSet(q) : forbidden)
    {
        if (q < 1) throw invalid_input("alphabet size must be positive");
        if (original_.q() != q) throw invalid_input("forbidden words use a different alphabet size");
        std::vector<bool> deleted(q, false);
        for (const auto& w : original_)
            if (w.size() == 1) deleted[w[0]] = true;
        for (Symbol a = 0; a < q; ++a) {
            if (deleted[a]) deleted_.push_back(a);
            else alphabet_.push_back(a);
        }
        auto uses_deleted = [&](const Word& w) {
            return std::any_of(w.begin(), w.end(), [&](Symbol a) { return deleted[a]; });
        };
        WordSet kept(q);
        for (const auto& w : original_)
            if (!uses_deleted(w)) kept.insert(w);
        n_ = std::max<std::size_t>({min_length, 2, kept.max_length()});
        forbidden_ = WordSet(q);
        for (const auto& w : normalize_equal_length(kept, n_))
            if (!uses_deleted(w)) forbidden_.insert(w);
    }

    // Reads a base transition matrix as the forbidden pairs {ij : T_ij = 0}.
    template <class Matrix>
    static SubshiftSpec from_transition_matrix(const Matrix& t)
    {
        const std::size_t q = t.dim();
        WordSet f(q);
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j)
                if (!t(i, j)) f.insert(Word({static_cast<Symbol>(i), static_cast<Symbol>(j)}, q));
        return SubshiftSpec(q, f);
    }

    static SubshiftSpec full_shift(std::size_t q, std::size_t n = 2) { return SubshiftSpec(q, WordSet(q), n); }

    std::size_t q() const { return q_; }
    std::size_t word_length() const { return n_; }
    const WordSet& forbidden() const { return forbidden_; }
    const WordSet& original_forbidden() const { return original_; }
    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    const std::vector<Symbol>& deleted_symbols() const { return deleted_; }
    bool is_full_shift() const { return original_.empty(); }

    SubshiftSpec with_length(std::size_t n) const { return SubshiftSpec(q_, original_, n); }
    SubshiftSpec with_forbidden(const WordSet& extra, std::size_t n = 2) const
    {
        return SubshiftSpec(q_, original_.united(extra), std::max(n, n_));
    }

    // True iff w avoids every original forbidden word.
    bool allows(const Word& w) const
    {
        if (w.q() != q_) throw invalid_input("word alphabet size does not match the subshift");
        for (const auto& f : original_)
            if (f.size() <= w.size() && w.contains(f)) return false;
        return true;
    }

private:
    std::size_t q_ = 0;
    std::size_t n_ = 2;
    WordSet original_;
    WordSet forbidden_;
    std::vector<Symbol> alphabet_;
    std::vector<Symbol> deleted_;
};

// Labels of matrix states: blocks of `length` symbols drawn from `alphabet`,
// indexed as base-|alphabet| numbers (first symbol most significant).
struct BlockLabels {
    std::vector<Symbol> alphabet;
    std::size_t length = 1;

    Word label(std::size_t index, std::size_t q) const
    {
        std::vector<Symbol> s(length);
        for (std::size_t k = length; k-- > 0;) {
            s[k] = alphabet[index % alphabet.size()];
            index /= alphabet.size();
        }
        return Word(std::move(s), q);
    }
};

// Sparse 0/1 square matrix in compressed-row form.
class TransitionMatrix {
public:
    TransitionMatrix() = default;

    TransitionMatrix(std::size_t dim, std::vector<std::uint64_t> row_start, std::vector<std::uint32_t> cols,
                     std::size_t q, BlockLabels labels)
        : dim_(dim), row_start_(std::move(row_start)), cols_(std::move(cols)), q_(q), labels_(std::move(labels))
    {
        if (row_start_.size() != dim_ + 1) throw invalid_input("row index array has wrong size");
        for (std::size_t i = 0; i < dim_; ++i) {
            auto s = successors(i);
            if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
                throw invalid_input("successor lists must be sorted and duplicate-free");
            if (!s.empty() && s.back() >= dim_) throw invalid_input("column index out of range");
        }
    }

    static TransitionMatrix from_dense(const std::vector<std::vector<int>>& rows)
    {
        const std::size_t n = rows.size();
        std::vector<std::uint64_t> rs{0};
        std::vector<std::uint32_t> cols;
        for (const auto& r : rows) {
            if (r.size() != n) throw invalid_input("transition matrix must be square");
            for (std::size_t j = 0; j < n; ++j) {
                if (r[j] != 0 && r[j] != 1) throw invalid_input("transition matrix entries must be 0 or 1");
                if (r[j]) cols.push_back(static_cast<std::uint32_t>(j));
            }
            rs.push_back(cols.size());
        }
        return TransitionMatrix(n, std::move(rs), std::move(cols), std::max<std::size_t>(n, 1), base_labels(n));
    }

    static BlockLabels base_labels(std::size_t n)
    {
        BlockLabels l;
        for (std::size_t i = 0; i < n; ++i) l.alphabet.push_back(static_cast<Symbol>(i));
        l.length = 1;
        return l;
    }

    std::size_t dim() const { return dim_; }
    std::size_t edge_count() const { return cols_.size(); }
    std::size_t q() const { return q_; }

    std::span<const std::uint32_t> successors(std::size_t i) const
    {
        return {cols_.data() + row_start_[i], static_cast<std::size_t>(row_start_[i + 1] - row_start_[i])};
    }

    bool operator()(std::size_t i, std::size_t j) const
    {
        auto s = successors(i);
        return std::binary_search(s.begin(), s.end(), static_cast<std::uint32_t>(j));
    }

    const BlockLabels& labels() const { return labels_; }
    Word label(std::size_t i) const { return labels_.label(i, q_); }

    std::vector<std::vector<int>> dense() const
    {
        std::vector<std::vector<int>> d(dim_, std::vector<int>(dim_, 0));
        for (std::size_t i = 0; i < dim_; ++i)
            for (auto j : successors(i)) d[i][j] = 1;
        return d;
    }

    bool has_edges() const { return !cols_.empty(); }

    const std::vector<std::uint64_t>& row_start() const { return row_start_; }
    const std::vector<std::uint32_t>& cols() const { return cols_; }

    friend bool operator==(const TransitionMatrix& a, const TransitionMatrix& b)
    {
        return a.dim_ == b.dim_ && a.row_start_ == b.row_start_ && a.cols_ == b.cols_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> row_start_{0};
    std::vector<std::uint32_t> cols_;
    std::size_t q_ = 1;
    BlockLabels labels_;
};

namespace detail {

// Membership test for equal-length words via their base-q codes.
class CodeSet {
public:
    CodeSet(const WordSet& words, std::size_t q, std::size_t n)
    {
        long double space = 1;
        for (std::size_t i = 0; i < n; ++i) space *= static_cast<long double>(q);
        dense_ = space <= static_cast<long double>(std::size_t(1) << 30);
        if (dense_) bits_.assign(static_cast<std::size_t>(space), false);
        for (const auto& w : words) {
            if (w.size() != n) throw invalid_input("code set expects equal-length words");
            if (dense_) bits_[w.code()] = true;
            else sparse_.insert(w.code());
        }
    }
    bool contains(std::uint64_t code) const { return dense_ ? bits_[code] : sparse_.count(code) > 0; }

private:
    bool dense_ = true;
    std::vector<bool> bits_;
    std::unordered_set<std::uint64_t> sparse_;
};

inline std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint32_t>::max() / base) throw dimension_cap_exceeded(std::numeric_limits<std::size_t>::max(), cap);
        r *= base;
    }
    return r;
}

} // namespace detail

// States are the (n-1)-blocks over the spec's alphabet; i -> j iff j is i
// shifted by one symbol and the glued n-word is not forbidden.
inline TransitionMatrix higher_block_matrix(const SubshiftSpec& spec, std::size_t max_dim = default_max_dim)
{
    const std::size_t n = spec.word_length();
    const std::size_t q = spec.q();
    const auto& alpha = spec.alphabet();
    const std::size_t a = alpha.size();
    const std::size_t dim = detail::checked_power(a, n - 1, max_dim);
    if (dim > max_dim) throw dimension_cap_exceeded(dim, max_dim);
    const std::size_t tail = dim / std::max<std::size_t>(a, 1);
    detail::CodeSet forbidden(spec.forbidden(), q, n);

    // Base-q code of each block, to glue with a following symbol.
    std::vector<std::uint64_t> qcode(dim, 0);
    std::vector<Symbol> digits(n - 1, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        std::uint64_t c = 0;
        for (std::size_t k = 0; k < n - 1; ++k) c = c * q + alpha[digits[k]];
        qcode[i] = c;
        for (std::size_t k = n - 1; k-- > 0;) {
            if (++digits[k] < a) break;
            digits[k] = 0;
        }
    }

    std::vector<std::uint64_t> rs;
    rs.reserve(dim + 1);
    rs.push_back(0);
    std::vector<std::uint32_t> cols;
    cols.reserve(dim * a);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t shifted = (i % std::max<std::size_t>(tail, 1)) * a;
        for (std::size_t s = 0; s < a; ++s) {
            if (forbidden.contains(qcode[i] * q + alpha[s])) continue;
            cols.push_back(static_cast<std::uint32_t>(tail == 0 ? s : shifted + s));
        }
        rs.push_back(cols.size());
    }
    BlockLabels labels{alpha, n - 1};
    return TransitionMatrix(dim, std::move(rs), std::move(cols), q, std::move(labels));
}

// Mixed-radix digits of n with the last size least significant.
inline std::vector<std::size_t> phi_index(std::size_t n, const std::vector<std::size_t>& sizes)
{
    std::size_t total = 1;
    for (auto s : sizes) {
        if (s == 0) throw invalid_input("factor sizes must be positive");
        total *= s;
    }
    if (n >= total) throw invalid_input("index " + std::to_string(n) + " out of range [0, " + std::to_string(total) + ")");
    std::vector<std::size_t> d(sizes.size());
    for (std::size_t k = sizes.size(); k-- > 0;) {
        d[k] = n % sizes[k];
        n /= sizes[k];
    }
    return d;
}

inline std::size_t phi_inverse(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& sizes)
{
    if (digits.size() != sizes.size()) throw invalid_input("digit count does not match factor count");
    std::size_t n = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (digits[k] >= sizes[k]) throw invalid_input("digit out of range");
        n = n * sizes[k] + digits[k];
    }
    return n;
}

struct ProductSpec {
    std::vector<TransitionMatrix> factors;

    std::vector<std::size_t> sizes() const
    {
        std::vector<std::size_t> s;
        for (const auto& f : factors) s.push_back(f.dim());
        return s;
    }
};

// Kronecker product A_1 (x) ... (x) A_k with rows ordered by phi.
inline TransitionMatrix tensor_product(const ProductSpec& spec)
{
    if (spec.factors.empty()) throw invalid_input("tensor product needs at least one factor");
    std::vector<std::vector<int>> acc = spec.factors.front().dense();
    for (std::size_t f = 1; f < spec.factors.size(); ++f) {
        auto b = spec.factors[f].dense();
        const std::size_t na = acc.size(), nb = b.size();
        std::vector<std::vector<int>> r(na * nb, std::vector<int>(na * nb, 0));
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < na; ++j)
                if (acc[i][j])
                    for (std::size_t k = 0; k < nb; ++k)
                        for (std::size_t l = 0; l < nb; ++l) r[i * nb + k][j * nb + l] = b[k][l];
        acc = std::move(r);
    }
    return TransitionMatrix::from_dense(acc);
}

struct SccDecomposition {
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::size_t> component_of;

    // A component carries a cycle iff it has more than one node or a self-loop.
    bool nontrivial(std::size_t c, const TransitionMatrix& t) const
    {
        const auto& comp = components[c];
        return comp.size() > 1 || t(comp[0], comp[0]);
    }
};

// Iterative Tarjan; components come out in reverse topological order.
inline SccDecomposition strongly_connected_components(const TransitionMatrix& t)
{
    const std::size_t n = t.dim();
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, unset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    SccDecomposition out;
    out.component_of.assign(n, unset);
    std::size_t counter = 0;
    struct Frame {
        std::size_t v;
        std::size_t next;
    };
    std::vector<Frame> call;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& fr = call.back();
            auto succ = t.successors(fr.v);
            if (fr.next < succ.size()) {
                std::size_t w = succ[fr.next++];
                if (index[w] == unset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
                continue;
            }
            const std::size_t v = fr.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.component_of[w] = out.components.size();
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.components.push_back(std::move(comp));
            }
        }
    }
    return out;
}

struct IrreducibilityReport {
    bool irreducible = false;
    SccDecomposition scc;
};

inline IrreducibilityReport is_irreducible(const TransitionMatrix& t)
{
    IrreducibilityReport r;
    r.scc = strongly_connected_components(t);
    r.irreducible = t.dim() > 0 && r.scc.components.size() == 1 && r.scc.nontrivial(0, t);
    return r;
}

// Nodes left after repeatedly removing states with no incoming or no
// outgoing edges; these carry every infinite path.
inline std::vector<bool> essential_nodes(const TransitionMatrix& t)
{
    const std::size_t n = t.dim();
    std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (auto j : t.successors(i)) {
            ++outdeg[i];
            ++indeg[j];
        }
    // Predecessor lists in compressed form.
    std::vector<std::uint64_t> pstart(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) pstart[j + 1] = pstart[j] + indeg[j];
    std::vector<std::uint32_t> pred(pstart[n]);
    {
        std::vector<std::uint64_t> fill(pstart.begin(), pstart.end() - 1);
        for (std::size_t i = 0; i < n; ++i)
            for (auto j : t.successors(i)) pred[fill[j]++] = static_cast<std::uint32_t>(i);
    }
    std::vector<bool> alive(n, true);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0 || outdeg[i] == 0) {
            alive[i] = false;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        std::size_t v = queue.back();
        queue.pop_back();
        for (auto j : t.successors(v))
            if (alive[j] && --indeg[j] == 0) {
                alive[j] = false;
                queue.push_back(j);
            }
        for (auto k = pstart[v]; k < pstart[v + 1]; ++k) {
            auto p = pred[k];
            if (alive[p] && --outdeg[p] == 0) {
                alive[p] = false;
                queue.push_back(p);
            }
        }
    }
    return alive;
}

// Subgraph on `nodes` (sorted), relabelled 0..k-1; labels become the node
// indices of the parent.
inline TransitionMatrix induced_subgraph(const TransitionMatrix& t, const std::vector<std::size_t>& nodes)
{
    constexpr std::uint32_t absent = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> pos(t.dim(), absent);
    for (std::size_t k = 0; k < nodes.size(); ++k) pos[nodes[k]] = static_cast<std::uint32_t>(k);
    std::vector<std::uint64_t> rs{0};
    std::vector<std::uint32_t> cols;
    for (auto v : nodes) {
        for (auto j : t.successors(v))
            if (pos[j] != absent) cols.push_back(pos[j]);
        rs.push_back(cols.size());
    }
    return TransitionMatrix(nodes.size(), std::move(rs), std::move(cols), std::max<std::size_t>(nodes.size(), 1),
                            TransitionMatrix::base_labels(nodes.size()));
}

// Irreducibility of the SFT itself: its essential graph is strongly connected.
inline bool essentially_irreducible(const TransitionMatrix& t)
{
    auto alive = essential_nodes(t);
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < alive.size(); ++i)
        if (alive[i]) nodes.push_back(i);
    if (nodes.empty()) return false;
    return is_irreducible(induced_subgraph(t, nodes)).irreducible;
}

// Text format: "dim=<int>" then one row per line, entries separated by
// spaces or commas; '#' comments.
inline TransitionMatrix read_transition_matrix(std::istream& in)
{
    std::string line;
    std::size_t dim = 0;
    bool have_dim = false;
    std::vector<std::vector<int>> rows;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (auto& c : line)
            if (c == ',' || c == '\t' || c == '\r') c = ' ';
        if (line.find_first_not_of(' ') == std::string::npos) continue;
        if (!have_dim) {
            auto p = line.find("dim=");
            if (p == std::string::npos) throw invalid_input("matrix file must start with a dim=<int> header");
            try {
                dim = std::stoul(line.substr(p + 4));
            } catch (const std::exception&) {
                throw invalid_input("bad dim header");
            }
            have_dim = true;
            continue;
        }
        std::istringstream ss(line);
        std::vector<int> row;
        std::string tok;
        while (ss >> tok) {
            if (tok != "0" && tok != "1") throw invalid_input("matrix entries must be 0 or 1, got '" + tok + "'");
            row.push_back(tok == "1");
        }
        if (row.size() != dim) throw invalid_input("matrix row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(dim));
        rows.push_back(std::move(row));
    }
    if (!have_dim) throw invalid_input("matrix file is missing the dim=<int> header");
    if (rows.size() != dim) throw invalid_input("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(dim));
    return TransitionMatrix::from_dense(rows);
}

inline void write_transition_matrix(std::ostream& out, const TransitionMatrix& t)
{
    out << "dim=" << t.dim() << '\n';
    for (std::size_t i = 0; i < t.dim(); ++i) {
        for (std::size_t j = 0; j < t.dim(); ++j) out << (j ? " " : "") << (t(i, j) ? 1 : 0);
        out << '\n';
    }
}

} // namespace escrate
