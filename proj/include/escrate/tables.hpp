#pragma once

#include <cmath>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "escrate/constructions.hpp"
#include "escrate/escape.hpp"
#include "escrate/torus.hpp"

namespace escrate {

// A grouped row carries one value per member hole so every member is checked;
// `text` shows the first member.
struct TableCell {
    std::string text;
    std::vector<double> values;
    std::vector<std::string> exact;
};

struct Table {
    std::string id;
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<TableCell>> rows;

    void write_csv(std::ostream& out) const;
};

namespace detail {

inline TableCell text_cell(std::string s) { return TableCell{s, {}, {s}}; }

inline TableCell exact_cell(std::vector<std::string> members)
{
    TableCell c;
    c.text = members.empty() ? std::string() : members.front();
    c.exact = std::move(members);
    return c;
}

inline TableCell number_cell(std::vector<double> members, int precision)
{
    TableCell c;
    c.text = members.empty() ? std::string() : format_rate(members.front(), precision);
    c.values = std::move(members);
    return c;
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

inline std::string period_text(const HoleSpec& h)
{
    return std::to_string(minimal_period(h).period);
}

inline std::string joined_words(const WordSet& w)
{
    std::string s;
    for (const auto& x : w) s += (s.empty() ? "" : ",") + x.to_string();
    return s;
}

inline SubshiftSpec golden_mean_squared()
{
    auto a1 = TransitionMatrix::from_dense({{1, 1}, {1, 0}});
    return SubshiftSpec::from_transition_matrix(tensor_product(ProductSpec{{a1, a1}}));
}

inline SubshiftSpec t2_t2_s()
{
    auto full = TransitionMatrix::from_dense({{1, 1}, {1, 1}});
    auto gm = TransitionMatrix::from_dense({{1, 1}, {1, 0}});
    return SubshiftSpec::from_transition_matrix(tensor_product(ProductSpec{{full, full, gm}}));
}

inline Table rectangle_table(const std::string& id, std::size_t m, std::size_t n,
                             const std::vector<std::pair<std::size_t, std::size_t>>& cells, int precision,
                             std::size_t max_dim)
{
    const TorusMapSpec spec(3, 2);
    Table t;
    t.id = id;
    t.title = "T_{3,2} rectangles with m=" + std::to_string(m) + ", n=" + std::to_string(n);
    t.header = {"rectangle", "words", "tau_min", "rho"};
    const auto ambient = SubshiftSpec::full_shift(spec.q());
    for (auto [i, j] : cells) {
        const WordSet words = rectangle_to_words(spec, Rectangle{i, j, m, n});
        const HoleSpec h(ambient, words);
        const auto r = escape_rate_spectral(h, max_dim);
        t.rows.push_back({text_cell("R_{" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(m) +
                                    "," + std::to_string(n) + "}"),
                          text_cell(joined_words(words)), text_cell(period_text(h)),
                          number_cell({r.rho}, precision)});
    }
    return t;
}

struct HoleGroup {
    std::string label;
    std::vector<std::string> words;
};

// One row per group: measure, rho and tau_min for every member.
inline Table subshift_table(const std::string& id, const std::string& title, const SubshiftSpec& ambient,
                            const std::vector<HoleGroup>& groups, int precision, std::size_t max_dim)
{
    Table t;
    t.id = id;
    t.title = title;
    t.header = {"holes", "measure", "rho", "tau_min"};
    for (const auto& g : groups) {
        std::vector<double> mu, rho;
        std::vector<std::string> tau;
        for (const auto& w : g.words) {
            WordSet hole(ambient.q());
            hole.insert(Word::parse(w, ambient.q()));
            const HoleSpec h(ambient, hole);
            mu.push_back(hole_measure(h, max_dim));
            rho.push_back(escape_rate_spectral(h, max_dim).rho);
            tau.push_back(period_text(h));
        }
        t.rows.push_back({text_cell(g.label), number_cell(mu, precision), number_cell(rho, precision),
                          exact_cell(tau)});
    }
    return t;
}

// Tables for one-dimensional subshifts with a single forbidden word; a(z) is
// taken for {forbidden word, hole word}.
inline Table interval_table(const std::string& id, const std::string& title, const std::string& forbidden,
                            const std::vector<HoleGroup>& groups, int precision, std::size_t max_dim)
{
    const std::size_t q = 3;
    WordSet f(q);
    f.insert(Word::parse(forbidden, q));
    const SubshiftSpec ambient(q, f);
    Table t;
    t.id = id;
    t.title = title;
    t.header = {"holes", "measure", "a(z)", "a(3)", "rho"};
    for (const auto& g : groups) {
        std::vector<double> mu, rho;
        std::vector<std::string> az, a3;
        for (const auto& w : g.words) {
            WordSet hole(q);
            hole.insert(Word::parse(w, q));
            const HoleSpec h(ambient, hole);
            mu.push_back(hole_measure(h, max_dim));
            rho.push_back(escape_rate_spectral(h, max_dim).rho);
            RationalFunction a;
            generating_function(q, f.united(hole), &a);
            az.push_back(a.to_string());
            a3.push_back(a.evaluate(Rational(3)).str());
        }
        t.rows.push_back({text_cell(g.label), number_cell(mu, precision), exact_cell(az), exact_cell(a3),
                          number_cell(rho, precision)});
    }
    return t;
}

inline HoleGroup group(const std::string& prefix, std::vector<std::string> words)
{
    std::string label;
    for (const auto& w : words) label += (label.empty() ? "" : " ") + prefix + "_{" + w + "}";
    return HoleGroup{label, std::move(words)};
}

} // namespace detail

inline void Table::write_csv(std::ostream& out) const
{
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << detail::csv_field(header[k]);
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << detail::csv_field(row[k].text);
        out << '\n';
    }
}

inline const std::vector<std::string>& table_ids()
{
    static const std::vector<std::string> ids{"1", "2", "2a", "3", "4", "5", "5bis", "6", "7"};
    return ids;
}

inline Table compute_table(const std::string& id, int precision = 6, std::size_t max_dim = default_max_dim)
{
    using detail::group;
    if (id == "1" || id == "2") {
        const std::size_t n = id == "1" ? 2 : 3;
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < (std::size_t(1) << n); ++j) cells.emplace_back(i, j);
        return detail::rectangle_table(id, 1, n, cells, precision, max_dim);
    }
    if (id == "2a")
        return detail::rectangle_table(
            id, 4, 2, {{0, 0}, {1, 0}, {3, 0}, {10, 0}, {0, 1}, {1, 1}, {3, 1}, {10, 1}, {0, 2}}, precision, max_dim);
    if (id == "3") {
        Table t;
        t.id = id;
        t.title = "Largest m for construction 2, q=6";
        t.header = {"n", "ell=1", "ell=2", "ell=3", "ell=4"};
        for (std::size_t n = 1; n <= 9; ++n) {
            std::vector<TableCell> row{detail::text_cell(std::to_string(n))};
            for (std::size_t ell = 1; ell <= 4; ++ell)
                row.push_back(detail::text_cell(std::to_string(max_m_bound(6, n, ell))));
            t.rows.push_back(std::move(row));
        }
        return t;
    }
    if (id == "4")
        return detail::subshift_table(id, "Golden mean squared, holes of length two", detail::golden_mean_squared(),
                                      {group("R", {"00"}), group("R", {"01", "02", "10", "20"}),
                                       group("R", {"03", "12", "21", "30"})},
                                      precision, max_dim);
    if (id == "5")
        return detail::subshift_table(
            id, "Golden mean squared, holes of length three", detail::golden_mean_squared(),
            {group("R", {"010", "020", "030"}), group("R", {"000"}),
             group("R", {"001", "002", "012", "021", "100", "120", "200", "210"}),
             group("R", {"003", "102", "201", "300"}), group("R", {"101", "121", "202", "212"}),
             group("R", {"103", "203", "301", "302"}), group("R", {"303"})},
            precision, max_dim);
    if (id == "5bis") {
        detail::HoleGroup same{"R_{aa} a even", {}}, mixed{"R_{ab} exactly one of a b even", {}},
            even{"R_{ab} a != b both even", {}};
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                const std::string w = std::to_string(a) + std::to_string(b);
                const bool ea = a % 2 == 0, eb = b % 2 == 0;
                if (ea && eb) (a == b ? same : even).words.push_back(w);
                else if (ea != eb) mixed.words.push_back(w);
            }
        return detail::subshift_table(id, "T_2 x T_2 x S, holes of length two", detail::t2_t2_s(),
                                      {same, mixed, even}, precision, max_dim);
    }
    if (id == "6")
        return detail::interval_table(id, "T_2 (forbidden 00), holes of length two", "00",
                                      {group("I", {"01", "02", "10", "20"}), group("I", {"11", "22"}),
                                       group("I", {"12", "21"})},
                                      precision, max_dim);
    if (id == "7")
        return detail::interval_table(id, "T_3 (forbidden 02), holes of length two", "02",
                                      {group("I", {"00", "22"}), group("I", {"01", "12"}), group("I", {"10", "21"}),
                                       group("I", {"11"}), group("I", {"20"})},
                                      precision, max_dim);
    throw invalid_input("unknown table id '" + id + "' (expected one of 1, 2, 2a, 3, 4, 5, 5bis, 6, 7)");
}

// CSV rows without '#' comment lines or blank lines; handles quoted fields.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields(1);
        bool quoted = false;
        for (std::size_t k = 0; k < line.size(); ++k) {
            char ch = line[k];
            if (quoted) {
                if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                    fields.back() += '"';
                    ++k;
                } else if (ch == '"') {
                    quoted = false;
                } else {
                    fields.back() += ch;
                }
            } else if (ch == '"') {
                quoted = true;
            } else if (ch == ',') {
                fields.emplace_back();
            } else {
                fields.back() += ch;
            }
        }
        if (quoted) throw invalid_input("unterminated quote in CSV line: " + line);
        rows.push_back(std::move(fields));
    }
    return rows;
}

// One unit in the last printed place: accepts both rounded and truncated printing.
inline double printed_tolerance(int decimals) { return std::pow(10.0, -decimals); }

struct CellCheck {
    std::size_t row = 0;
    std::string column;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct TableCheck {
    std::string id;
    std::vector<CellCheck> cells;

    std::size_t failures() const
    {
        std::size_t f = 0;
        for (const auto& c : cells) f += !c.pass;
        return f;
    }
    bool pass() const { return !cells.empty() && failures() == 0; }
};

inline TableCheck check_table(const Table& t, std::string_view expected_csv)
{
    static const std::regex decimal(R"(-?\d+\.(\d+))");
    auto rows = parse_csv(expected_csv);
    if (rows.empty()) throw invalid_input("expected table " + t.id + " is empty");
    if (rows.front() != t.header) throw invalid_input("expected table " + t.id + " has a different header");
    rows.erase(rows.begin());
    if (rows.size() != t.rows.size())
        throw invalid_input("expected table " + t.id + " has " + std::to_string(rows.size()) + " rows, computed " +
                            std::to_string(t.rows.size()));
    TableCheck out;
    out.id = t.id;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != t.header.size())
            throw invalid_input("expected table " + t.id + " row " + std::to_string(r + 1) + " has the wrong width");
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            const std::string& e = rows[r][c];
            const TableCell& cell = t.rows[r][c];
            std::smatch m;
            if (!cell.values.empty() && std::regex_match(e, m, decimal)) {
                const double want = std::stod(e);
                const double tol = printed_tolerance(static_cast<int>(m[1].length()));
                for (double v : cell.values)
                    out.cells.push_back({r, t.header[c], e, format_rate(v, 8), std::abs(v - want) <= tol});
            } else {
                const auto& members = cell.exact.empty() ? std::vector<std::string>{cell.text} : cell.exact;
                for (const auto& s : members) out.cells.push_back({r, t.header[c], e, s, s == e});
            }
        }
    }
    return out;
}

} // namespace escrate
