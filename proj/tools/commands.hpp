#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "escrate/escrate.hpp"
#include "escrate/expected_tables.hpp"

namespace escrate::cli {

using json = nlohmann::ordered_json;

enum exit_code { ok = 0, user_error = 1, tolerance_error = 2 };

struct GlobalOptions {
    bool json = false;
    std::string csv_path;
    int precision = 6;
    std::size_t max_dim = default_max_dim;
};

// Ambient shift: --q with optional forbidden words, or a transition-matrix file.
struct AmbientOptions {
    std::size_t q = 0;
    std::string forbidden;
    std::string forbidden_file;
    std::string shift_file;
};

struct HoleOptions {
    std::string words;
    std::string file;
    bool given = false;
};

inline std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    return in;
}

inline SubshiftSpec make_ambient(const AmbientOptions& a)
{
    if (!a.shift_file.empty()) {
        if (a.q || !a.forbidden.empty() || !a.forbidden_file.empty())
            throw invalid_input("--shift cannot be combined with --q or --forbidden");
        auto in = open_input(a.shift_file);
        return SubshiftSpec::from_transition_matrix(read_transition_matrix(in));
    }
    if (!a.forbidden_file.empty()) {
        auto in = open_input(a.forbidden_file);
        WordSet f = read_word_set(in);
        if (a.q && a.q != f.q()) throw invalid_input("--q disagrees with the q= header of " + a.forbidden_file);
        return SubshiftSpec(f.q(), f);
    }
    if (a.q == 0) throw invalid_input("give an alphabet size with --q, or a matrix with --shift");
    return SubshiftSpec(a.q, WordSet::parse_inline(a.forbidden, a.q));
}

inline WordSet make_hole(const HoleOptions& h, std::size_t q)
{
    if (!h.file.empty()) {
        auto in = open_input(h.file);
        WordSet w = read_word_set(in);
        if (w.q() != q) throw invalid_input("hole file alphabet size " + std::to_string(w.q()) + " differs from q=" + std::to_string(q));
        return w;
    }
    return WordSet::parse_inline(h.words, q);
}

inline std::string fixed(double x, int precision) { return format_rate(x, precision); }

inline json number_or_inf(double x)
{
    if (std::isinf(x)) return "inf";
    return x;
}

inline void write_csv_file(const GlobalOptions& g, const std::string& text)
{
    if (g.csv_path.empty()) return;
    std::ofstream out(g.csv_path, std::ios::binary);
    if (!out) throw invalid_input("cannot write " + g.csv_path);
    out << text;
}

// ---- escape ----

struct EscapeOptions {
    AmbientOptions ambient;
    HoleOptions hole;
    std::string method = "spectral";
};

inline int run_escape(const GlobalOptions& g, const EscapeOptions& o, std::ostream& out)
{
    if (o.method != "spectral" && o.method != "comb" && o.method != "both")
        throw invalid_input("method must be spectral, comb or both");
    const SubshiftSpec ambient = make_ambient(o.ambient);
    const WordSet hole = make_hole(o.hole, ambient.q());
    const bool want_comb = o.method != "spectral";
    if (want_comb && !ambient.is_full_shift()) throw invalid_input("combinatorial method requires full shift");

    const HoleSpec h(ambient, hole);
    std::optional<EscapeResult> spec, comb;
    if (o.method == "both") {
        auto c = compare_methods(ambient.q(), hole, g.max_dim);
        spec = c.spectral;
        comb = c.combinatorial;
    } else if (want_comb) {
        comb = escape_rate_combinatorial(ambient.q(), hole);
    } else {
        spec = escape_rate_spectral(h, g.max_dim);
    }
    std::optional<MinimalPeriod> period;
    std::optional<std::size_t> poincare;
    std::optional<double> measure;
    if (!h.hole().empty()) {
        period = minimal_period(h);
        poincare = poincare_recurrence_time(h);
    }
    measure = hole_measure(h, g.max_dim);

    json j;
    j["q"] = ambient.q();
    j["hole"] = hole.to_string();
    j["word_length"] = h.word_length();
    if (spec) {
        j["spectral"] = {{"rho", number_or_inf(spec->rho)},
                         {"lambda_ambient", spec->lambda_ambient},
                         {"lambda_with_hole", spec->lambda_with_hole},
                         {"dim_ambient", spec->dim_ambient},
                         {"dim_with_hole", spec->dim_with_hole},
                         {"with_hole_reducible", spec->with_hole_reducible}};
    }
    if (comb) {
        json c = {{"rho", number_or_inf(comb->rho)}, {"lambda_with_hole", comb->lambda_with_hole}};
        if (comb->combinatorial) {
            c["a"] = comb->combinatorial->a.to_string();
            c["generating_function"] = comb->combinatorial->generating_function.to_string();
            c["recurrence"] = comb->combinatorial->recurrence.to_string();
        }
        j["combinatorial"] = c;
    }
    if (period) {
        j["tau_min"] = period->period;
        j["tau_min_realized"] = period->realized;
    }
    if (poincare) j["poincare_time"] = *poincare;
    j["hole_measure"] = *measure;

    std::ostringstream csv;
    csv << "method,rho,lambda_ambient,lambda_with_hole,tau_min,poincare_time,hole_measure\n";
    auto csv_row = [&](const char* name, const EscapeResult& r) {
        csv << name << ',' << format_rate(r.rho, g.precision) << ',' << fixed(r.lambda_ambient, g.precision) << ','
            << fixed(r.lambda_with_hole, g.precision) << ',' << (period ? std::to_string(period->period) : "") << ','
            << (poincare ? std::to_string(*poincare) : "") << ',' << fixed(*measure, g.precision) << '\n';
    };
    if (spec) csv_row("spectral", *spec);
    if (comb) csv_row("combinatorial", *comb);
    write_csv_file(g, csv.str());

    if (g.json) {
        out << j.dump(2) << '\n';
        return ok;
    }
    out << "hole: {" << hole.to_string() << "} over q=" << ambient.q() << " (word length " << h.word_length() << ")\n";
    if (spec) {
        out << "spectral rho: " << format_rate(spec->rho, g.precision) << '\n';
        out << "  lambda ambient: " << fixed(spec->lambda_ambient, g.precision) << " (dim " << spec->dim_ambient << ")\n";
        out << "  lambda with hole: " << fixed(spec->lambda_with_hole, g.precision) << " (dim " << spec->dim_with_hole
            << (spec->with_hole_reducible ? ", reducible" : "") << ")\n";
    }
    if (comb) {
        out << "combinatorial rho: " << format_rate(comb->rho, g.precision) << '\n';
        out << "  root: " << fixed(comb->lambda_with_hole, g.precision) << '\n';
        if (comb->combinatorial) {
            out << "  a(z) = " << comb->combinatorial->a.to_string() << '\n';
            out << "  F(z) = " << comb->combinatorial->generating_function.to_string() << '\n';
            out << "  " << comb->combinatorial->recurrence.to_string() << '\n';
        }
    }
    if (period) {
        out << "tau_min: " << period->period;
        if (!period->realized) out << " (no periodic point of period <= " << h.word_length() << " in the hole)";
        out << '\n';
    }
    if (poincare) out << "poincare time: " << *poincare << '\n';
    out << "hole measure: " << fixed(*measure, g.precision) << '\n';
    return ok;
}

// ---- table ----

struct TableOptions {
    std::string id;
    bool check = false;
};

inline int run_table(const GlobalOptions& g, const TableOptions& o, std::ostream& out, std::ostream& err)
{
    const Table t = compute_table(o.id, g.precision, g.max_dim);
    std::ostringstream csv;
    t.write_csv(csv);
    write_csv_file(g, csv.str());

    std::optional<TableCheck> check;
    if (o.check) {
        auto expected = expected::table_csv(o.id);
        if (!expected) throw invalid_input("no expected values embedded for table " + o.id);
        check = check_table(t, *expected);
    }
    if (g.json) {
        json j;
        j["table"] = t.id;
        j["title"] = t.title;
        j["header"] = t.header;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json row = json::array();
            for (const auto& c : r) row.push_back(c.text);
            rows.push_back(row);
        }
        j["rows"] = rows;
        if (check) {
            j["check"] = {{"cells", check->cells.size()}, {"failures", check->failures()}, {"pass", check->pass()}};
        }
        out << j.dump(2) << '\n';
    } else {
        out << csv.str();
    }
    if (check) {
        for (const auto& c : check->cells)
            if (!c.pass)
                err << "table " << t.id << " row " << c.row + 1 << " column " << c.column << ": expected " << c.expected
                    << ", computed " << c.computed << '\n';
        err << "table " << t.id << " check: " << check->cells.size() - check->failures() << "/" << check->cells.size()
            << " cells match, " << (check->pass() ? "PASS" : "FAIL") << '\n';
        if (!check->pass()) return tolerance_error;
    }
    return ok;
}

// ---- rect ----

struct RectOptions {
    std::size_t M = 3, N = 2, m = 1, n = 1, i = 0, j = 0;
};

inline int run_rect(const GlobalOptions& g, const RectOptions& o, std::ostream& out)
{
    const TorusMapSpec spec(o.M, o.N);
    const Rectangle r{o.i, o.j, o.m, o.n};
    const WordSet words = rectangle_to_words(spec, r);
    const HoleSpec h(SubshiftSpec::full_shift(spec.q()), words);
    const auto cmp = compare_methods(spec.q(), words, g.max_dim);
    const auto period = minimal_period(h);
    const Rational mu = r.measure(spec);

    std::ostringstream csv;
    csv << "words,measure,tau_min,rho_spectral,rho_combinatorial\n"
        << '"' << words.to_string() << "\"," << mu.str() << ',' << period.period << ','
        << format_rate(cmp.spectral.rho, g.precision) << ',' << format_rate(cmp.combinatorial.rho, g.precision) << '\n';
    write_csv_file(g, csv.str());

    if (g.json) {
        json j;
        j["rectangle"] = {{"M", o.M}, {"N", o.N}, {"m", o.m}, {"n", o.n}, {"i", o.i}, {"j", o.j}};
        json w = json::array();
        for (const auto& x : words) w.push_back(x.to_string());
        j["words"] = w;
        j["measure"] = mu.str();
        j["tau_min"] = period.period;
        j["rho_spectral"] = number_or_inf(cmp.spectral.rho);
        j["rho_combinatorial"] = number_or_inf(cmp.combinatorial.rho);
        out << j.dump(2) << '\n';
        return ok;
    }
    out << "R_{" << o.i << "," << o.j << "," << o.m << "," << o.n << "} for T_{" << o.M << "," << o.N << "}\n";
    out << "words: {" << words.to_string() << "}\n";
    out << "measure: " << mu.str() << '\n';
    out << "tau_min: " << period.period << '\n';
    out << "rho (spectral): " << format_rate(cmp.spectral.rho, g.precision) << '\n';
    out << "rho (combinatorial): " << format_rate(cmp.combinatorial.rho, g.precision) << '\n';
    return ok;
}

// ---- construct ----

struct ConstructOptions {
    ConstructionParams params;
    std::string reserved;
    std::size_t n = 2;
};

inline int run_construct(const GlobalOptions& g, const ConstructOptions& o, std::ostream& out)
{
    ConstructionParams p = o.params;
    if (!o.reserved.empty()) {
        p.reserved.clear();
        for (const auto& w : WordSet::parse_inline(o.reserved, p.q)) {
            if (w.size() != 1) throw invalid_input("reserved symbols are single symbols");
            p.reserved.push_back(w[0]);
        }
    }
    const WordSet s = construct_property_P(p);
    const bool verified = verify_property_P(s);
    if (!verified) throw tolerance_failure("constructed set fails property (P)");

    std::vector<std::pair<std::size_t, std::optional<std::size_t>>> bounds;
    for (std::size_t ell = 1; ell + 1 < p.q || ell == 1; ++ell) {
        std::optional<std::size_t> b;
        try {
            b = max_m_bound(p.q, o.n, ell, p.r);
        } catch (const invalid_input&) {
        }
        bounds.emplace_back(ell, b);
        if (ell + 1 >= p.q) break;
    }

    std::ostringstream csv;
    csv << "word\n";
    for (const auto& w : s) csv << w.to_string() << '\n';
    write_csv_file(g, csv.str());

    if (g.json) {
        json j;
        j["q"] = p.q;
        j["m"] = p.m;
        j["variant"] = p.variant;
        j["ell"] = p.ell;
        j["r"] = p.r;
        json w = json::array();
        for (const auto& x : s) w.push_back(x.to_string());
        j["words"] = w;
        j["cardinality"] = s.size();
        j["property_P"] = verified;
        json b = json::object();
        for (auto [ell, v] : bounds) b["ell=" + std::to_string(ell)] = v ? json(*v) : json(nullptr);
        j["max_m_bound"] = {{"n", o.n}, {"r", p.r}, {"by_ell", b}};
        out << j.dump(2) << '\n';
        return ok;
    }
    for (const auto& w : s) out << w.to_string() << '\n';
    out << "# " << s.size() << " words, expected " << p.cardinality().str() << "; property (P) verified\n";
    out << "# largest m for n=" << o.n << ", r=" << p.r << ":";
    for (auto [ell, v] : bounds) out << " ell=" << ell << ":" << (v ? std::to_string(*v) : std::string("-"));
    out << '\n';
    return ok;
}

// ---- simulate ----

struct SimulateOptions {
    AmbientOptions ambient;
    HoleOptions hole;
    std::uint64_t samples = 100000;
    std::size_t steps = 100;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::string svg_path;
};

inline std::string survival_svg(const SurvivalCurve& c, const std::optional<EscapeFit>& fit, double rho_spectral)
{
    const double W = 720, H = 440, L = 70, R = 20, T = 30, B = 50;
    std::size_t positive = 0;
    while (positive < c.fraction.size() && c.fraction[positive] > 0) ++positive;
    double ymin = 0;
    for (std::size_t t = 0; t < positive; ++t) ymin = std::min(ymin, std::log(c.fraction[t]));
    if (ymin > -1e-9) ymin = -1;
    const double tmax = std::max<double>(1, static_cast<double>(c.fraction.size() - 1));
    auto px = [&](double t) { return L + (W - L - R) * t / tmax; };
    auto py = [&](double y) { return T + (H - T - B) * (y / ymin); };
    std::ostringstream s;
    s << std::fixed << std::setprecision(2);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double t = tmax * k / 4, y = ymin * k / 4;
        s << "<text x=\"" << px(t) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << std::setprecision(0) << t
          << "</text>\n";
        s << "<text x=\"" << L - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << std::setprecision(2) << y
          << "</text>\n";
    }
    s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">step t</text>\n";
    s << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 16 " << (T + H - B) / 2
      << ")\" text-anchor=\"middle\">ln s_t</text>\n";
    s << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t t = 0; t < positive; ++t) s << px(static_cast<double>(t)) << ',' << py(std::log(c.fraction[t])) << ' ';
    s << "\"/>\n";
    const double t_end = static_cast<double>(positive ? positive - 1 : 0);
    if (fit) {
        const double t0 = static_cast<double>(fit->first_step);
        s << "<line x1=\"" << px(t0) << "\" y1=\"" << py(fit->intercept - fit->rho_hat * t0) << "\" x2=\"" << px(t_end)
          << "\" y2=\"" << py(fit->intercept - fit->rho_hat * t_end) << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
    }
    s << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(t_end) << "\" y2=\"" << py(-rho_spectral * t_end)
      << "\" stroke=\"#2ca02c\" stroke-dasharray=\"6 4\"/>\n";
    const double lx = W - R - 250, ly = T + 10;
    s << std::setprecision(6);
    s << "<text x=\"" << lx << "\" y=\"" << ly << "\" fill=\"#1f77b4\">survivors (" << c.samples << " samples)</text>\n";
    if (fit)
        s << "<text x=\"" << lx << "\" y=\"" << ly + 16 << "\" fill=\"#d62728\">fit rho = " << fit->rho_hat << " +- "
          << fit->standard_error << "</text>\n";
    s << "<text x=\"" << lx << "\" y=\"" << ly + 32 << "\" fill=\"#2ca02c\">spectral rho = " << rho_spectral << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

inline int run_simulate(const GlobalOptions& g, const SimulateOptions& o, std::ostream& out, std::ostream& err)
{
    const SubshiftSpec ambient = make_ambient(o.ambient);
    const WordSet hole = make_hole(o.hole, ambient.q());
    const SurvivalCurve c = simulate_survival(ambient, hole, o.samples, o.steps, o.seed, o.threads, g.max_dim);
    std::optional<EscapeFit> fit;
    std::string fit_note;
    try {
        fit = fit_escape_rate(c);
    } catch (const invalid_input& e) {
        fit_note = e.what();
    }
    const double rho = escape_rate_spectral(HoleSpec(ambient, hole), g.max_dim).rho;

    std::ostringstream csv;
    c.write_csv(csv, std::max(g.precision, 8));
    write_csv_file(g, csv.str());
    if (!o.svg_path.empty()) {
        std::ofstream svg(o.svg_path, std::ios::binary);
        if (!svg) throw invalid_input("cannot write " + o.svg_path);
        svg << survival_svg(c, fit, std::isinf(rho) ? 0.0 : rho);
    }
    if (g.json) {
        json j;
        j["samples"] = c.samples;
        j["steps"] = o.steps;
        j["seed"] = c.seed;
        j["survivors"] = c.survivors;
        if (fit) j["fit"] = {{"rho_hat", fit->rho_hat}, {"standard_error", fit->standard_error}, {"points", fit->points}};
        j["rho_spectral"] = number_or_inf(rho);
        out << j.dump(2) << '\n';
        return ok;
    }
    out << csv.str();
    if (fit)
        err << "fitted rho " << fixed(fit->rho_hat, g.precision) << " +- " << fixed(fit->standard_error, g.precision)
            << " (spectral " << format_rate(rho, g.precision) << ")\n";
    else
        err << "no fit: " << fit_note << '\n';
    return ok;
}

// ---- entropy / perron ----

inline int run_entropy(const GlobalOptions& g, const AmbientOptions& a, std::ostream& out)
{
    const SubshiftSpec s = make_ambient(a);
    const TransitionMatrix t = higher_block_matrix(s, g.max_dim);
    const double lambda = spectral_radius(t);
    const double h = lambda > 0 ? std::log(lambda) : -std::numeric_limits<double>::infinity();
    write_csv_file(g, "q,dim,lambda,entropy\n" + std::to_string(s.q()) + "," + std::to_string(t.dim()) + "," +
                          fixed(lambda, g.precision) + "," + format_rate(h, g.precision) + "\n");
    if (g.json) {
        json j = {{"q", s.q()}, {"dim", t.dim()}, {"lambda", lambda}, {"entropy", lambda > 0 ? json(h) : json("-inf")}};
        out << j.dump(2) << '\n';
        return ok;
    }
    out << "dim: " << t.dim() << '\n';
    out << "lambda: " << fixed(lambda, g.precision) << '\n';
    out << "h_top: " << (lambda > 0 ? fixed(h, g.precision) : std::string("-inf")) << '\n';
    return ok;
}

inline int run_perron(const GlobalOptions& g, const AmbientOptions& a, std::ostream& out)
{
    const SubshiftSpec s = make_ambient(a);
    const TransitionMatrix t = higher_block_matrix(s, g.max_dim);
    const PerronData pd = perron(t);
    std::ostringstream csv;
    csv << "state,label,left,right\n";
    for (std::size_t i = 0; i < t.dim(); ++i)
        csv << i << ',' << t.label(i).to_string() << ',' << fixed(pd.left[i], g.precision) << ','
            << fixed(pd.right[i], g.precision) << '\n';
    write_csv_file(g, csv.str());
    if (g.json) {
        json j;
        j["dim"] = t.dim();
        j["lambda"] = pd.lambda;
        j["reducible"] = pd.reducible;
        json labels = json::array();
        for (std::size_t i = 0; i < t.dim(); ++i) labels.push_back(t.label(i).to_string());
        j["labels"] = labels;
        j["left"] = pd.left;
        j["right"] = pd.right;
        out << j.dump(2) << '\n';
        return ok;
    }
    out << "lambda: " << fixed(pd.lambda, g.precision) << (pd.reducible ? " (reducible)" : "") << '\n';
    out << csv.str();
    return ok;
}

} // namespace escrate::cli
