#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_ambient(CLI::App* app, escrate::cli::AmbientOptions& a)
{
    app->add_option("--q", a.q, "alphabet size");
    app->add_option("--forbidden", a.forbidden, "forbidden words of the ambient shift, e.g. 00,11");
    app->add_option("--forbidden-file", a.forbidden_file, "forbidden words file (q= header)");
    app->add_option("--shift", a.shift_file, "transition matrix file (dim= header)");
}

void add_hole(CLI::App* app, escrate::cli::HoleOptions& h)
{
    app->add_option("--hole", h.words, "hole words, e.g. 00,01 (empty for no hole)");
    app->add_option("--hole-file", h.file, "hole words file (q= header)");
}

} // namespace

int main(int argc, char** argv)
{
    using namespace escrate::cli;
    CLI::App app{"escape rates of subshifts of finite type with Markov holes"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_flag("--json", g.json, "print JSON instead of text");
    app.add_option("--csv", g.csv_path, "also write CSV output to this path");
    app.add_option("--precision", g.precision, "decimal places in text and CSV output")->check(CLI::Range(0, 17));
    app.add_option("--max-dim", g.max_dim, "cap on transition matrix dimension")->check(CLI::PositiveNumber);

    EscapeOptions esc;
    auto* escape = app.add_subcommand("escape", "escape rate into a hole");
    add_ambient(escape, esc.ambient);
    add_hole(escape, esc.hole);
    escape->add_option("--method", esc.method, "spectral, comb or both")
        ->check(CLI::IsMember({"spectral", "comb", "both"}));

    TableOptions tab;
    auto* table = app.add_subcommand("table", "reproduce a table (1, 2, 2a, 3, 4, 5, 5bis, 6, 7)");
    table->add_option("id", tab.id, "table id")->required();
    table->add_flag("--check", tab.check, "compare with the embedded expected values");

    RectOptions rec;
    auto* rect = app.add_subcommand("rect", "rectangle hole for the torus map T_{M,N}");
    rect->add_option("--M", rec.M, "horizontal expansion")->required();
    rect->add_option("--N", rec.N, "vertical expansion")->required();
    rect->add_option("--m", rec.m, "horizontal resolution")->required();
    rect->add_option("--n", rec.n, "vertical resolution")->required();
    rect->add_option("--i", rec.i, "horizontal index")->required();
    rect->add_option("--j", rec.j, "vertical index")->required();

    ConstructOptions con;
    auto* construct = app.add_subcommand("construct", "word sets with property (P)");
    construct->add_option("--q", con.params.q, "alphabet size")->required();
    construct->add_option("--m", con.params.m, "word length")->required();
    construct->add_option("--variant", con.params.variant, "construction 1, 2 or 3");
    construct->add_option("--ell", con.params.ell, "number of reserved symbols");
    construct->add_option("--r", con.params.r, "length of the reserved suffix");
    construct->add_option("--reserved", con.reserved, "reserved symbols, e.g. 4,5");
    construct->add_option("--n", con.n, "n for the max-m bound row");

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo survival curve under the Parry measure");
    add_ambient(simulate, sim.ambient);
    add_hole(simulate, sim.hole);
    simulate->add_option("--samples", sim.samples, "number of sampled orbits")->check(CLI::PositiveNumber);
    simulate->add_option("--steps", sim.steps, "number of steps");
    simulate->add_option("--seed", sim.seed, "random seed");
    simulate->add_option("--threads", sim.threads, "worker threads (0 = hardware)");
    simulate->add_option("--svg", sim.svg_path, "write a survival plot");

    AmbientOptions ent;
    auto* entropy = app.add_subcommand("entropy", "topological entropy of a subshift");
    add_ambient(entropy, ent);

    AmbientOptions per;
    auto* perron_cmd = app.add_subcommand("perron", "Perron eigenvalue and eigenvectors");
    add_ambient(perron_cmd, per);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : user_error;
    }

    try {
        if (escape->parsed()) return run_escape(g, esc, std::cout);
        if (table->parsed()) return run_table(g, tab, std::cout, std::cerr);
        if (rect->parsed()) return run_rect(g, rec, std::cout);
        if (construct->parsed()) return run_construct(g, con, std::cout);
        if (simulate->parsed()) return run_simulate(g, sim, std::cout, std::cerr);
        if (entropy->parsed()) return run_entropy(g, ent, std::cout);
        if (perron_cmd->parsed()) return run_perron(g, per, std::cout);
    } catch (const escrate::tolerance_failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return tolerance_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return user_error;
    }
    return user_error;
}
