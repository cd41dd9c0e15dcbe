#include "hypsob/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Flags {
    int n = 0, k = 0, jet_order = 0;
    double beta = 0.0;
    std::vector<double> beta_list;
    double rel_tol = 1e-10, cutoff = 40.0;
    std::string output = "text", suite = "all";
    std::uint64_t seed = 1;
    bool symbolic = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--n", f.n, "dimension, n > 2k");
    sub->add_option("--k", f.k, "operator order");
    sub->add_option("--beta", f.beta, "extremal parameter in [0, 1)");
    sub->add_option("--beta-list", f.beta_list, "comma separated, strictly increasing")->delimiter(',');
    sub->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance")->capture_default_str();
    sub->add_option("--cutoff", f.cutoff, "truncation radius for direct hyperbolic integrals")->capture_default_str();
    sub->add_option("--jet-order", f.jet_order, "Taylor jet order, at least 2k+2");
    sub->add_option("--output", f.output, "json, csv or text")->capture_default_str();
    sub->add_option("--seed", f.seed, "seed for sample points")->capture_default_str();
    sub->add_option("--suite", f.suite, "el, euclid-el, recursion, constants, conformal or all")->capture_default_str();
    sub->add_flag("--symbolic", f.symbolic, "print coefficients as polynomials in n only");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GJMS operators on hyperbolic space: coefficients, constants and extremal quotients"};
    app.require_subcommand(1);
    Flags f;
    const std::vector<std::pair<std::string, std::string>> subs = {
        {"coeffs", "coefficients a_{km} and b_k"},
        {"constants", "sharp constants for (n, k)"},
        {"verify", "exact and numerical verification suites"},
        {"quotient", "Sobolev quotient of u_beta on hyperbolic space"},
        {"euclid-quotient", "quotient of the flat lift restricted to the unit ball"},
        {"conformal", "pointwise conformal transformation law"},
        {"thm33-probe", "displayed integrals against direct truncated integrals"},
    };
    std::vector<CLI::App*> handles;
    for (const auto& [name, help] : subs) {
        CLI::App* s = app.add_subcommand(name, help);
        add_common(s, f);
        handles.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        hypsob::cli::emit_error(std::cout, "UsageError", e.what());
        return hypsob::cli::kExitUsage;
    }

    hypsob::cli::RunConfig c;
    CLI::App* used = app.get_subcommands().front();
    c.subcommand = used->get_name();
    auto given = [&](const char* opt) { return used->count(opt) > 0; };
    if (given("--n")) c.n = f.n;
    if (given("--k")) c.k = f.k;
    if (given("--beta")) c.beta = f.beta;
    if (given("--jet-order")) c.jet_order = f.jet_order;
    c.beta_list = f.beta_list;
    c.rel_tol = f.rel_tol;
    c.cutoff = f.cutoff;
    c.seed = f.seed;
    c.suite = f.suite;
    c.symbolic = f.symbolic;
    try {
        c.output = hypsob::cli::parse_output(f.output);
    } catch (const hypsob::Error& e) {
        hypsob::cli::emit_error(std::cout, e.code(), e.what());
        return hypsob::cli::kExitUsage;
    }
    return hypsob::cli::run(c, std::cout);
}
