#include "cli/config.hpp"

#include <CLI11.hpp>

#include <biotsplit/manufactured.hpp>

namespace biotsplit::cli {

namespace {

struct Flags {
    std::string algorithm = "coupled";
    std::string preset;
    double E = 1.0;
    double nu = 0.3;
    double alpha = 1.0;
    double c0 = 1.0;
    double K = 1.0;
    double dt = 1e-3;
    double T = 0.01;
    int n0 = 16;
    int levels = 4;
    int iter = 1;
    double tol = 0.0;
    std::vector<std::string> checks;
    std::string out_csv;
    std::string out_json;
    std::string dump_matrix;
};

void build_app(CLI::App& app, Flags& f)
{
    app.set_config("--config", "", "flat key=value file; flags override its values");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.add_option("--algorithm", f.algorithm, "coupled | te | iterative")->check(CLI::IsMember({"coupled", "te", "iterative"}));
    app.add_option("--preset", f.preset, "nu03 | nu0499 | k1em6 | c0zero");
    app.add_option("--E", f.E, "Young's modulus");
    app.add_option("--nu", f.nu, "Poisson ratio");
    app.add_option("--alpha", f.alpha, "Biot-Willis coefficient");
    app.add_option("--c0", f.c0, "constrained specific storage");
    app.add_option("--K", f.K, "hydraulic conductivity");
    app.add_option("--dt", f.dt, "time step");
    app.add_option("--T", f.T, "final time");
    app.add_option("--n0", f.n0, "cells per side on the coarsest mesh");
    app.add_option("--levels", f.levels, "meshes in the refinement chain (0: no study)");
    app.add_option("--iter", f.iter, "iterations per step (iterative)");
    app.add_option("--tol", f.tol, "increment tolerance per step (iterative; overrides --iter)");
    app.add_option("--check", f.checks, "energy | contraction | korn | rates (repeatable)")
        ->check(CLI::IsMember({"energy", "contraction", "korn", "rates"}))
        ->delimiter(',');
    app.add_option("--out-csv", f.out_csv, "error table path");
    app.add_option("--out-json", f.out_json, "report path");
    app.add_option("--dump-matrix", f.dump_matrix, "write the coarse coupled matrix (Matrix Market)");
}

Check parse_check(const std::string& s)
{
    if (s == "energy") return Check::energy;
    if (s == "contraction") return Check::contraction;
    if (s == "korn") return Check::korn;
    return Check::rates;
}

}  // namespace

const char* to_string(Check c)
{
    switch (c) {
    case Check::energy: return "energy";
    case Check::contraction: return "contraction";
    case Check::korn: return "korn";
    case Check::rates: return "rates";
    }
    return "unknown";
}

std::string usage()
{
    CLI::App app("Biot poroelasticity: coupled, TE and iterative splitting convergence studies", "biot_split");
    Flags f;
    build_app(app, f);
    return app.help();
}

RunConfig parse_config(const std::vector<std::string>& args)
{
    if (args.empty()) throw UsageRequested(usage());
    CLI::App app("Biot poroelasticity: coupled, TE and iterative splitting convergence studies", "biot_split");
    Flags f;
    build_app(app, f);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw UsageRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    RunConfig cfg;
    for (const CLI::Option* opt : app.get_options()) {
        if (opt->count() == 0 || opt->get_lnames().empty()) continue;
        cfg.effective[opt->get_lnames().front()] = opt->results();
    }

    cfg.algorithm = parse_algorithm(f.algorithm);
    ParameterSet ps;
    if (!f.preset.empty()) {
        try {
            const Preset& p = find_preset(f.preset);
            ps = apply_preset(ps, p);
            cfg.preset = p.name;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    const auto given = [&](const char* name) { return app.count(std::string("--") + name) > 0; };
    ps.youngs_modulus = f.E;
    ps.biot_alpha = f.alpha;
    ps.dt = f.dt;
    ps.final_time = f.T;
    if (given("nu") || !cfg.preset) ps.poisson_ratio = f.nu;
    if (given("c0") || !cfg.preset) ps.storage_c0 = f.c0;
    if (given("K") || !cfg.preset) ps.conductivity = f.K;
    try {
        static_cast<void>(PhysParams(ps).num_steps());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    cfg.params = ps;

    if (f.n0 < 1) throw ConfigError("invalid n0 = " + std::to_string(f.n0) + ": must be >= 1");
    if (f.levels < 0 || f.levels > 8) throw ConfigError("invalid levels = " + std::to_string(f.levels) + ": must be in 0..8");
    if (f.iter < 1) throw ConfigError("invalid iter = " + std::to_string(f.iter) + ": must be >= 1");
    if (given("tol")) {
        if (!(f.tol > 0.0)) throw ConfigError("invalid tol = " + std::to_string(f.tol) + ": must be > 0");
        cfg.tol = f.tol;
    }
    cfg.n0 = f.n0;
    cfg.levels = f.levels;
    cfg.iter = f.iter;
    for (const auto& c : f.checks) {
        const Check k = parse_check(c);
        if (std::find(cfg.checks.begin(), cfg.checks.end(), k) == cfg.checks.end()) cfg.checks.push_back(k);
    }
    if (std::find(cfg.checks.begin(), cfg.checks.end(), Check::rates) != cfg.checks.end() && cfg.levels < 2) {
        throw ConfigError("--check rates needs --levels >= 2");
    }
    cfg.out_csv = f.out_csv;
    cfg.out_json = f.out_json;
    cfg.dump_matrix = f.dump_matrix;
    return cfg;
}

}  // namespace biotsplit::cli
