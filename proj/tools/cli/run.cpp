#include "cli/run.hpp"

#include <fstream>
#include <iostream>
#include <memory>

#include <nlohmann/json.hpp>

#include <biotsplit/biot_system.hpp>
#include <biotsplit/manufactured.hpp>
#include <biotsplit/mesh.hpp>
#include <biotsplit/monitors.hpp>
#include <biotsplit/study.hpp>

namespace biotsplit::cli {

namespace {

using nlohmann::json;

// Finest-level floors in column order L2 u, H1 u, L2 xi, H1 xi, L2 p, H1 p.
constexpr std::array<double, 6> kRateFloors{1.8, 1.8, 1.8, 0.9, 1.8, 0.9};

struct CheckOutcome {
    json detail;
    std::vector<std::string> failures;
};

std::shared_ptr<const TriMesh> coarse_mesh(const RunConfig& cfg)
{
    return std::make_shared<const TriMesh>(build_uniform(cfg.n0));
}

CheckOutcome check_rates(const ErrorReport& report)
{
    CheckOutcome out;
    const std::size_t last = report.levels.size() - 1;
    for (std::size_t c = 0; c < kErrorColumns.size(); ++c) {
        const double r = *report.rate(last, c);
        out.detail[std::string("rate_") + kErrorColumns[c]] = {{"value", r}, {"floor", kRateFloors[c]}};
        if (!(r >= kRateFloors[c])) {
            out.failures.push_back("rates: rate_" + std::string(kErrorColumns[c]) + " = " + format_rate(r) + " < " +
                                   format_rate(kRateFloors[c]) + " at 1/h = " + std::to_string(report.levels[last].inv_h));
        }
    }
    return out;
}

CheckOutcome check_energy(const RunConfig& cfg)
{
    CheckOutcome out;
    const PhysParams par(cfg.params);
    const ManufacturedCase exact(par);
    const DiscreteSystem sys(coarse_mesh(cfg), par, exact.frozen_homogeneous_data());
    CoupledStepper stepper(sys);
    const auto trajectory = march(stepper, exact.homogeneous_initial_state(sys), par.num_steps());
    const EnergyReport rep = energy_check(sys, trajectory);
    out.detail = {{"inv_h", cfg.n0},      {"steps", par.num_steps()}, {"energy", rep.energy},
                  {"dissipation", rep.dissipation}, {"defect", rep.defect}, {"max_defect", rep.max_defect},
                  {"limit", 1e-9}};
    if (!(rep.max_defect <= 1e-9)) {
        out.failures.push_back("energy: max defect " + format_error(rep.max_defect) + " > 1e-09");
    }
    return out;
}

CheckOutcome check_contraction(const RunConfig& cfg)
{
    CheckOutcome out;
    const PhysParams par(cfg.params);
    const ManufacturedCase exact(par);
    const DiscreteSystem sys(coarse_mesh(cfg), par, exact.problem_data());
    ContractionOptions opt;
    const bool storage_free = par.c0() == 0.0;
    opt.max_iterations = storage_free ? 5000 : 60;
    opt.stop_when_reduced = storage_free;
    const ContractionReport rep = contraction_monitor(sys, exact.interpolated_state(sys, 0.0), opt);
    out.detail = {{"bound", rep.bound},
                  {"max_ratio", rep.max_ratio},
                  {"ratios", rep.ratios},
                  {"xi_errors", rep.xi_errors},
                  {"p_errors", rep.p_errors},
                  {"strain_errors", rep.strain_errors},
                  {"noise_floor", rep.noise_floor},
                  {"reduction_iteration", rep.reduction_iteration}};
    if (rep.bound_violations > 0) {
        out.failures.push_back("contraction: " + std::to_string(rep.bound_violations) + " ratios above " +
                               std::to_string(rep.bound) + " + 1e-8 (max " + std::to_string(rep.max_ratio) + ")");
    }
    if (rep.pressure_violations > 0) out.failures.push_back("contraction: pressure companion bound violated " + std::to_string(rep.pressure_violations) + " times");
    if (rep.strain_violations > 0) out.failures.push_back("contraction: strain companion bound violated " + std::to_string(rep.strain_violations) + " times");
    if (storage_free) {
        if (rep.monotonicity_violations > 0) out.failures.push_back("contraction: total-pressure error increased");
        if (rep.reduction_iteration < 0) out.failures.push_back("contraction: error not reduced by 1e-8 within 5000 iterations");
    }
    return out;
}

CheckOutcome check_korn(const RunConfig& cfg)
{
    CheckOutcome out;
    auto mesh = coarse_mesh(cfg);
    const std::vector<BoundaryTag> none;
    std::uint64_t seed = 2024;
    for (int level = 0; level < 2; ++level) {
        if (level == 1) mesh = std::make_shared<const TriMesh>(refine(*mesh));
        const Space space(mesh, SpaceKind::p2_vector, none);
        const KornReport rep = korn_check(space, 1000, seed++);
        out.detail["levels"].push_back({{"inv_h", cfg.n0 << level}, {"samples", rep.samples}, {"violations", rep.violations},
                              {"worst_ratio", rep.worst_ratio}});
        if (rep.violations > 0) {
            out.failures.push_back("korn: " + std::to_string(rep.violations) + " violations at 1/h = " + std::to_string(cfg.n0 << level));
        }
    }
    return out;
}

json level_json(const ErrorReport& report, std::size_t k)
{
    const auto& l = report.levels[k];
    json j = {{"level", l.level},
              {"inv_h", l.inv_h},
              {"dofs", l.dofs},
              {"seconds", l.seconds},
              {"solver", {{"solves", l.stats.solves}, {"max_residual", l.stats.max_residual}}}};
    const auto e = l.errors.as_array();
    for (std::size_t c = 0; c < e.size(); ++c) {
        j["errors"][kErrorColumns[c]] = e[c];
        const auto r = report.rate(k, c);
        j["rates"][kErrorColumns[c]] = r ? json(*r) : json(nullptr);
    }
    return j;
}

template <class Write>
void write_file(const std::string& path, Write&& write)
{
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    write(f);
    f.flush();
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log)
{
    const PhysParams par(cfg.params);
    json report;
    report["config"] = cfg.effective;
    report["algorithm"] = to_string(cfg.algorithm);
    report["params"] = {{"E", par.E()},   {"nu", par.nu()},         {"alpha", par.alpha()}, {"c0", par.c0()},
                        {"K", par.K()},   {"mu", par.mu()},         {"lambda", par.lambda()}, {"dt", par.dt()},
                        {"T", par.T()},   {"steps", par.num_steps()}};
    if (cfg.preset) report["params"]["preset"] = *cfg.preset;
    report["iter"] = cfg.iter;
    report["tol"] = cfg.tol ? json(*cfg.tol) : json(nullptr);

    std::vector<std::string> failures;
    SolveStats stats;

    if (!cfg.dump_matrix.empty()) {
        const ManufacturedCase exact(par);
        const DiscreteSystem sys(coarse_mesh(cfg), par, exact.problem_data());
        const DirichletElimination elim(sys.coupled_matrix(), sys.coupled_mask());
        write_file(cfg.dump_matrix, [&](std::ostream& f) { write_matrix_market(f, elim.matrix()); });
        log << "matrix written to " << cfg.dump_matrix << '\n';
    }

    ErrorReport study;
    if (cfg.levels > 0) {
        StudyConfig sc;
        sc.algorithm = cfg.algorithm;
        sc.params = cfg.params;
        sc.n0 = cfg.n0;
        sc.levels = cfg.levels;
        sc.control.iterations = cfg.iter;
        sc.control.tol = cfg.tol;
        log << to_string(cfg.algorithm) << " study, dt = " << par.dt() << ", T = " << par.T() << '\n';
        study = run_study(sc, [&](const LevelResult& l) {
            log << "  1/h = " << l.inv_h << ": " << l.dofs << " dofs, " << l.seconds << " s, max residual "
                << l.stats.max_residual << '\n';
        });
        stats.merge(study.stats());
        report["levels"] = json::array();
        for (std::size_t k = 0; k < study.levels.size(); ++k) report["levels"].push_back(level_json(study, k));
        write_csv(log, study);
        if (!cfg.out_csv.empty()) write_file(cfg.out_csv, [&](std::ostream& f) { write_csv(f, study); });
    }

    for (Check c : cfg.checks) {
        CheckOutcome outcome;
        switch (c) {
        case Check::rates: outcome = check_rates(study); break;
        case Check::energy: outcome = check_energy(cfg); break;
        case Check::contraction: outcome = check_contraction(cfg); break;
        case Check::korn: outcome = check_korn(cfg); break;
        }
        outcome.detail["passed"] = outcome.failures.empty();
        report["checks"][to_string(c)] = outcome.detail;
        log << "check " << to_string(c) << ": " << (outcome.failures.empty() ? "pass" : "FAIL") << '\n';
        for (const auto& f : outcome.failures) log << "  " << f << '\n';
        failures.insert(failures.end(), outcome.failures.begin(), outcome.failures.end());
    }

    report["solver"] = {{"solves", stats.solves}, {"max_residual", stats.max_residual}, {"limit", kResidualLimit}};
    report["tainted"] = stats.tainted();
    report["failures"] = failures;
    report["passed"] = failures.empty();
    if (stats.tainted()) log << "warning: solver residual " << stats.max_residual << " exceeds " << kResidualLimit << " (run tainted)\n";
    if (!cfg.out_json.empty()) write_file(cfg.out_json, [&](std::ostream& f) { f << report.dump(2) << '\n'; });
    return failures.empty() ? exit_ok : exit_check_failed;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    try {
        cfg = parse_config(args);
    } catch (const UsageRequested& u) {
        if (args.empty()) {
            err << u.what();
            return exit_usage;
        }
        out << u.what();
        return exit_ok;
    } catch (const std::exception& e) {
        err << "biot_split: " << e.what() << '\n';
        return exit_usage;
    }
    try {
        return run(cfg, out);
    } catch (const std::exception& e) {
        err << "biot_split: " << e.what() << '\n';
        return exit_runtime;
    }
}

}  // namespace biotsplit::cli
