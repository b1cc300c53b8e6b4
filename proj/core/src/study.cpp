#include "biotsplit/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "biotsplit/manufactured.hpp"
#include "biotsplit/mesh.hpp"

namespace biotsplit {

std::optional<double> ErrorReport::rate(std::size_t level, std::size_t column) const
{
    if (level == 0 || level >= levels.size() || column >= kErrorColumns.size()) return std::nullopt;
    const double coarse = levels[level - 1].errors.as_array()[column];
    const double fine = levels[level].errors.as_array()[column];
    return std::log2(coarse / fine);
}

SolveStats ErrorReport::stats() const
{
    SolveStats s;
    for (const auto& l : levels) s.merge(l.stats);
    return s;
}

LevelResult run_level(const StudyConfig& config, std::shared_ptr<const TriMesh> mesh)
{
    const auto start = std::chrono::steady_clock::now();
    const PhysParams params(config.params);
    const int steps = params.num_steps();
    const ManufacturedCase exact(params);
    const DiscreteSystem sys(mesh, params, exact.problem_data());
    auto stepper = make_stepper(config.algorithm, sys, config.control);

    BiotState state = exact.interpolated_state(sys, 0.0);
    for (int n = 0; n < steps; ++n) state = stepper->step(state);

    LevelResult out;
    for (const auto& be : mesh->boundary_edges()) out.inv_h += be.tag == BoundaryTag::bottom ? 1 : 0;
    out.dofs = sys.nu() + sys.nxi() + sys.np();
    out.errors = compute_errors(state, exact);
    out.stats = stepper->stats();
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

ErrorReport run_study(const StudyConfig& config, const std::function<void(const LevelResult&)>& progress)
{
    if (config.levels < 1) throw std::invalid_argument("run_study: levels must be >= 1");
    static_cast<void>(PhysParams(config.params).num_steps());
    ErrorReport report;
    auto mesh = std::make_shared<const TriMesh>(build_uniform(config.n0));
    int inv_h = config.n0;
    for (int level = 0; level < config.levels; ++level) {
        if (level > 0) {
            mesh = std::make_shared<const TriMesh>(refine(*mesh));
            inv_h *= 2;
        }
        LevelResult r;
        try {
            r = run_level(config, mesh);
        } catch (const std::exception& e) {
            throw std::runtime_error("level " + std::to_string(level) + " (1/h = " + std::to_string(inv_h) + "): " + e.what());
        }
        r.level = level;
        r.inv_h = inv_h;
        report.levels.push_back(r);
        if (progress) progress(r);
    }
    return report;
}

std::string format_error(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", value);
    return buf;
}

std::string format_rate(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

void write_csv(std::ostream& out, const ErrorReport& report)
{
    out << "level,inv_h";
    for (const char* c : kErrorColumns) out << ",err_" << c << ",rate_" << c;
    out << '\n';
    for (std::size_t k = 0; k < report.levels.size(); ++k) {
        const auto& l = report.levels[k];
        out << l.level << ',' << l.inv_h;
        const auto errs = l.errors.as_array();
        for (std::size_t c = 0; c < errs.size(); ++c) {
            out << ',' << format_error(errs[c]) << ',';
            if (const auto r = report.rate(k, c)) out << format_rate(*r);
        }
        out << '\n';
    }
}

}  // namespace biotsplit
