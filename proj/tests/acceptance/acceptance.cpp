// Acceptance suite: one PASS/FAIL line per criterion, exit status is the
// number of failed criteria (capped at 100).
//
//   biotsplit_acceptance            all criteria
//   biotsplit_acceptance 1 5 7      selected criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <biotsplit/assembly.hpp>
#include <biotsplit/basis.hpp>
#include <biotsplit/biot_system.hpp>
#include <biotsplit/manufactured.hpp>
#include <biotsplit/mesh.hpp>
#include <biotsplit/monitors.hpp>
#include <biotsplit/quadrature.hpp>
#include <biotsplit/study.hpp>

namespace {

using namespace biotsplit;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double finest_rate(const ErrorReport& r, std::size_t col) { return *r.rate(r.levels.size() - 1, col); }

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string rate_row(const ErrorReport& r)
{
    std::string s;
    for (std::size_t c = 0; c < kErrorColumns.size(); ++c) s += (c ? (c % 2 ? "/" : ", ") : "") + format_rate(finest_rate(r, c));
    return s;
}

ParameterSet preset_set(const std::string& name, double dt = 1e-3)
{
    ParameterSet s = apply_preset(ParameterSet{}, find_preset(name));
    s.dt = dt;
    return s;
}

std::shared_ptr<const TriMesh> mesh16() { return std::make_shared<const TriMesh>(build_uniform(16)); }

// Convergence studies are independent, so they run concurrently and are
// shared between criteria.
class Studies {
public:
    const ErrorReport& get(const std::string& key)
    {
        auto it = futures_.find(key);
        if (it == futures_.end()) it = futures_.emplace(key, std::async(std::launch::async, [cfg = configs().at(key)] { return run_study(cfg); }).share()).first;
        return it->second.get();
    }
    void prefetch(const std::set<std::string>& keys)
    {
        for (const auto& k : keys) {
            if (!futures_.count(k)) futures_.emplace(k, std::async(std::launch::async, [cfg = configs().at(k)] { return run_study(cfg); }).share());
        }
    }

    static const std::map<std::string, StudyConfig>& configs()
    {
        static const std::map<std::string, StudyConfig> table = [] {
            std::map<std::string, StudyConfig> m;
            StudyConfig coupled;
            coupled.params = preset_set("nu03");
            m["coupled"] = coupled;
            StudyConfig te = coupled;
            te.algorithm = Algorithm::te;
            m["te"] = te;
            StudyConfig it5 = coupled;
            it5.algorithm = Algorithm::iterative;
            it5.params.dt = 5e-3;
            it5.control.iterations = 5;
            m["iter5"] = it5;
            StudyConfig it10 = it5;
            it10.params.dt = 1e-2;
            it10.control.iterations = 10;
            m["iter10"] = it10;
            StudyConfig c0 = it10;
            c0.params = preset_set("c0zero", 1e-2);
            m["c0zero_iter10"] = c0;
            return m;
        }();
        return table;
    }

private:
    std::map<std::string, std::shared_future<ErrorReport>> futures_;
};

Verdict criterion1(Studies& s)
{
    const ErrorReport& r = s.get("coupled");
    const std::array<double, 6> table{2.09, 2.00, 2.04, 1.00, 2.06, 1.00};
    double worst = 0.0;
    for (std::size_t c = 0; c < 6; ++c) worst = std::max(worst, std::abs(finest_rate(r, c) - table[c]));
    double seconds = 0.0;
    for (const auto& l : r.levels) seconds += l.seconds;
    return {worst <= 0.2, "coupled finest rates " + rate_row(r) + " vs 2.09/2.00, 2.04/1.00, 2.06/1.00; max deviation " +
                              fmt("%.2f", worst) + " (limit 0.20); study time " + fmt("%.1f", seconds) + " s"};
}

Verdict criterion2(Studies& s)
{
    const ErrorReport& r = s.get("coupled");
    const std::array<std::array<double, 6>, 4> table{{
        {1.063e-03, 7.114e-02, 5.297e-03, 4.733e-01, 6.091e-03, 1.698e-01},
        {2.320e-04, 1.800e-02, 1.267e-03, 2.347e-01, 1.530e-03, 8.476e-02},
        {5.503e-05, 4.528e-03, 3.097e-04, 1.168e-01, 3.792e-04, 4.243e-02},
        {1.296e-05, 1.135e-03, 7.515e-05, 5.825e-02, 9.078e-05, 2.123e-02},
    }};
    int outside = 0;
    double lo = 1e300, hi = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto e = r.levels[k].errors.as_array();
        for (std::size_t c = 0; c < 6; ++c) {
            const double ratio = e[c] / table[k][c];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            if (std::abs(ratio - 1.0) > 0.25) ++outside;
        }
    }
    std::string detail = std::to_string(outside) + "/24 entries outside +-25%; measured/table ratio in [" + fmt("%.2f", lo) + ", " +
                         fmt("%.2f", hi) + "] (1/h=16: L2u " + format_error(r.levels[0].errors.u.l2) + " vs 1.063e-03)";
    if (outside > 0) detail += "; E scan does not close the gap (see README), rates governed by criterion 1";
    return {outside == 0, detail};
}

Verdict criterion3(Studies& s)
{
    const double te = finest_rate(s.get("te"), 0);
    const double coupled = finest_rate(s.get("coupled"), 0);
    return {te <= 0.5 && coupled >= 1.9, "L2u rate at 1/h=128: TE " + format_rate(te) + " (<= 0.5), coupled " + format_rate(coupled) + " (>= 1.9)"};
}

Verdict criterion4(Studies& s)
{
    const ErrorReport& r5 = s.get("iter5");
    const ErrorReport& r10 = s.get("iter10");
    const double l2u = finest_rate(r10, 0);
    bool energy_ok = true;
    for (const ErrorReport* r : {&r5, &r10}) {
        for (std::size_t c : {1u, 3u, 5u}) energy_ok = energy_ok && finest_rate(*r, c) >= 0.9;
    }
    // compared at the two decimals the rate tables carry
    bool dominates = true;
    for (std::size_t c = 0; c < 6; ++c) dominates = dominates && round2(finest_rate(r10, c)) >= round2(finest_rate(r5, c));
    const bool pass = l2u >= 2.5 && energy_ok && dominates;
    return {pass, "iter=10 finest L2u rate " + format_rate(l2u) + " (>= 2.5, reference 2.98); energy-norm rates >= 0.9: " +
                      (energy_ok ? "yes" : "no") + "; iter=10 dominates iter=5: " + (dominates ? "yes" : "no") + " [iter5 " + rate_row(r5) +
                      " | iter10 " + rate_row(r10) + "]"};
}

Verdict criterion5()
{
    const PhysParams par(preset_set("nu03"));
    const ManufacturedCase exact(par);
    const DiscreteSystem sys(mesh16(), par, exact.problem_data());
    ContractionOptions opt;
    opt.max_iterations = 60;
    const ContractionReport rep = contraction_monitor(sys, exact.interpolated_state(sys, 0.0), opt);
    const bool pass = rep.ratios.size() >= 20 && rep.max_ratio <= 0.634146 + 1e-8 && rep.bounds_hold();
    return {pass, std::to_string(rep.ratios.size()) + " measured ratios, max " + fmt("%.6f", rep.max_ratio) + " (bound " + fmt("%.6f", rep.bound) +
                      "); companion violations: pressure " + std::to_string(rep.pressure_violations) + ", strain " +
                      std::to_string(rep.strain_violations)};
}

Verdict criterion6(Studies& s)
{
    const PhysParams par(preset_set("c0zero"));
    const ManufacturedCase exact(par);
    const DiscreteSystem sys(mesh16(), par, exact.problem_data());
    ContractionOptions opt;
    opt.max_iterations = 5000;
    opt.stop_when_reduced = true;
    const ContractionReport rep = contraction_monitor(sys, exact.interpolated_state(sys, 0.0), opt);
    const double l2u = finest_rate(s.get("c0zero_iter10"), 0);
    const bool monotone = rep.monotonicity_violations == 0;
    const bool reduced = rep.reduction_iteration > 0;
    const bool pass = monotone && reduced && l2u >= 1.7;
    return {pass, std::string("c0=0 monitor: non-increasing ") + (monotone ? "yes" : "no") + ", 1e-8 reduction at iteration " +
                      std::to_string(rep.reduction_iteration) + "; iter=10 dt=1e-2 finest L2u rate " + format_rate(l2u) +
                      " (>= 2 - 0.3, reference 2.78)"};
}

Verdict criterion7()
{
    const PhysParams par(preset_set("nu03"));
    const ManufacturedCase exact(par);
    const DiscreteSystem sys(mesh16(), par, exact.frozen_homogeneous_data());
    CoupledStepper stepper(sys);
    const EnergyReport rep = energy_check(sys, march(stepper, exact.homogeneous_initial_state(sys), 10));
    return {rep.defect.size() == 11 && rep.max_defect <= 1e-9,
            "max relative defect over 10 steps " + fmt("%.2e", rep.max_defect) + " (<= 1e-9); J^0 = " + fmt("%.6e", rep.energy.front()) +
                ", J^10 + S^10 = " + fmt("%.6e", rep.energy.back() + rep.dissipation.back())};
}

Verdict criterion8()
{
    int violations = 0;
    double worst = 0.0;
    std::string detail;
    for (int n : {16, 32}) {
        const Space space(std::make_shared<const TriMesh>(build_uniform(n)), SpaceKind::p2_vector);
        const KornReport rep = korn_check(space, 1000, 4100 + static_cast<std::uint64_t>(n));
        violations += rep.violations;
        worst = std::max(worst, rep.worst_ratio);
        detail += "1/h=" + std::to_string(n) + ": " + std::to_string(rep.samples) + " samples, " + std::to_string(rep.violations) + " violations; ";
    }
    return {violations == 0, detail + "worst ||div u||/||eps(u)|| " + fmt("%.4f", worst) + " (bound sqrt(2))"};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Verdict criterion9()
{
    auto one = [](const Preset& p) {
        const PhysParams par(preset_set(p.name));
        const ManufacturedCase exact(par);
        const DiscreteSystem sys(mesh16(), par, exact.problem_data());
        IterationControl control;
        control.tol = 1e-12;
        control.max_iterations = 50000;
        IterativeStepper it(sys, control);
        CoupledStepper coupled(sys);
        const BiotState start = exact.interpolated_state(sys, 0.0);
        const auto a = march(it, start, par.num_steps());
        const auto b = march(coupled, start, par.num_steps());
        double worst = 0.0;
        for (std::size_t n = 0; n < a.size(); ++n) {
            worst = std::max({worst, max_abs_diff(a[n].u.values, b[n].u.values), max_abs_diff(a[n].xi.values, b[n].xi.values),
                              max_abs_diff(a[n].p.values, b[n].p.values)});
        }
        return worst;
    };
    std::vector<std::future<double>> jobs;
    for (const auto& p : presets()) jobs.push_back(std::async(std::launch::async, one, p));
    bool pass = true;
    std::string detail = "max coefficient difference over all time levels:";
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        const double d = jobs[k].get();
        pass = pass && d <= 1e-9;
        detail += " " + presets()[k].name + " " + fmt("%.1e", d);
    }
    return {pass, detail + " (<= 1e-9)"};
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

Verdict criterion10()
{
    // element matrices on the unit right triangles of a square cut along (1,0)-(0,1)
    const auto mesh = std::make_shared<const TriMesh>(
        std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, std::vector<std::array<Index, 3>>{{0, 1, 3}, {1, 2, 3}},
        std::vector<BoundaryEdge>{{{0, 1}, BoundaryTag::bottom}, {{1, 2}, BoundaryTag::right}, {{2, 3}, BoundaryTag::top}, {{3, 0}, BoundaryTag::left}},
        0);
    const Space p1(mesh, SpaceKind::p1_scalar);
    const SparseMatrix k = assemble_form(FormKind::stiffness, p1, p1);
    const SparseMatrix m = assemble_form(FormKind::mass, p1, p1);
    const double d = 1.0 / 12, o = 1.0 / 24;
    const double ks[4][4] = {{1, -0.5, 0, -0.5}, {-0.5, 1, -0.5, 0}, {0, -0.5, 1, -0.5}, {-0.5, 0, -0.5, 1}};
    const double ms[4][4] = {{d, o, 0, o}, {o, 2 * d, o, 2 * o}, {0, o, d, o}, {o, 2 * o, o, 2 * d}};
    double elem_err = 0.0;
    for (Index i = 0; i < 4; ++i) {
        for (Index j = 0; j < 4; ++j) {
            elem_err = std::max({elem_err, std::abs(k.coeff(i, j) - ks[i][j]), std::abs(m.coeff(i, j) - ms[i][j])});
        }
    }

    double quad_err = 0.0;
    const auto& rule = triangle_rule(5);
    for (int a = 0; a <= 5; ++a) {
        for (int b = 0; a + b <= 5; ++b) {
            double s = 0.0;
            for (const auto& q : rule.points) s += q.weight * std::pow(q.barycentric[1], a) * std::pow(q.barycentric[2], b);
            quad_err = std::max(quad_err, std::abs(s - factorial(a) * factorial(b) / factorial(a + b + 2)));
        }
    }

    // strong-form residual with fourth-order differences of the closed-form fields
    double residual = 0.0;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(0.0, 1.0), time(0.0, 0.01);
    const PhysParams par;
    const ManufacturedCase mc(par);
    const double h = 1e-3;
    auto d4 = [h](auto f) { return (8.0 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12.0 * h); };
    auto stress = [&](Vec2 x, double t, int c) {
        const auto g = mc.displacement_gradient(x, t);
        const double xi = mc.total_pressure(x, t);
        return c == 0 ? 2 * par.mu() * g[0].x - xi : c == 1 ? 2 * par.mu() * g[1].y - xi : par.mu() * (g[0].y + g[1].x);
    };
    for (int sample = 0; sample < 100; ++sample) {
        const Vec2 x{pos(rng), pos(rng)};
        const double t = time(rng);
        const double fx = -(d4([&](double e) { return stress({x.x + e, x.y}, t, 0); }) + d4([&](double e) { return stress({x.x, x.y + e}, t, 2); }));
        const double fy = -(d4([&](double e) { return stress({x.x + e, x.y}, t, 2); }) + d4([&](double e) { return stress({x.x, x.y + e}, t, 1); }));
        const double q = par.storage() * d4([&](double e) { return mc.pressure(x, t + e); }) -
                         par.alpha() / par.lambda() * d4([&](double e) { return mc.total_pressure(x, t + e); }) -
                         par.K() * (d4([&](double e) { return mc.pressure_gradient({x.x + e, x.y}, t).x; }) +
                                    d4([&](double e) { return mc.pressure_gradient({x.x, x.y + e}, t).y; }));
        const Vec2 f = mc.body_force(x, t);
        residual = std::max({residual, std::abs(fx - f.x), std::abs(fy - f.y), std::abs(q - mc.mass_source(x, t))});
    }
    const bool pass = elem_err <= 1e-14 && quad_err <= 1e-15 && residual <= 1e-8;
    return {pass, "P1 mass/stiffness element error " + fmt("%.1e", elem_err) + " (<= 1e-14); degree-5 monomial error " + fmt("%.1e", quad_err) +
                      "; strong-form residual at 100 samples " + fmt("%.1e", residual) + " (<= 1e-8)"};
}

}  // namespace

int main(int argc, char** argv)
{
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int c = std::atoi(argv[i]);
        if (c < 1 || c > 10) {
            std::cerr << "usage: biotsplit_acceptance [criterion 1..10 ...]\n";
            return 2;
        }
        selected.insert(c);
    }
    if (selected.empty()) {
        for (int c = 1; c <= 10; ++c) selected.insert(c);
    }

    Studies studies;
    std::set<std::string> needed;
    const std::map<int, std::vector<std::string>> uses{{1, {"coupled"}}, {2, {"coupled"}}, {3, {"coupled", "te"}}, {4, {"iter5", "iter10"}}, {6, {"c0zero_iter10"}}};
    for (int c : selected) {
        if (auto it = uses.find(c); it != uses.end()) needed.insert(it->second.begin(), it->second.end());
    }
    studies.prefetch(needed);

    const std::map<int, std::pair<std::string, std::function<Verdict()>>> criteria{
        {1, {"rate reproduction, coupled", [&] { return criterion1(studies); }}},
        {2, {"reference error magnitudes within 25%", [&] { return criterion2(studies); }}},
        {3, {"TE instability signature", [&] { return criterion3(studies); }}},
        {4, {"iterative decoupled accuracy", [&] { return criterion4(studies); }}},
        {5, {"contraction bound, c0 = 1", criterion5}},
        {6, {"c0 = 0 convergence", [&] { return criterion6(studies); }}},
        {7, {"discrete energy identity", criterion7}},
        {8, {"divergence bounded by strain (Korn-type)", criterion8}},
        {9, {"iterative tol=1e-12 equals coupled", criterion9}},
        {10, {"unit oracles", criterion10}},
    };

    int failed = 0;
    for (int c : selected) {
        const auto& [name, check] = criteria.at(c);
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        if (!v.pass) ++failed;
        std::cout << "criterion " << (c < 10 ? " " : "") << c << ": " << (v.pass ? "PASS" : "FAIL") << "  " << name << ": " << v.detail << std::endl;
    }
    std::cout << (selected.size() - static_cast<std::size_t>(failed)) << "/" << selected.size() << " criteria passed" << std::endl;
    return std::min(failed, 100);
}
