#include <memory>

#include <benchmark/benchmark.h>

#include <biotsplit/linalg.hpp>
#include <biotsplit/manufactured.hpp>
#include <biotsplit/mesh.hpp>
#include <biotsplit/steppers.hpp>

namespace {

using namespace biotsplit;

struct Fixture {
    explicit Fixture(int n)
        : mesh(std::make_shared<const TriMesh>(build_uniform(n))), mc(params), sys(mesh, params, mc.problem_data())
    {
    }
    PhysParams params;
    std::shared_ptr<const TriMesh> mesh;
    ManufacturedCase mc;
    DiscreteSystem sys;
};

void BM_CoupledFactor(benchmark::State& state)
{
    const Fixture f(static_cast<int>(state.range(0)));
    const SparseMatrix a = f.sys.coupled_matrix();
    for (auto _ : state) benchmark::DoNotOptimize(lu_factor(a));
    state.counters["dofs"] = static_cast<double>(a.rows());
}
BENCHMARK(BM_CoupledFactor)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state, Algorithm algorithm, int iterations)
{
    const Fixture f(static_cast<int>(state.range(0)));
    IterationControl control;
    control.iterations = iterations;
    const auto stepper = make_stepper(algorithm, f.sys, control);
    const BiotState initial = f.mc.interpolated_state(f.sys, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(stepper->step(initial));
}
BENCHMARK_CAPTURE(BM_Step, coupled, Algorithm::coupled, 1)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Step, te, Algorithm::te, 1)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Step, iterative_10, Algorithm::iterative, 10)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
