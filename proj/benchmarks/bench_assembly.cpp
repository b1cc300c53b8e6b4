#include <memory>

#include <benchmark/benchmark.h>

#include <biotsplit/assembly.hpp>
#include <biotsplit/manufactured.hpp>
#include <biotsplit/mesh.hpp>
#include <biotsplit/space.hpp>

namespace {

using namespace biotsplit;

void BM_ElasticityForm(benchmark::State& state)
{
    const auto mesh = std::make_shared<const TriMesh>(build_uniform(static_cast<int>(state.range(0))));
    const Space u(mesh, SpaceKind::p2_vector);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_form(FormKind::elasticity, u, u));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(mesh->num_triangles()));
}
BENCHMARK(BM_ElasticityForm)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_P1Stiffness(benchmark::State& state)
{
    const auto mesh = std::make_shared<const TriMesh>(build_uniform(static_cast<int>(state.range(0))));
    const Space p(mesh, SpaceKind::p1_scalar);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_form(FormKind::stiffness, p, p));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(mesh->num_triangles()));
}
BENCHMARK(BM_P1Stiffness)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DiscreteSystem(benchmark::State& state)
{
    const auto mesh = std::make_shared<const TriMesh>(build_uniform(static_cast<int>(state.range(0))));
    const PhysParams params;
    const ManufacturedCase mc(params);
    for (auto _ : state) {
        DiscreteSystem sys(mesh, params, mc.problem_data());
        benchmark::DoNotOptimize(sys.nu());
    }
}
BENCHMARK(BM_DiscreteSystem)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
