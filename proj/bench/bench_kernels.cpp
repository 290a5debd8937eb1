// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "qtl/cuspidal.hpp"
#include "qtl/matrep.hpp"
#include "qtl/repn.hpp"
#include "qtl/verify.hpp"

namespace {

const qtl::TorusSpec E1(2, {2});
const qtl::TorusSpec E2(2, {3});

qtl::Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? qtl::Execution::Serial : qtl::Execution::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_ProductRelation(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(qtl::verify_product_relation(E2, 6, qtl::SigmaConvention::Standard, exec_of(state)));
  label(state);
}

void BM_StructureConstants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qtl::compute_structure_constants(E1, 5, exec_of(state)));
  label(state);
}

void BM_JacobiGTilde(benchmark::State& state) {
  const auto table = qtl::compute_structure_constants(E1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(qtl::jacobi_gtilde_exhaustive(E1, 2, table, exec_of(state)));
  label(state);
}

void BM_VerifyRepresentation(benchmark::State& state) {
  const auto rho = qtl::pullback(E2, qtl::reference_vw(E2));
  for (auto _ : state) benchmark::DoNotOptimize(qtl::verify_representation(rho, 2, exec_of(state)));
  label(state);
}

void BM_ModuleAxioms(benchmark::State& state) {
  const auto m = qtl::build_module({qtl::CycloNum(0), qtl::CycloNum(0)}, qtl::pullback(E1, qtl::reference_vw(E1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(qtl::verify_module_axioms(m, 3, 50, 1, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_ProductRelation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StructureConstants)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiGTilde)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyRepresentation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModuleAxioms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
