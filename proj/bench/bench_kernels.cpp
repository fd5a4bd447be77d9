#include <benchmark/benchmark.h>

#include "braidkit/envelope/bracket.hpp"
#include "braidkit/envelope/filtered.hpp"
#include "braidkit/tower/tower.hpp"

using namespace braidkit;
using kernels::Exec;

namespace {

exact::Field Q = exact::Field::rationals();

std::shared_ptr<const braided::BraidedSpace> kharchenko() {
  std::vector<std::vector<exact::Scalar>> q = {{exact::Scalar(Q, -1), exact::Scalar(Q, 1)},
                                               {exact::Scalar(Q, -1), exact::Scalar(Q, -1)}};
  return std::make_shared<const braided::BraidedSpace>(braided::BraidedSpace::diagonal(Q, q));
}

std::shared_ptr<const braided::BraidedSpace> flip3() {
  return std::make_shared<const braided::BraidedSpace>(braided::BraidedSpace::flip(Q, 3, {"e", "h", "f"}));
}

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_DeltaComponent(benchmark::State& st) {
  auto s = kharchenko();
  for (auto _ : st) benchmark::DoNotOptimize(braided::delta_component(*s, 4, 4, mode(st)));
  label(st);
}

void BM_Symmetrizer(benchmark::State& st) {
  auto s = kharchenko();
  for (auto _ : st) benchmark::DoNotOptimize(braided::quantum_symmetrizer(*s, 7, 7, mode(st)));
  label(st);
}

void BM_InsertBatch(benchmark::State& st) {
  auto s = kharchenko();
  auto op = braided::delta_component(*s, 4, 4, Exec::serial);
  std::vector<exact::SparseVec> cols;
  for (std::uint32_t j = 0; j < op.size(); ++j) cols.push_back(op.column(j));
  for (auto _ : st) {
    exact::EchelonBuilder b(Q, op.size());
    kernels::insert_batch(b, cols, mode(st));
    benchmark::DoNotOptimize(b.rank());
  }
  label(st);
}

void BM_TowerStep(benchmark::State& st) {
  auto g = tower::free_presentation(kharchenko(), 7);
  for (auto _ : st) benchmark::DoNotOptimize(tower::tower_step(g, mode(st)));
  label(st);
}

void BM_FilteredClosure(benchmark::State& st) {
  auto s = flip3();
  envelope::BracketSpec b;
  b.kind = envelope::BracketKind::lie_flip;
  b.brackets = {{0, 1, envelope::parse_poly("-2 e", s->labels(), Q)},
                {0, 2, envelope::parse_poly("h", s->labels(), Q)},
                {1, 2, envelope::parse_poly("-2 f", s->labels(), Q)}};
  auto rels = envelope::relations_from_bracket(s, b, 5).relations;
  for (auto _ : st) benchmark::DoNotOptimize(envelope::filtered_ideal_at(*s, rels, 5, 2, mode(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_DeltaComponent)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Symmetrizer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InsertBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TowerStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilteredClosure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
