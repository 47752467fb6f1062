#include "polarkit/fourier.hpp"
#include "polarkit/kernels.hpp"
#include "polarkit/verify.hpp"

#include <benchmark/benchmark.h>

using namespace polarkit;

namespace {

const ConvexBody& body() {
  static const ConvexBody k = random_body(BodyKind::vpolytope, 4, 16, 3);
  return k;
}

Vec box() {
  Vec h(4);
  for (int i = 0; i < 4; ++i) h[i] = support(body(), Vec::Unit(4, i));
  return h;
}

template <long (*F)(const ConvexBody&, const Vec&, long, std::uint64_t)>
void bm_mc_hits(benchmark::State& state) {
  const Vec h = box();
  for (auto _ : state) benchmark::DoNotOptimize(F(body(), h, state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <kernels::Moments (*F)(const ConvexBody&, long, std::uint64_t)>
void bm_moments(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(F(body(), state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <std::vector<Complex> (*F)(const Mat&, const std::vector<Complex>&, const Mat&, double)>
void bm_exp_sums(benchmark::State& state) {
  const auto f = extremal_rho_function(ConvexBody::ball(2), 64);
  Mat nodes(2, f.freq_nodes.size());
  for (std::size_t j = 0; j < f.freq_nodes.size(); ++j) nodes.col(j) = f.freq_nodes[j];
  const Mat points = Mat::Random(2, state.range(0)) * 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(F(nodes, f.weights, points, f.cell_measure));
  state.SetItemsProcessed(state.iterations() * state.range(0) * nodes.cols());
}

template <std::vector<char> (*F)(const ConvexBody&, const Vec&, const Vec&, int)>
void bm_cell_flags(benchmark::State& state) {
  const auto k = ConvexBody::ball(3);
  const int g = static_cast<int>(state.range(0));
  const Vec lo = -Vec::Ones(3);
  const Vec step = Vec::Constant(3, 2.0 / g);
  for (auto _ : state) benchmark::DoNotOptimize(F(k, lo, step, g));
  state.SetItemsProcessed(state.iterations() * g * g * g);
}

template <double (*F)(const std::function<double(const Vec&)>&, int, long)>
void bm_lattice_sum(benchmark::State& state) {
  const std::function<double(const Vec&)> f = fejer_kernel;
  for (auto _ : state) benchmark::DoNotOptimize(F(f, 2, state.range(0)));
  state.SetItemsProcessed(state.iterations() * (2 * state.range(0) + 1) * (2 * state.range(0) + 1));
}

}  // namespace

BENCHMARK(bm_mc_hits<kernels::mc_hits_serial>)->Name("mc_hits/serial")->Arg(1 << 18);
BENCHMARK(bm_mc_hits<kernels::mc_hits>)->Name("mc_hits/parallel")->Arg(1 << 18)->UseRealTime();
BENCHMARK(bm_moments<kernels::inverse_support_moments_serial>)->Name("inverse_support_moments/serial")->Arg(1 << 16);
BENCHMARK(bm_moments<kernels::inverse_support_moments>)->Name("inverse_support_moments/parallel")->Arg(1 << 16)->UseRealTime();
BENCHMARK(bm_exp_sums<kernels::exp_sums_serial>)->Name("exp_sums/serial")->Arg(256);
BENCHMARK(bm_exp_sums<kernels::exp_sums>)->Name("exp_sums/parallel")->Arg(256)->UseRealTime();
BENCHMARK(bm_cell_flags<kernels::cell_flags_serial>)->Name("cell_flags/serial")->Arg(64);
BENCHMARK(bm_cell_flags<kernels::cell_flags>)->Name("cell_flags/parallel")->Arg(64)->UseRealTime();
BENCHMARK(bm_lattice_sum<kernels::lattice_sum_serial>)->Name("lattice_sum/serial")->Arg(200);
BENCHMARK(bm_lattice_sum<kernels::lattice_sum>)->Name("lattice_sum/parallel")->Arg(200)->UseRealTime();

BENCHMARK_MAIN();
