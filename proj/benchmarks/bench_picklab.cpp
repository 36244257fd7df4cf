#include <benchmark/benchmark.h>

#include "picklab/agler_np.hpp"
#include "picklab/ball_np.hpp"
#include "picklab/cp_toolkit.hpp"
#include "picklab/disk_np.hpp"
#include "picklab/matcore.hpp"
#include "picklab/oracle.hpp"
#include "picklab/quiver_np.hpp"

using namespace picklab;

static void BM_Stein(benchmark::State& state)
{
    const auto n = static_cast<Eigen::Index>(state.range(0));
    Rng rng(1);
    const Mat a = random_with_spectral_radius(rng, n, 0.8);
    const Mat b = random_with_spectral_radius(rng, n, 0.7);
    const Mat q = random_matrix(rng, n, n);
    for (auto _ : state) benchmark::DoNotOptimize(solve_stein(a, q, b));
}
BENCHMARK(BM_Stein)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Arg(96);

static void BM_PickLtoa(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    std::vector<Mat> t, x, y;
    for (int i = 0; i < n; ++i) {
        t.push_back(random_with_spectral_radius(rng, 4, 0.8));
        x.push_back(random_matrix(rng, 4, 2));
        y.push_back(random_matrix(rng, 4, 2));
    }
    for (auto _ : state) benchmark::DoNotOptimize(pick_ltoa(t, x, y));
}
BENCHMARK(BM_PickLtoa)->Arg(4)->Arg(16)->Arg(32);

static void BM_NcLtoa(benchmark::State& state)
{
    const int d = static_cast<int>(state.range(0));
    Rng rng(3);
    std::vector<OperatorTuple> z;
    std::vector<Mat> x, y;
    for (int i = 0; i < 3; ++i) {
        z.push_back(random_tuple(rng, d, 3, 0.6));
        x.push_back(random_matrix(rng, 3, 2));
        y.push_back(random_matrix(rng, 3, 1));
    }
    for (auto _ : state) benchmark::DoNotOptimize(pick_nc_ltoa(z, x, y));
}
BENCHMARK(BM_NcLtoa)->Arg(1)->Arg(2)->Arg(3);

static void BM_Qltt(benchmark::State& state)
{
    Rng rng(4);
    QlttData d;
    d.g = two_vertex_example();
    d.zdims = GradedSpace{{2, 1}};
    d.ydims = GradedSpace{{1, 2}};
    d.udims = GradedSpace{{1, 1}};
    for (int i = 0; i < state.range(0); ++i) {
        d.z.push_back(random_quiver_point(rng, d.g, d.zdims, PointKind::tensor, 0.5));
        d.x.push_back(random_matrix(rng, 2, 4));
        d.y.push_back(random_matrix(rng, 2, 3));
    }
    for (auto _ : state) benchmark::DoNotOptimize(pick_qltt(d));
}
BENCHMARK(BM_Qltt)->Arg(2)->Arg(4);

static void BM_ChoiPhiDisk(benchmark::State& state)
{
    Rng rng(5);
    std::vector<Mat> z, x, y;
    for (int i = 0; i < state.range(0); ++i) {
        z.push_back(random_with_spectral_radius(rng, 2, 0.6));
        x.push_back(random_matrix(rng, 2, 2));
        y.push_back(random_matrix(rng, 2, 2));
    }
    for (auto _ : state) benchmark::DoNotOptimize(cp_check(build_phi_disk(z, x, y)));
}
BENCHMARK(BM_ChoiPhiDisk)->Arg(2)->Arg(4);

static void BM_AglerBidisk(benchmark::State& state)
{
    AglerProblem p;
    p.variant = AglerVariant::scalar_points;
    p.d = 2;
    p.lambda = {{0.0, 0.0}, {0.5, 0.0}};
    p.f = {0.0, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(solve_feasibility(p));
}
BENCHMARK(BM_AglerBidisk)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
