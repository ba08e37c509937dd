#include <benchmark/benchmark.h>

#include <cmath>

#include "omsim/measures.hpp"
#include "omsim/oracle.hpp"
#include "omsim/sweep.hpp"

using namespace omsim;

namespace {

SystemParams bench_point() {
    SystemParams p;
    p.G_a = 0.2;
    p.G_m = 0.2;
    p.J_m = 0.2;
    p.theta = M_PI / 2.0;
    return p;
}

void BM_BuildDrift(benchmark::State& state) {
    const SystemParams p = bench_point();
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_drift_matrix(p));
    }
}
BENCHMARK(BM_BuildDrift);

void BM_LyapunovSolve(benchmark::State& state) {
    const LinearModel m = build_linear_model(bench_point());
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_steady_lyapunov(m.A, m.D));
    }
}
BENCHMARK(BM_LyapunovSolve);

void BM_FullReport(benchmark::State& state) {
    const LinearModel m = build_linear_model(bench_point());
    const StabilityReport stab = check_stability(m.A);
    const CovarianceMatrix cov = solve_steady_lyapunov(m.A, m.D);
    for (auto _ : state) {
        benchmark::DoNotOptimize(full_report(cov, stab));
    }
}
BENCHMARK(BM_FullReport);

void BM_PointPipeline(benchmark::State& state) {
    const SystemParams p = bench_point();
    for (auto _ : state) {
        const LinearModel m = build_linear_model(p);
        const StabilityReport stab = check_stability(m.A);
        const CovarianceMatrix cov = solve_steady_lyapunov(m.A, m.D);
        benchmark::DoNotOptimize(full_report(cov, stab));
    }
}
BENCHMARK(BM_PointPipeline);

void BM_OracleSteps(benchmark::State& state) {
    SystemParams p = bench_point();
    p.kappa = 0.2;
    p.gamma_m = 0.2;  // fast relaxation keeps the burn-in short
    const LinearModel m = build_linear_model(p);
    OracleConfig cfg;
    cfg.n_traj = static_cast<int>(state.range(0));
    cfg.dt = 0.01;
    cfg.t_burn = 120.0;
    cfg.t_sample = 20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_covariance(m, cfg));
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_traj *
                            static_cast<long>((cfg.t_burn + cfg.t_sample) / cfg.dt));
}
BENCHMARK(BM_OracleSteps)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
