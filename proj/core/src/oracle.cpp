#include "omsim/oracle.hpp"

#include <Eigen/Dense>

#include <gsl/gsl_randist.h>
#include <gsl/gsl_rng.h>

#include <cmath>
#include <memory>
#include <thread>
#include <vector>

namespace omsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct RngDeleter {
    void operator()(gsl_rng* r) const { gsl_rng_free(r); }
};
using RngPtr = std::unique_ptr<gsl_rng, RngDeleter>;

/// Time-averaged second moments of a single trajectory.
Mat6 run_trajectory(const Mat6& stepper, const Vec6& noise_amp,
                    long burn_steps, long sample_steps, std::uint64_t seed) {
    RngPtr rng(gsl_rng_alloc(gsl_rng_mt19937));
    gsl_rng_set(rng.get(), seed);

    double u[6] = {0, 0, 0, 0, 0, 0};
    double M[6][6];
    double s[6];
    for (int i = 0; i < 6; ++i) {
        s[i] = noise_amp[i];
        for (int j = 0; j < 6; ++j) M[i][j] = stepper(i, j);
    }

    auto step = [&]() {
        double v[6];
        for (int i = 0; i < 6; ++i) {
            v[i] = M[i][0] * u[0] + M[i][1] * u[1] + M[i][2] * u[2] +
                   M[i][3] * u[3] + M[i][4] * u[4] + M[i][5] * u[5] +
                   s[i] * gsl_ran_gaussian_ziggurat(rng.get(), 1.0);
        }
        for (int i = 0; i < 6; ++i) u[i] = v[i];
    };

    for (long n = 0; n < burn_steps; ++n) step();

    double acc[6][6] = {};
    for (long n = 0; n < sample_steps; ++n) {
        step();
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) acc[i][j] += u[i] * u[j];
    }

    Mat6 out;
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
            const double v = acc[i][j] / static_cast<double>(sample_steps);
            out(i, j) = v;
            out(j, i) = v;
        }
    return out;
}

} // namespace

OracleEstimate estimate_covariance(const LinearModel& model, const OracleConfig& cfg) {
    if (cfg.n_traj <= 0) throw ConfigError("n_traj must be positive");
    if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(cfg.t_burn > 0.0) || !(cfg.t_sample > 0.0)) {
        throw ConfigError("t_burn and t_sample must be positive");
    }

    const StabilityReport stab = check_stability(model.A);
    if (!stab.stable) throw UnstableSystem("oracle requires a stable drift matrix");

    const double a_norm = model.A.operatorNorm();
    if (cfg.dt * a_norm >= 0.1) {
        throw ConfigError("dt too large: dt*||A|| must stay below 0.1");
    }
    if (cfg.t_burn < 10.0 / std::abs(stab.margin)) {
        throw ConfigError("t_burn shorter than 10/|stability margin|");
    }

    const Mat6 stepper = Mat6::Identity() + cfg.dt * model.A;
    Vec6 noise_amp;
    for (int i = 0; i < 6; ++i) noise_amp[i] = std::sqrt(model.D(i, i) * cfg.dt);

    const long burn_steps = static_cast<long>(std::ceil(cfg.t_burn / cfg.dt));
    const long sample_steps = static_cast<long>(std::ceil(cfg.t_sample / cfg.dt));

    // One result slot per trajectory: the estimate is independent of how
    // trajectories are scheduled across threads.
    std::vector<Mat6> traj_means(cfg.n_traj);
    auto worker = [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            traj_means[k] = run_trajectory(stepper, noise_amp, burn_steps,
                                           sample_steps,
                                           splitmix64(cfg.seed ^ (0x517cc1b7ULL * (k + 1))));
        }
    };

    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        worker(0, cfg.n_traj);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (cfg.n_traj + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(cfg.n_traj, begin + chunk);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Each trajectory's time average is one batch mean.
    Mat6 mean = Mat6::Zero();
    for (const Mat6& m : traj_means) mean += m;
    mean /= static_cast<double>(cfg.n_traj);

    Mat6 var = Mat6::Zero();
    for (const Mat6& m : traj_means) {
        const Mat6 d = m - mean;
        var += d.cwiseProduct(d);
    }
    var /= static_cast<double>(std::max(1, cfg.n_traj - 1));

    OracleEstimate est;
    est.V_emp = mean;
    est.std_err = (var / static_cast<double>(cfg.n_traj)).cwiseSqrt();
    return est;
}

} // namespace omsim
