#ifndef OMSIM_ORACLE_HPP
#define OMSIM_ORACLE_HPP

#include <cstdint>

#include "omsim/lyapunov.hpp"

namespace omsim {

/// Monte Carlo estimation of the stationary covariance by Euler-Maruyama
/// integration of the linear Langevin dynamics
///     du = A u dt + sqrt(D_ii dt) xi_i
/// with independent standard normal increments. For a linear system a
/// classical SDE with these symmetric noise statistics reproduces the
/// symmetrized covariance dynamics dV/dt = A V + V A^T + D exactly, so
/// the empirical stationary covariance is an implementation-independent
/// check on the Lyapunov solution (up to O(dt) discretization bias).
struct OracleConfig {
    int n_traj = 2000;
    double dt = 0.002;       ///< timestep, units of 1/omega_m
    double t_burn = 250.0;   ///< burn-in window, must cover 10/|margin|
    double t_sample = 100.0;
    std::uint64_t seed = 42;
    int threads = 1;
};

struct OracleEstimate {
    Mat6 V_emp;    ///< time-and-ensemble averaged second moments
    Mat6 std_err;  ///< batch-means standard error (one batch per trajectory)
};

/// Validates cfg against the model (dt ||A|| < 0.1, t_burn >= 10/|margin|)
/// and integrates n_traj trajectories from the origin. The random stream
/// is seed-split per trajectory index, so the estimate is bit-identical
/// for a given (seed, config) regardless of thread count.
/// Throws UnstableSystem or ConfigError.
OracleEstimate estimate_covariance(const LinearModel& model, const OracleConfig& cfg);

} // namespace omsim

#endif
