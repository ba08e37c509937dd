#ifndef OMSIM_LYAPUNOV_HPP
#define OMSIM_LYAPUNOV_HPP

#include <array>
#include <complex>

#include "omsim/model.hpp"

namespace omsim {

/// Stability threshold in omega_m units: eigenvalue real parts above
/// -kStabilityEps are treated as unstable so that near-marginal points
/// never reach the Lyapunov solver.
inline constexpr double kStabilityEps = 1e-9;

struct StabilityReport {
    bool stable = false;
    double margin = 0.0;  ///< max real part over eigenvalues of A
    std::array<std::complex<double>, 6> eigenvalues{};
};

/// Steady-state covariance matrix with its Lyapunov residual
/// ||A V + V A^T + D||_F.
struct CovarianceMatrix {
    Mat6 V;
    double residual = 0.0;
};

/// Routh-Hurwitz check: stable iff every eigenvalue of A has real part
/// below -kStabilityEps.
StabilityReport check_stability(const Mat6& A);

/// Solves A V + V A^T = -D by vectorizing over the full 6x6 system
/// (36-dimensional Kronecker form, dense direct solve). Preconditions:
/// A stable. Throws UnstableSystem or SingularSystem.
CovarianceMatrix solve_steady_lyapunov(const Mat6& A, const Mat6& D);

/// Minimum eigenvalue of V + (i/2) Omega, with Omega the symplectic form
/// of three modes. Nonnegative (up to tolerance) for physical states.
double physicality_min_eigenvalue(const Mat6& V);

} // namespace omsim

#endif
