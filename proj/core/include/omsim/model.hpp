#ifndef OMSIM_MODEL_HPP
#define OMSIM_MODEL_HPP

#include <Eigen/Core>

#include "omsim/params.hpp"

namespace omsim {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Drift and diffusion matrices of the linearized quadrature dynamics,
/// over the ordering (X_a1, Y_a1, X_ba, Y_ba, X_bm, Y_bm):
/// optical, acoustic, mechanical.
struct LinearModel {
    Mat6 A;  ///< drift matrix
    Mat6 D;  ///< diagonal diffusion matrix
};

/// Full 6x6 drift matrix of the quadrature fluctuation dynamics,
/// including the phase-modulated phonon-hopping blocks that couple the
/// acoustic and mechanical quadratures:
///   acoustic rows / mechanical cols:  J_m * [[ sin t, cos t], [-cos t,  sin t]]
///   mechanical rows / acoustic cols:  J_m * [[-sin t, cos t], [-cos t, -sin t]]
/// With J_m = 0 this reduces to three pairwise-coupled 2x2 blocks driven
/// by delta_tilde, delta_a, omega_m and the couplings G_a, G_m.
Mat6 build_drift_matrix(const SystemParams& p);

/// D = diag[k/2, k/2, ga/2, ga/2, gm(2n_th+1)/2, gm(2n_th+1)/2].
/// The acoustic bath is treated as vacuum.
Mat6 build_diffusion_matrix(const SystemParams& p);

inline LinearModel build_linear_model(const SystemParams& p) {
    return {build_drift_matrix(p), build_diffusion_matrix(p)};
}

struct MeanFieldOptions {
    double damping = 0.5;
    double tol = 1e-12;   ///< relative residual tolerance
    int max_iter = 100000;
};

/// Damped fixed-point iteration for the stationary mean-field amplitudes,
/// starting from the zero state. The control cavity amplitude alpha_2 is
/// taken from its closed form at each step, self-consistently with the
/// mechanical displacement. Throws NonConvergence when the iteration
/// budget is exhausted (bistable or non-stationary operating point).
MeanFields solve_mean_fields(const RawParams& raw,
                             const MeanFieldOptions& opt = {});

/// Effective linearized parameters from converged mean fields:
/// G_m = g_m|alpha_1|, G_a = g_a|alpha_2|,
/// delta_tilde = delta_1 - 2 g_m Re(beta_m).
/// Coupling phases are absorbed; magnitudes make both couplings real.
SystemParams effective_params(const RawParams& raw, const MeanFields& mf);

} // namespace omsim

#endif
