#ifndef OMSIM_PARAMS_HPP
#define OMSIM_PARAMS_HPP

#include <cmath>
#include <complex>

#include "omsim/errors.hpp"

namespace omsim {

/// Parameters of the effective three-mode model (optical cavity, acoustic
/// mode, mechanical resonator). All rates and detunings are expressed in
/// units of the mechanical frequency omega_m, which is therefore 1.0
/// internally; `omega_m_over_2pi_hz` only records the SI reference value
/// used when reporting results.
struct SystemParams {
    double omega_m = 1.0;        ///< mechanical frequency (normalization unit)
    double kappa = 0.02;         ///< optical decay rate
    double gamma_m = 1e-4;       ///< mechanical decay rate
    double gamma_a = 0.4;        ///< acoustic decay rate
    double delta_tilde = -1.0;   ///< effective optical detuning
    double delta_a = 1.0;        ///< acoustic detuning
    double G_m = 0.15;           ///< effective optomechanical coupling (real)
    double G_a = 0.15;           ///< effective acoustic coupling (real)
    double J_m = 0.0;            ///< phonon hopping rate, >= 0
    double theta = 0.0;          ///< hopping modulation phase [rad]
    double n_th = 100.0;         ///< mechanical thermal occupancy, >= 0

    double omega_m_over_2pi_hz = 1.0e6;  ///< SI reference, reporting only

    /// Throws InvalidParameter on non-finite or sign-violating fields.
    void validate() const;
};

/// Pre-elimination parameters for the mean-field path. The control cavity
/// a2 is eliminated; its steady amplitude sets the acoustic coupling.
struct RawParams {
    double g_m = 1e-4;       ///< single-photon optomechanical coupling
    double g_a = 1e-4;       ///< single-photon acoustic coupling
    double E_1 = 0.0;        ///< drive amplitude on cavity 1, >= 0
    double E_2 = 0.0;        ///< drive amplitude on cavity 2, >= 0
    double delta_1 = -1.0;   ///< bare detuning of cavity 1
    double delta_2 = 1.0;    ///< bare detuning of cavity 2
    double kappa_2 = 0.02;   ///< decay rate of the eliminated cavity, > 0

    // rates shared with SystemParams
    double omega_m = 1.0;
    double omega_a = 1.0;
    double kappa = 0.02;
    double gamma_m = 1e-4;
    double gamma_a = 0.4;
    double delta_a = 1.0;
    double J_m = 0.0;
    double theta = 0.0;
    double n_th = 100.0;

    void validate() const;
};

/// Complex steady-state amplitudes of the classical mean-field equations.
struct MeanFields {
    std::complex<double> alpha_1;  ///< optical cavity 1
    std::complex<double> alpha_2;  ///< eliminated control cavity
    std::complex<double> beta_a;   ///< acoustic mode
    std::complex<double> beta_m;   ///< mechanical mode
    double residual = 0.0;         ///< max-norm residual of the stationary equations
    int iterations = 0;
};

} // namespace omsim

#endif
