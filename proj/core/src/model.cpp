#include "omsim/model.hpp"

#include <algorithm>
#include <cmath>

namespace omsim {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidParameter(name, "must be finite");
}

void require_positive(double v, const char* name) {
    require_finite(v, name);
    if (v <= 0.0) throw InvalidParameter(name, "must be > 0");
}

void require_nonnegative(double v, const char* name) {
    require_finite(v, name);
    if (v < 0.0) throw InvalidParameter(name, "must be >= 0");
}

} // namespace

void SystemParams::validate() const {
    require_positive(omega_m, "omega_m");
    require_positive(kappa, "kappa");
    require_positive(gamma_m, "gamma_m");
    require_positive(gamma_a, "gamma_a");
    require_finite(delta_tilde, "delta_tilde");
    require_finite(delta_a, "delta_a");
    require_finite(G_m, "G_m");
    require_finite(G_a, "G_a");
    require_nonnegative(J_m, "J_m");
    require_finite(theta, "theta");
    require_nonnegative(n_th, "n_th");
}

void RawParams::validate() const {
    require_finite(g_m, "g_m");
    require_finite(g_a, "g_a");
    require_nonnegative(E_1, "E_1");
    require_nonnegative(E_2, "E_2");
    require_finite(delta_1, "delta_1");
    require_finite(delta_2, "delta_2");
    require_positive(kappa_2, "kappa_2");
    require_positive(omega_m, "omega_m");
    require_finite(omega_a, "omega_a");
    require_positive(kappa, "kappa");
    require_positive(gamma_m, "gamma_m");
    require_positive(gamma_a, "gamma_a");
    require_finite(delta_a, "delta_a");
    require_nonnegative(J_m, "J_m");
    require_finite(theta, "theta");
    require_nonnegative(n_th, "n_th");
}

Mat6 build_drift_matrix(const SystemParams& p) {
    p.validate();

    const double k2 = p.kappa / 2.0;
    const double ga2 = p.gamma_a / 2.0;
    const double gm2 = p.gamma_m / 2.0;
    const double s = std::sin(p.theta);
    const double c = std::cos(p.theta);
    const double J = p.J_m;

    Mat6 A;
    // optical block and couplings (J_m = 0 part)
    A << -k2,          -p.delta_tilde, 0.0,         -p.G_a,      0.0,         0.0,
         p.delta_tilde, -k2,           p.G_a,        0.0,        2.0 * p.G_m, 0.0,
         0.0,          -p.G_a,        -ga2,          p.delta_a,  J * s,       J * c,
         p.G_a,         0.0,          -p.delta_a,   -ga2,       -J * c,       J * s,
         0.0,           0.0,          -J * s,        J * c,     -gm2,         p.omega_m,
         2.0 * p.G_m,   0.0,          -J * c,       -J * s,     -p.omega_m,  -gm2;
    return A;
}

Mat6 build_diffusion_matrix(const SystemParams& p) {
    p.validate();
    Vec6 d;
    const double mech = (p.gamma_m / 2.0) * (2.0 * p.n_th + 1.0);
    d << p.kappa / 2.0, p.kappa / 2.0, p.gamma_a / 2.0, p.gamma_a / 2.0, mech, mech;
    return d.asDiagonal();
}

namespace {

using cplx = std::complex<double>;

struct MeanState {
    cplx alpha_1{0.0, 0.0};
    cplx beta_a{0.0, 0.0};
    cplx beta_m{0.0, 0.0};
};

cplx control_amplitude(const RawParams& raw, const MeanState& s) {
    const double delta_2_shift = raw.delta_2 + 2.0 * raw.g_m * s.beta_m.real();
    return -raw.E_2 / (cplx(0.0, delta_2_shift) - raw.kappa_2 / 2.0);
}

/// Time derivatives of the classical amplitudes, with alpha_2 eliminated.
std::array<cplx, 3> mean_field_rhs(const RawParams& raw, const MeanState& s) {
    const cplx i(0.0, 1.0);
    const double delta_1_eff = raw.delta_1 - 2.0 * raw.g_m * s.beta_m.real();
    const double G_a = raw.g_a * std::abs(control_amplitude(raw, s));
    const cplx hop = raw.J_m * std::exp(i * raw.theta);

    const cplx da = (i * delta_1_eff - raw.kappa / 2.0) * s.alpha_1 +
                    i * G_a * s.beta_a + raw.E_1;
    const cplx db_a = -(raw.gamma_a / 2.0 + i * raw.delta_a) * s.beta_a -
                      i * hop * s.beta_m + i * G_a * s.alpha_1;
    const cplx db_m = -(raw.gamma_m / 2.0 + i * raw.omega_m) * s.beta_m -
                      i * std::conj(hop) * s.beta_a +
                      i * raw.g_m * std::norm(s.alpha_1);
    return {da, db_a, db_m};
}

double max_abs(const std::array<cplx, 3>& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

} // namespace

MeanFields solve_mean_fields(const RawParams& raw, const MeanFieldOptions& opt) {
    raw.validate();

    const cplx i(0.0, 1.0);
    MeanState s{};
    double residual = 0.0;

    for (int it = 0; it < opt.max_iter; ++it) {
        const double delta_1_eff = raw.delta_1 - 2.0 * raw.g_m * s.beta_m.real();
        const double G_a = raw.g_a * std::abs(control_amplitude(raw, s));
        const cplx hop = raw.J_m * std::exp(i * raw.theta);

        // Gauss-Seidel sweep of the stationarity conditions, damped.
        MeanState n = s;
        n.alpha_1 = (raw.E_1 + i * G_a * s.beta_a) /
                    (raw.kappa / 2.0 - i * delta_1_eff);
        n.beta_a = (-i * hop * s.beta_m + i * G_a * n.alpha_1) /
                   (raw.gamma_a / 2.0 + i * raw.delta_a);
        n.beta_m = (-i * std::conj(hop) * n.beta_a + i * raw.g_m * std::norm(n.alpha_1)) /
                   (raw.gamma_m / 2.0 + i * raw.omega_m);

        s.alpha_1 = (1.0 - opt.damping) * s.alpha_1 + opt.damping * n.alpha_1;
        s.beta_a = (1.0 - opt.damping) * s.beta_a + opt.damping * n.beta_a;
        s.beta_m = (1.0 - opt.damping) * s.beta_m + opt.damping * n.beta_m;

        residual = max_abs(mean_field_rhs(raw, s));
        const double scale = std::max(
            {1.0, std::abs(s.alpha_1), std::abs(s.beta_a), std::abs(s.beta_m)});
        if (residual <= opt.tol * scale) {
            MeanFields mf;
            mf.alpha_1 = s.alpha_1;
            mf.alpha_2 = control_amplitude(raw, s);
            mf.beta_a = s.beta_a;
            mf.beta_m = s.beta_m;
            mf.residual = residual;
            mf.iterations = it + 1;
            return mf;
        }
    }
    throw NonConvergence("mean-field iteration did not converge", residual);
}

SystemParams effective_params(const RawParams& raw, const MeanFields& mf) {
    SystemParams p;
    p.omega_m = raw.omega_m;
    p.kappa = raw.kappa;
    p.gamma_m = raw.gamma_m;
    p.gamma_a = raw.gamma_a;
    p.delta_a = raw.delta_a;
    p.J_m = raw.J_m;
    p.theta = raw.theta;
    p.n_th = raw.n_th;
    p.G_m = raw.g_m * std::abs(mf.alpha_1);
    p.G_a = raw.g_a * std::abs(mf.alpha_2);
    p.delta_tilde = raw.delta_1 - 2.0 * raw.g_m * mf.beta_m.real();
    return p;
}

} // namespace omsim
