#include "omsim/measures.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace omsim {

namespace {

constexpr double kClampTol = 1e-12;
constexpr double kZeroOffBlock = 1e-14;

// Symplectic eigenvalues come out of a square root of a difference of
// invariant products; at (near-)product states the cancellation noise of
// order eps_machine * scale^2 is amplified to sqrt-level, so the entropy
// domain check must be looser than the invariant-level clamps.
constexpr double kEntropyDomainTol = 1e-6;

/// Row offsets in the 6x6 covariance for (first, second) mode of a pair.
/// The quadrature ordering is optical(0:2), acoustic(2:4), mechanical(4:6).
std::pair<int, int> block_offsets(BipartitionPair pair) {
    switch (pair) {
        case BipartitionPair::OpticalMechanical: return {0, 4};
        case BipartitionPair::OpticalAcoustic: return {0, 2};
        case BipartitionPair::MechanicalAcoustic: return {4, 2};
    }
    throw InvalidParameter("pair", "unknown bipartition");
}

} // namespace

const char* pair_name(BipartitionPair pair) {
    switch (pair) {
        case BipartitionPair::OpticalMechanical: return "optical-mechanical";
        case BipartitionPair::OpticalAcoustic: return "optical-acoustic";
        case BipartitionPair::MechanicalAcoustic: return "mechanical-acoustic";
    }
    return "?";
}

Bipartition extract_bipartition(const CovarianceMatrix& cov, BipartitionPair pair) {
    const auto [i0, j0] = block_offsets(pair);
    Bipartition bp;
    bp.pair = pair;
    bp.chi.block<2, 2>(0, 0) = cov.V.block<2, 2>(i0, i0);
    bp.chi.block<2, 2>(0, 2) = cov.V.block<2, 2>(i0, j0);
    bp.chi.block<2, 2>(2, 0) = cov.V.block<2, 2>(j0, i0);
    bp.chi.block<2, 2>(2, 2) = cov.V.block<2, 2>(j0, j0);
    return bp;
}

Mat4 swap_modes(const Mat4& chi) {
    Mat4 out;
    out.block<2, 2>(0, 0) = chi.block<2, 2>(2, 2);
    out.block<2, 2>(2, 2) = chi.block<2, 2>(0, 0);
    out.block<2, 2>(0, 2) = chi.block<2, 2>(2, 0);
    out.block<2, 2>(2, 0) = chi.block<2, 2>(0, 2);
    return out;
}

Invariants4 symplectic_invariants(const Mat4& chi) {
    Invariants4 inv;
    inv.I1 = chi.block<2, 2>(0, 0).determinant();
    inv.I2 = chi.block<2, 2>(2, 2).determinant();
    inv.I3 = chi.block<2, 2>(0, 2).determinant();
    inv.I4 = chi.determinant();
    return inv;
}

LogNegativity log_negativity(const Mat4& chi) {
    const Invariants4 inv = symplectic_invariants(chi);
    const double delta = inv.I1 + inv.I2 - 2.0 * inv.I3;
    double arg = delta * delta - 4.0 * inv.I4;
    if (arg < -kClampTol) {
        throw NonPhysicalInput("partial-transpose discriminant is negative");
    }
    arg = std::max(arg, 0.0);
    double inner = delta - std::sqrt(arg);
    inner = std::max(inner, 0.0);

    LogNegativity ln;
    ln.nu_minus = std::sqrt(inner / 2.0);
    ln.E_N = (ln.nu_minus > 0.0) ? std::max(0.0, -std::log(2.0 * ln.nu_minus))
                                 : std::numeric_limits<double>::infinity();
    return ln;
}

double entropy_f(double x) {
    if (x < 0.5 - kEntropyDomainTol) {
        throw NonPhysicalInput("entropy function argument below 1/2");
    }
    x = std::max(x, 0.5);
    const double a = x + 0.5;
    const double b = std::max(x - 0.5, 0.0);
    const double bterm = (b > 0.0) ? b * std::log(b) : 0.0;  // 0 ln 0 = 0
    return a * std::log(a) - bterm;
}

DiscordResult gaussian_discord(const Mat4& chi) {
    const Invariants4 inv = symplectic_invariants(chi);
    const double I1 = inv.I1, I2 = inv.I2, I3 = inv.I3, I4 = inv.I4;

    const double delta = I1 + I2 + 2.0 * I3;
    double disc = delta * delta - 4.0 * I4;
    if (disc < -kClampTol) {
        throw NonPhysicalInput("symplectic discriminant is negative");
    }
    disc = std::max(disc, 0.0);
    const double root = std::sqrt(disc);
    const double eta_minus = std::sqrt(std::max(delta - root, 0.0) / 2.0);
    const double eta_plus = std::sqrt((delta + root) / 2.0);

    DiscordResult res;
    bool branch1 = false;
    if (std::abs(I3) >= kZeroOffBlock) {
        // The selection ratio diverges as I3 -> 0; that limit routes to
        // the second branch.
        const double ratio = 4.0 * (I1 * I2 - I4) * (I1 * I2 - I4) /
                             ((I2 + 4.0 * I4) * (1.0 + 4.0 * I1) * I3 * I3);
        branch1 = ratio <= 1.0;
    }

    double eps;
    if (branch1) {
        const double inner = 4.0 * I3 * I3 + (4.0 * I1 - 1.0) * (4.0 * I4 - I2);
        const double num = 2.0 * std::abs(I3) + std::sqrt(std::max(inner, 0.0));
        const double frac = num / (4.0 * I1 - 1.0);
        eps = frac * frac;
        res.branch = DiscordBranch::Branch1;
    } else {
        const double t = I1 * I2 + I4 - I3 * I3;
        const double inner = t * t - 4.0 * I1 * I2 * I4;
        eps = (t - std::sqrt(std::max(inner, 0.0))) / (2.0 * I1);
        res.branch = DiscordBranch::Branch2;
    }

    res.eps_qd = entropy_f(std::sqrt(I2)) - entropy_f(eta_minus) -
                 entropy_f(eta_plus) + entropy_f(std::sqrt(eps));
    return res;
}

CorrelationReport correlation_report(const CovarianceMatrix& cov, BipartitionPair pair) {
    const Bipartition bp = extract_bipartition(cov, pair);
    const LogNegativity ln = log_negativity(bp.chi);
    // Conditioning on the pair's first mode means that mode must sit in
    // the second slot of the formula's input.
    const DiscordResult qd = gaussian_discord(swap_modes(bp.chi));
    const DiscordResult qd_alt = gaussian_discord(bp.chi);

    CorrelationReport rep;
    rep.pair = pair;
    rep.nu_minus = ln.nu_minus;
    rep.E_N = ln.E_N;
    rep.eps_qd = qd.eps_qd;
    rep.branch_used = qd.branch;
    rep.eps_qd_alt = qd_alt.eps_qd;
    rep.branch_alt = qd_alt.branch;
    return rep;
}

FullReport full_report(const CovarianceMatrix& cov, const StabilityReport& stab) {
    FullReport rep;
    for (int i = 0; i < 3; ++i) {
        rep.pairs[i] = correlation_report(cov, kAllPairs[i]);
    }
    rep.stability_margin = stab.margin;
    rep.solver_residual = cov.residual;
    return rep;
}

} // namespace omsim
