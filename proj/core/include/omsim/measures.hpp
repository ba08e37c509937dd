#ifndef OMSIM_MEASURES_HPP
#define OMSIM_MEASURES_HPP

#include <array>

#include "omsim/lyapunov.hpp"

namespace omsim {

using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat2 = Eigen::Matrix<double, 2, 2>;

enum class BipartitionPair {
    OpticalMechanical,
    OpticalAcoustic,
    MechanicalAcoustic,
};

constexpr std::array<BipartitionPair, 3> kAllPairs = {
    BipartitionPair::OpticalMechanical,
    BipartitionPair::OpticalAcoustic,
    BipartitionPair::MechanicalAcoustic,
};

const char* pair_name(BipartitionPair pair);

/// 4x4 covariance matrix of a two-mode reduction, first mode = first
/// label of the pair. The quadrature vector orders the modes optical,
/// acoustic, mechanical; block extraction maps the pair labels onto
/// that ordering.
struct Bipartition {
    BipartitionPair pair;
    Mat4 chi;
};

Bipartition extract_bipartition(const CovarianceMatrix& cov, BipartitionPair pair);

/// Exchanges the two modes of a bipartite covariance matrix.
Mat4 swap_modes(const Mat4& chi);

/// Determinants of the diagonal blocks, the off-diagonal block, and the
/// full bipartite matrix.
struct Invariants4 {
    double I1, I2, I3, I4;
};

Invariants4 symplectic_invariants(const Mat4& chi);

struct LogNegativity {
    double nu_minus;  ///< smallest partial-transpose symplectic eigenvalue
    double E_N;       ///< max[0, -ln(2 nu_minus)]
};

/// Throws NonPhysicalInput when the inner square-root argument is below
/// -1e-12; arguments within [-1e-12, 0) are clamped to zero.
LogNegativity log_negativity(const Mat4& chi);

enum class DiscordBranch { Branch1, Branch2 };

struct DiscordResult {
    double eps_qd;
    DiscordBranch branch;
};

/// Gaussian quantum discord of the bipartite state chi, with the
/// conditioning measurement applied to the SECOND mode of chi (the mode
/// whose reduced entropy enters as f(sqrt(I2))). The piecewise
/// conditional term follows the asymmetric two-branch form; |I3| below
/// 1e-14 routes to branch 2, where the branch-selection ratio diverges.
/// The measure is asymmetric: apply it to swap_modes(chi) to condition
/// on the first mode instead.
DiscordResult gaussian_discord(const Mat4& chi);

/// f(x) = (x+1/2)ln(x+1/2) - (x-1/2)ln(x-1/2); f(1/2) = 0 by the
/// 0 ln 0 = 0 convention (zero vacuum entropy). Domain x >= 1/2 - 1e-6
/// (clamped to 1/2), otherwise NonPhysicalInput; the loose tolerance
/// absorbs the sqrt amplification of invariant round-off at
/// near-product states.
double entropy_f(double x);

/// Per-bipartition correlation measures. `eps_qd` conditions on the
/// pair's first mode (optical, for the pairs containing it); this is the
/// ordering under which the discord survives thermal noise in this
/// model. `eps_qd_alt` conditions on the second mode.
struct CorrelationReport {
    BipartitionPair pair;
    double nu_minus;
    double E_N;
    double eps_qd;
    DiscordBranch branch_used;
    double eps_qd_alt;
    DiscordBranch branch_alt;
};

CorrelationReport correlation_report(const CovarianceMatrix& cov, BipartitionPair pair);

/// All three bipartitions plus the stability margin and solver residual.
struct FullReport {
    std::array<CorrelationReport, 3> pairs;
    double stability_margin;
    double solver_residual;

    const CorrelationReport& operator[](BipartitionPair p) const {
        return pairs[static_cast<int>(p)];
    }
};

FullReport full_report(const CovarianceMatrix& cov, const StabilityReport& stab);

} // namespace omsim

#endif
