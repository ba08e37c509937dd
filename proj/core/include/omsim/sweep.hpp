#ifndef OMSIM_SWEEP_HPP
#define OMSIM_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "omsim/measures.hpp"

namespace omsim {

/// Linear axis over a real-valued SystemParams field.
struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int steps = 2;

    void validate() const;
    double value_at(int i) const;
};

/// Resolves a SystemParams field name; throws InvalidParameter for an
/// unknown name.
double SystemParams::* param_field(const std::string& name);

/// One grid point. Unstable (or singular) points carry no report: the
/// measures are absent, not zero.
struct SweepRow {
    double axis1 = 0.0;
    double axis2 = 0.0;  ///< NaN for 1D sweeps
    bool stable = false;
    double margin = 0.0;
    std::optional<FullReport> report;  ///< present iff stable and solved
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<SweepRow> rows;  ///< row-major over axes
};

/// Evaluates the full pipeline (model -> stability -> Lyapunov -> report)
/// on a 1- or 2-axis grid. Rows are emitted in deterministic row-major
/// order; with threads > 1 the grid points are evaluated concurrently but
/// the output ordering is unchanged.
SweepResult sweep(const SystemParams& base, const std::vector<SweepAxis>& axes,
                  int threads = 1);

/// Entanglement predicate floor: E_N above this counts as entangled.
/// Strict positivity would trip on floating-point dust.
inline constexpr double kEntanglementFloor = 1e-6;

/// Bisection on `param` for the boundary of the predicate
/// "E_N(pair) > kEntanglementFloor" (unstable points count as not
/// entangled). Absolute tolerance 1e-4. Throws NoSignChange when the
/// predicate agrees at both bracket ends.
double find_threshold(const SystemParams& base, const std::string& param,
                      double lo, double hi,
                      BipartitionPair pair = BipartitionPair::OpticalMechanical,
                      double tol = 1e-4);

struct RobustnessRecord {
    double J_m;
    std::optional<double> n_th_star;  ///< first grid n_th with E_N = 0; empty if beyond range
};

/// For each J_m value, scans n_th ascending over [n_th_min, n_th_max]
/// and records the first grid value at which the pair's E_N falls to
/// zero (below kEntanglementFloor, or the point destabilizes).
std::vector<RobustnessRecord> robustness_scan(
    const SystemParams& base, double n_th_min, double n_th_max, int steps,
    const std::vector<double>& j_m_values,
    BipartitionPair pair = BipartitionPair::OpticalMechanical);

} // namespace omsim

#endif
