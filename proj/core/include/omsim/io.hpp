#ifndef OMSIM_IO_HPP
#define OMSIM_IO_HPP

#include <iosfwd>
#include <string>

#include "omsim/oracle.hpp"
#include "omsim/sweep.hpp"

namespace omsim {

/// Sweep CSV header, fixed schema:
/// axis1,axis2,stable,margin,residual,
/// nu_minus_om,EN_om,QD_om,nu_minus_oa,EN_oa,QD_oa,nu_minus_ma,EN_ma,QD_ma
extern const char* kSweepCsvHeader;

/// Renders a double with 17 significant digits; NaN prints as "NaN".
std::string format_value(double v);

/// LF line endings; measures at unstable points are NaN literals.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

/// Columns: i,j,V_emp,std_err for the 36 entries, row-major.
void write_oracle_csv(std::ostream& os, const OracleEstimate& est);

/// Columns: J_m,n_th_star ("beyond_range" literal when absent).
void write_robustness_csv(std::ostream& os, const std::vector<RobustnessRecord>& recs);

/// Human-readable single-point report.
void write_point_report(std::ostream& os, const SystemParams& p,
                        const StabilityReport& stab, const CovarianceMatrix& cov,
                        const FullReport& report);

/// Writes to a temporary file in the target directory, then renames over
/// the destination, so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& contents);

} // namespace omsim

#endif
