#include "omsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace omsim {

const char* kSweepCsvHeader =
    "axis1,axis2,stable,margin,residual,"
    "nu_minus_om,EN_om,QD_om,"
    "nu_minus_oa,EN_oa,QD_oa,"
    "nu_minus_ma,EN_ma,QD_ma";

std::string format_value(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void write_measures(std::ostream& os, const SweepRow& row) {
    for (const auto pair : kAllPairs) {
        if (row.report) {
            const CorrelationReport& r = (*row.report)[pair];
            os << ',' << format_value(r.nu_minus) << ',' << format_value(r.E_N)
               << ',' << format_value(r.eps_qd);
        } else {
            os << ",NaN,NaN,NaN";
        }
    }
}

} // namespace

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << kSweepCsvHeader << '\n';
    for (const SweepRow& row : result.rows) {
        os << format_value(row.axis1) << ',' << format_value(row.axis2) << ','
           << (row.stable ? 1 : 0) << ',' << format_value(row.margin) << ','
           << format_value(row.report ? row.report->solver_residual : kNaN);
        write_measures(os, row);
        os << '\n';
    }
}

void write_oracle_csv(std::ostream& os, const OracleEstimate& est) {
    os << "i,j,V_emp,std_err\n";
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            os << i << ',' << j << ',' << format_value(est.V_emp(i, j)) << ','
               << format_value(est.std_err(i, j)) << '\n';
        }
    }
}

void write_robustness_csv(std::ostream& os, const std::vector<RobustnessRecord>& recs) {
    os << "J_m,n_th_star\n";
    for (const RobustnessRecord& r : recs) {
        os << format_value(r.J_m) << ',';
        if (r.n_th_star) {
            os << format_value(*r.n_th_star);
        } else {
            os << "beyond_range";
        }
        os << '\n';
    }
}

void write_point_report(std::ostream& os, const SystemParams& p,
                        const StabilityReport& stab, const CovarianceMatrix& cov,
                        const FullReport& report) {
    os << "# steady-state correlation report (rates in units of omega_m; "
          "omega_m/2pi = " << format_value(p.omega_m_over_2pi_hz) << " Hz)\n";
    os << "stable: " << (stab.stable ? "true" : "false") << '\n';
    os << "stability_margin: " << format_value(stab.margin) << '\n';
    os << "lyapunov_residual: " << format_value(cov.residual) << '\n';
    for (const auto pair : kAllPairs) {
        const CorrelationReport& r = report[pair];
        os << pair_name(pair) << ":\n"
           << "  nu_minus: " << format_value(r.nu_minus) << '\n'
           << "  E_N: " << format_value(r.E_N) << '\n'
           << "  eps_QD: " << format_value(r.eps_qd)
           << "  (branch " << (r.branch_used == DiscordBranch::Branch1 ? 1 : 2) << ")\n"
           << "  eps_QD_alt: " << format_value(r.eps_qd_alt)
           << "  (branch " << (r.branch_alt == DiscordBranch::Branch1 ? 1 : 2) << ")\n";
    }
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << contents;
        if (!os.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace omsim
