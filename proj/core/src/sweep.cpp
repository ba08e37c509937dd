#include "omsim/sweep.hpp"

#include <cmath>
#include <thread>
#include <unordered_map>

namespace omsim {

void SweepAxis::validate() const {
    param_field(param);  // throws for unknown names
    if (!(min < max)) throw InvalidParameter(param, "axis requires min < max");
    if (steps < 2) throw InvalidParameter(param, "axis requires steps >= 2");
}

double SweepAxis::value_at(int i) const {
    return min + (max - min) * static_cast<double>(i) / (steps - 1);
}

double SystemParams::* param_field(const std::string& name) {
    static const std::unordered_map<std::string, double SystemParams::*> map = {
        {"omega_m", &SystemParams::omega_m},
        {"kappa", &SystemParams::kappa},
        {"gamma_m", &SystemParams::gamma_m},
        {"gamma_a", &SystemParams::gamma_a},
        {"delta_tilde", &SystemParams::delta_tilde},
        {"delta_a", &SystemParams::delta_a},
        {"G_m", &SystemParams::G_m},
        {"G_a", &SystemParams::G_a},
        {"J_m", &SystemParams::J_m},
        {"theta", &SystemParams::theta},
        {"n_th", &SystemParams::n_th},
    };
    const auto it = map.find(name);
    if (it == map.end()) throw InvalidParameter(name, "unknown parameter name");
    return it->second;
}

namespace {

SweepRow evaluate_point(SystemParams p) {
    SweepRow row;
    const Mat6 A = build_drift_matrix(p);
    const StabilityReport stab = check_stability(A);
    row.stable = stab.stable;
    row.margin = stab.margin;
    if (!stab.stable) return row;  // measures stay absent, never zero
    try {
        const CovarianceMatrix cov = solve_steady_lyapunov(A, build_diffusion_matrix(p));
        row.report = full_report(cov, stab);
    } catch (const SingularSystem&) {
        row.stable = false;
    } catch (const NonPhysicalInput&) {
        // Stable point whose measures are undefined under the piecewise
        // discord formula: keep the stability flag, leave measures absent.
    }
    return row;
}

} // namespace

SweepResult sweep(const SystemParams& base, const std::vector<SweepAxis>& axes,
                  int threads) {
    base.validate();
    if (axes.empty() || axes.size() > 2) {
        throw InvalidParameter("axes", "sweep takes 1 or 2 axes");
    }
    for (const auto& ax : axes) ax.validate();

    const int n1 = axes[0].steps;
    const int n2 = axes.size() == 2 ? axes[1].steps : 1;
    const int total = n1 * n2;

    SweepResult result;
    result.axes = axes;
    result.rows.resize(total);

    auto eval_range = [&](int begin, int end) {
        for (int idx = begin; idx < end; ++idx) {
            const int i = idx / n2;
            const int j = idx % n2;
            SystemParams p = base;
            p.*param_field(axes[0].param) = axes[0].value_at(i);
            double a2 = std::numeric_limits<double>::quiet_NaN();
            if (axes.size() == 2) {
                a2 = axes[1].value_at(j);
                p.*param_field(axes[1].param) = a2;
            }
            SweepRow row = evaluate_point(p);
            row.axis1 = axes[0].value_at(i);
            row.axis2 = a2;
            result.rows[idx] = std::move(row);
        }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1 || total < 2 * nthreads) {
        eval_range(0, total);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(total, begin + chunk);
            if (begin < end) pool.emplace_back(eval_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return result;
}

namespace {

bool entangled_at(const SystemParams& base, double SystemParams::* field,
                  double value, BipartitionPair pair) {
    SystemParams p = base;
    p.*field = value;
    const SweepRow row = evaluate_point(p);
    if (!row.report) return false;
    return (*row.report)[pair].E_N > kEntanglementFloor;
}

} // namespace

double find_threshold(const SystemParams& base, const std::string& param,
                      double lo, double hi, BipartitionPair pair, double tol) {
    base.validate();
    auto field = param_field(param);
    if (!(lo < hi)) throw InvalidParameter(param, "bracket requires lo < hi");

    const bool at_lo = entangled_at(base, field, lo, pair);
    const bool at_hi = entangled_at(base, field, hi, pair);
    if (at_lo == at_hi) {
        throw NoSignChange("predicate identical at both bracket ends");
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (entangled_at(base, field, mid, pair) == at_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<RobustnessRecord> robustness_scan(
    const SystemParams& base, double n_th_min, double n_th_max, int steps,
    const std::vector<double>& j_m_values, BipartitionPair pair) {
    base.validate();
    if (!(n_th_min < n_th_max) || steps < 2) {
        throw InvalidParameter("n_th", "scan requires n_th_min < n_th_max, steps >= 2");
    }

    std::vector<RobustnessRecord> records;
    records.reserve(j_m_values.size());
    for (const double jm : j_m_values) {
        RobustnessRecord rec;
        rec.J_m = jm;
        for (int i = 0; i < steps; ++i) {
            const double nth =
                n_th_min + (n_th_max - n_th_min) * static_cast<double>(i) / (steps - 1);
            SystemParams p = base;
            p.J_m = jm;
            p.n_th = nth;
            const SweepRow row = evaluate_point(p);
            const bool entangled =
                row.report && (*row.report)[pair].E_N > kEntanglementFloor;
            if (!entangled) {
                rec.n_th_star = nth;
                break;
            }
        }
        records.push_back(rec);
    }
    return records;
}

} // namespace omsim
