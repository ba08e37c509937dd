#ifndef OMSIM_TOOLS_RUN_CONFIG_HPP
#define OMSIM_TOOLS_RUN_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "omsim/model.hpp"
#include "omsim/oracle.hpp"
#include "omsim/sweep.hpp"

namespace omsim::cli {

enum class RunMode { Point, Sweep, Threshold, Robustness, Oracle };

RunMode parse_mode(const std::string& s);
const char* mode_name(RunMode m);

struct ThresholdSpec {
    std::string param;
    double lo = 0.0;
    double hi = 0.0;
};

struct RobustnessSpec {
    double n_th_min = 0.0;
    double n_th_max = 0.0;
    int steps = 2;
    std::vector<double> j_m_values;
};

/// One parsed run. `params` always holds the effective linearized
/// parameters; when the config supplies `raw_params` instead, the mean
/// fields are solved at dispatch time and `raw` records the input.
struct RunConfig {
    RunMode mode = RunMode::Point;
    SystemParams params;
    std::optional<RawParams> raw;
    std::vector<SweepAxis> axes;
    std::optional<ThresholdSpec> threshold;
    std::optional<RobustnessSpec> robustness;
    OracleConfig oracle;
    std::string out;
    BipartitionPair pair = BipartitionPair::OpticalMechanical;
    int threads = 1;
};

/// Parses and validates a config document. Unknown keys anywhere in the
/// document are rejected; each mode requires exactly its own sections.
/// Throws ConfigError or InvalidParameter.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

/// Inverse of parse_config: emits only the sections present, so the echo
/// re-parses to an identical RunConfig.
nlohmann::json to_json(const RunConfig& cfg);

BipartitionPair parse_bipartition(const std::string& s);

/// Dispatches one run. Output goes to `cfg.out` (atomic write) or to
/// stdout when the path is empty. Returns the process exit code:
/// 0 success, 2 validation error, 3 numerical failure.
int run(const RunConfig& cfg);

/// Full CLI entry point (flag parsing + config load + dispatch).
int main_impl(int argc, char** argv);

} // namespace omsim::cli

#endif
