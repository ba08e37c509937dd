#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "run_config.hpp"

namespace omsim::cli {

int main_impl(int argc, char** argv) {
    CLI::App app{"steady-state correlation toolkit for the three-mode "
                 "optomechanical model"};

    std::string config_path;
    std::string out_path;
    std::string bipartition;
    std::uint64_t seed = 0;
    int threads = 0;
    bool print_config = false;

    app.add_option("--config", config_path, "path to a JSON run config")
        ->required();
    app.add_option("--out", out_path, "output path (overrides config)");
    app.add_option("--bipartition", bipartition,
                   "bipartition for threshold/robustness: om|oa|ma");
    auto* seed_opt = app.add_option("--seed", seed, "oracle RNG seed");
    auto* threads_opt = app.add_option("--threads", threads, "worker count");
    app.add_flag("--print-config", print_config,
                 "echo the resolved config as JSON and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: config: cannot open " << config_path << '\n';
            return 2;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        RunConfig cfg = parse_config_text(buf.str());

        if (!out_path.empty()) cfg.out = out_path;
        if (!bipartition.empty()) cfg.pair = parse_bipartition(bipartition);
        if (*seed_opt) cfg.oracle.seed = seed;
        if (*threads_opt) {
            if (threads < 1) throw ConfigError("threads: must be >= 1");
            cfg.threads = threads;
            cfg.oracle.threads = threads;
        }

        if (print_config) {
            std::cout << to_json(cfg).dump(2) << '\n';
            return 0;
        }
        return run(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace omsim::cli

int main(int argc, char** argv) { return omsim::cli::main_impl(argc, argv); }
