// Density sweep driver: reads a scenario file, runs every scheme x count cell
// and writes one CSV row per cell.

#include <CLI11.hpp>

#include <iostream>

#include "femto/sweep.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Femtocell frequency-allocation sweep"};
    std::string config_path, out_path, schemes, counts;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<unsigned> threads;
    bool print_defaults = false, quiet = false;

    app.add_option("--config", config_path, "scenario file (key = value lines)");
    app.add_option("--out", out_path, "CSV output path");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--schemes", schemes, "comma-separated: shared,dedicated,subband,static,dynamic");
    app.add_option("--counts", counts, "comma-separated femtocell counts");
    app.add_option("--trials", trials, "Monte Carlo trials per cell");
    app.add_option("--threads", threads, "worker threads (0: all cores)");
    app.add_flag("--print-defaults", print_defaults, "print the default scenario file and exit");
    app.add_flag("-q,--quiet", quiet, "suppress the summary on stdout");
    CLI11_PARSE(app, argc, argv);

    try {
        if (print_defaults) {
            std::cout << femto::format_config(femto::ScenarioConfig{});
            return 0;
        }
        if (out_path.empty()) throw std::runtime_error("--out is required");

        femto::ScenarioConfig config = config_path.empty() ? femto::ScenarioConfig{} : femto::load_config(config_path);
        if (seed) config.seed = *seed;
        if (!schemes.empty()) femto::set_config_value(config, "schemes", schemes);
        if (!counts.empty()) femto::set_config_value(config, "counts", counts);
        if (trials) config.trials = *trials;
        if (threads) config.threads = *threads;
        config.validate();

        const femto::SweepResult result = femto::run_sweep(config);
        femto::emit_csv(result, out_path);
        if (!quiet) std::cout << femto::emit_summary(result, config.dense_threshold);
    } catch (const std::exception& e) {
        std::cerr << "simulate: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
