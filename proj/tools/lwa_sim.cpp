// lwa-sim: command line front end for the leaky-wave antenna experiments.
//
//   lwa-sim optimize     --config cfg.json --out results/
//   lwa-sim beampattern  --seed 7
//   lwa-sim sweep-snr    --trials 20
//   lwa-sim compare-mimo --trial 3 --snr-db 10
//
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

#include "lwa/errors.hpp"
#include "lwa/experiments.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::string out_dir = ".";
    bool quiet = false;
};

lwa::ScenarioConfig resolve_config(const CommonOptions& opts)
{
    lwa::ScenarioConfig config = opts.config_path.empty() ? lwa::ScenarioConfig{}
                                                          : lwa::load_scenario_config(opts.config_path);
    if (opts.seed)
        config.seed = *opts.seed;
    if (opts.trials)
        config.trials = *opts.trials;
    config.validate();
    return config;
}

std::ofstream open_output(const CommonOptions& opts, const std::string& name)
{
    fs::create_directories(opts.out_dir);
    const auto path = fs::path(opts.out_dir) / name;
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

int run_optimize(const CommonOptions& opts, std::size_t trial)
{
    const auto config = resolve_config(opts);
    const auto users = lwa::sample_users(config, trial);
    const auto scenario = lwa::make_scenario(config, users);
    const auto result = lwa::alternate_optimize(config.search_grids(), config.power, scenario, config.noise(),
                                                config.optimizer_options());
    {
        auto out = open_output(opts, "allocation_report.txt");
        lwa::write_allocation_report(out, result, scenario.grid);
    }
    {
        auto out = open_output(opts, "trace.csv");
        lwa::write_trace_csv(out, result.trace);
    }
    {
        auto out = open_output(opts, "users.csv");
        lwa::write_users_csv(out, users);
    }
    if (!opts.quiet)
        std::cout << "b = " << result.config.plate_separation * 1e3 << " mm, L = " << result.config.slit_length * 1e3
                  << " mm, sum rate = " << result.sum_rate << " bits/channel use after " << result.trace.size()
                  << " iteration(s)\n";
    return 0;
}

int run_beampattern(const CommonOptions& opts)
{
    const auto config = resolve_config(opts);
    const auto experiment = lwa::run_beampattern_experiment(config);
    {
        auto out = open_output(opts, "beampattern.csv");
        lwa::write_beampattern_csv(out, experiment.map);
    }
    {
        auto out = open_output(opts, "users.csv");
        lwa::write_users_csv(out, experiment.users);
    }
    {
        auto out = open_output(opts, "allocation_report.txt");
        lwa::write_allocation_report(out, experiment.allocation, config.frequency_grid());
    }
    if (!opts.quiet)
        std::cout << "wrote " << experiment.map.values.size() << " map points to "
                  << (fs::path(opts.out_dir) / "beampattern.csv").string() << '\n';
    return 0;
}

int run_sweep(const CommonOptions& opts, const std::vector<double>& snr_override, unsigned threads)
{
    auto config = resolve_config(opts);
    if (!snr_override.empty())
        config.snr_db = snr_override;
    const auto sweep = lwa::run_snr_sweep(config, config.snr_db, threads);
    {
        auto out = open_output(opts, "sweep.csv");
        lwa::write_sweep_csv(out, sweep);
    }
    if (!opts.quiet)
        lwa::write_sweep_csv(std::cout, sweep);
    return 0;
}

int run_compare(const CommonOptions& opts, std::size_t trial, std::optional<double> snr_db)
{
    const auto config = resolve_config(opts);
    const double power = snr_db ? lwa::power_for_snr_db(config, *snr_db) : config.power;
    const auto paired = lwa::run_paired_trial(config, lwa::sample_users(config, trial), power);
    {
        auto out = open_output(opts, "compare_mimo.txt");
        lwa::write_paired_report(out, paired, config);
    }
    if (!opts.quiet)
        lwa::write_paired_report(std::cout, paired, config);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Leaky-wave antenna THz downlink simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    app.add_option("--config", opts.config_path, "Scenario config (flat JSON object)")->check(CLI::ExistingFile);
    app.add_option("--seed", opts.seed, "Override the RNG seed");
    app.add_option("--trials", opts.trials, "Override the Monte-Carlo trial count");
    app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    app.add_flag("--quiet", opts.quiet, "Suppress console output");

    std::size_t trial = 0;
    std::optional<double> snr_db;
    std::vector<double> snr_points;
    unsigned threads = 0;

    auto* optimize = app.add_subcommand("optimize", "Optimize one scenario and write the allocation report");
    optimize->add_option("--trial", trial, "Trial index whose user draw is used");

    app.add_subcommand("beampattern", "Optimize one scenario and export its radiated energy map");

    auto* sweep = app.add_subcommand("sweep-snr", "Monte-Carlo LWA vs MIMO sum rate versus SNR");
    sweep->add_option("--snr", snr_points, "SNR points in dB (overrides the config)");
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* compare = app.add_subcommand("compare-mimo", "Single paired LWA / MIMO trial");
    compare->add_option("--trial", trial, "Trial index whose user draw is used");
    compare->add_option("--snr-db", snr_db, "Average SNR in dB (default: power from the config)");

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*optimize)
            return run_optimize(opts, trial);
        if (*sweep)
            return run_sweep(opts, snr_points, threads);
        if (*compare)
            return run_compare(opts, trial, snr_db);
        return run_beampattern(opts);
    } catch (const lwa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lwa::InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lwa::AllGainsZero& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const lwa::ZeroChannel& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const lwa::CutoffViolation& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
