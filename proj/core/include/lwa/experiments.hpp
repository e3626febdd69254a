#pragma once

#include "lwa/channel.hpp"
#include "lwa/mimo.hpp"
#include "lwa/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace lwa {

/// Everything needed to reproduce a Monte-Carlo study. Defaults describe a
/// 200-800 GHz band split into 40 subbands serving 4 users.
struct ScenarioConfig {
    double f_low_hz = 200e9;
    double f_high_hz = 800e9;
    std::size_t num_subbands = 40;
    std::size_t num_users = 4;
    double angle_min_deg = 10.0;
    double angle_max_deg = 55.0;
    double range_min_m = 10.0;
    double range_max_m = 20.0;
    double power = 10.0;
    double sigma2 = 1.0;
    LwaBounds bounds{};
    double leakage_per_m = 0.0;
    std::size_t b_points = 21;
    std::size_t L_points = 21;
    std::size_t max_iterations = 10;
    bool early_exit = true;
    std::size_t mimo_elements = 8;
    double mimo_reference_hz = 500e9;
    std::uint64_t seed = 20240101;
    std::size_t trials = 20;
    std::vector<double> snr_db{-10, -5, 0, 5, 10, 15, 20, 25, 30};
    double map_angle_min_deg = 0.0;
    double map_angle_max_deg = 90.0;
    double map_angle_step_deg = 0.25;
    double map_range_min_m = 5.0;
    double map_range_max_m = 25.0;
    double map_range_step_m = 0.25;
    double map_floor = kBeampatternFloor;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;

    FrequencyGrid frequency_grid() const;
    SearchGrids search_grids() const;
    NoiseModel noise() const { return {sigma2}; }
    OptimizerOptions optimizer_options() const { return {max_iterations, early_exit}; }
    UlaGeometry mimo_geometry() const { return {mimo_elements, mimo_reference_hz}; }
    std::vector<double> map_angles_deg() const;
    std::vector<double> map_ranges() const;
};

/// Parses a flat JSON object whose keys are the ScenarioConfig field names
/// (bounds as b_min_m, b_max_m, L_min_m, L_max_m). Missing keys keep their
/// defaults; unknown keys and wrongly typed values throw ConfigError.
ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// Independent generator for one trial. The stream depends only on (seed,
/// trial), so changing the trial count leaves earlier trials untouched.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& engine);

/// K users with angle and range drawn uniformly from the configured boxes.
UserSet sample_users(const ScenarioConfig& config, std::mt19937_64& engine);
UserSet sample_users(const ScenarioConfig& config, std::uint64_t trial);

Scenario make_scenario(const ScenarioConfig& config, const UserSet& users);

struct BeampatternExperiment {
    UserSet users;
    AllocationResult allocation;
    BeampatternMap map;
};

/// Draws the users of trial 0, optimizes the antenna for them and maps the
/// radiated energy of the optimized configuration.
BeampatternExperiment run_beampattern_experiment(const ScenarioConfig& config);
BeampatternExperiment run_beampattern_experiment(const ScenarioConfig& config, const UserSet& users);

struct PairedTrial {
    UserSet users;
    AllocationResult allocation;
    double lwa_rate;
    double mimo_rate;
    double mimo_normalization;
};

/// One Monte-Carlo draw: optimize the LWA, then evaluate the max-tap
/// normalized MIMO baseline on the same users, power and noise.
PairedTrial run_paired_trial(const ScenarioConfig& config, const UserSet& users, double power);

/// Transmit power that gives the average SNR P / (N sigma^2).
double power_for_snr_db(const ScenarioConfig& config, double snr_db);

struct SweepRow {
    double snr_db;
    double mean_lwa;
    double std_lwa;
    double mean_mimo;
    double std_mimo;
    std::size_t trials;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    /// Per-point, per-trial rates; [point][trial].
    std::vector<std::vector<double>> lwa_rates;
    std::vector<std::vector<double>> mimo_rates;
};

/// Sum rate of both systems versus SNR. Trial t uses the same users at every
/// SNR point. Trials run concurrently on up to `threads` workers (0 = all
/// hardware threads); results do not depend on the thread count.
SweepResult run_snr_sweep(const ScenarioConfig& config, const std::vector<double>& snr_points_db,
                          unsigned threads = 0);

void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
void write_users_csv(std::ostream& out, const UserSet& users);
void write_paired_report(std::ostream& out, const PairedTrial& trial, const ScenarioConfig& config);

/// Mean with Neumaier-compensated summation and the sample standard deviation
/// (0 for a single value).
std::pair<double, double> mean_and_stddev(const std::vector<double>& values);

} // namespace lwa
