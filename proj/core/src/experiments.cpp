#include "lwa/experiments.hpp"

#include "lwa/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <thread>

namespace lwa {

namespace {

using json = nlohmann::json;

std::vector<double> stepped(double lo, double hi, double step)
{
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = lo + static_cast<double>(i) * step;
    return v;
}

void check(bool ok, const std::string& message)
{
    if (!ok)
        throw ConfigError(message);
}

double as_number(const json& v, const std::string& key)
{
    check(v.is_number(), "config key '" + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t as_count(const json& v, const std::string& key)
{
    check(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0),
          "config key '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

using Setter = std::function<void(ScenarioConfig&, const json&, const std::string&)>;

Setter number(double ScenarioConfig::*field)
{
    return [field](ScenarioConfig& c, const json& v, const std::string& key) { c.*field = as_number(v, key); };
}

Setter bound(double LwaBounds::*field)
{
    return [field](ScenarioConfig& c, const json& v, const std::string& key) { c.bounds.*field = as_number(v, key); };
}

Setter count(std::size_t ScenarioConfig::*field)
{
    return [field](ScenarioConfig& c, const json& v, const std::string& key) {
        c.*field = static_cast<std::size_t>(as_count(v, key));
    };
}

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table{
        {"f_low_hz", number(&ScenarioConfig::f_low_hz)},
        {"f_high_hz", number(&ScenarioConfig::f_high_hz)},
        {"num_subbands", count(&ScenarioConfig::num_subbands)},
        {"num_users", count(&ScenarioConfig::num_users)},
        {"angle_min_deg", number(&ScenarioConfig::angle_min_deg)},
        {"angle_max_deg", number(&ScenarioConfig::angle_max_deg)},
        {"range_min_m", number(&ScenarioConfig::range_min_m)},
        {"range_max_m", number(&ScenarioConfig::range_max_m)},
        {"power", number(&ScenarioConfig::power)},
        {"sigma2", number(&ScenarioConfig::sigma2)},
        {"b_min_m", bound(&LwaBounds::b_min)},
        {"b_max_m", bound(&LwaBounds::b_max)},
        {"L_min_m", bound(&LwaBounds::L_min)},
        {"L_max_m", bound(&LwaBounds::L_max)},
        {"leakage_per_m", number(&ScenarioConfig::leakage_per_m)},
        {"b_points", count(&ScenarioConfig::b_points)},
        {"L_points", count(&ScenarioConfig::L_points)},
        {"max_iterations", count(&ScenarioConfig::max_iterations)},
        {"early_exit",
         [](ScenarioConfig& c, const json& v, const std::string& key) {
             check(v.is_boolean(), "config key '" + key + "' must be true or false");
             c.early_exit = v.get<bool>();
         }},
        {"mimo_elements", count(&ScenarioConfig::mimo_elements)},
        {"mimo_reference_hz", number(&ScenarioConfig::mimo_reference_hz)},
        {"seed", [](ScenarioConfig& c, const json& v, const std::string& key) { c.seed = as_count(v, key); }},
        {"trials", count(&ScenarioConfig::trials)},
        {"snr_db",
         [](ScenarioConfig& c, const json& v, const std::string& key) {
             check(v.is_array(), "config key '" + key + "' must be an array of numbers");
             c.snr_db.clear();
             for (const auto& x : v)
                 c.snr_db.push_back(as_number(x, key));
         }},
        {"map_angle_min_deg", number(&ScenarioConfig::map_angle_min_deg)},
        {"map_angle_max_deg", number(&ScenarioConfig::map_angle_max_deg)},
        {"map_angle_step_deg", number(&ScenarioConfig::map_angle_step_deg)},
        {"map_range_min_m", number(&ScenarioConfig::map_range_min_m)},
        {"map_range_max_m", number(&ScenarioConfig::map_range_max_m)},
        {"map_range_step_m", number(&ScenarioConfig::map_range_step_m)},
        {"map_floor", number(&ScenarioConfig::map_floor)},
    };
    return table;
}

} // namespace

void ScenarioConfig::validate() const
{
    check(f_low_hz > 0.0 && f_high_hz > f_low_hz, "band must satisfy 0 < f_low_hz < f_high_hz");
    check(num_subbands >= 1, "num_subbands must be at least 1");
    check(num_users >= 1, "num_users must be at least 1");
    check(angle_min_deg > 0.0 && angle_min_deg <= angle_max_deg && angle_max_deg <= 90.0,
          "user angles must satisfy 0 < angle_min_deg <= angle_max_deg <= 90");
    check(range_min_m > 0.0 && range_min_m <= range_max_m, "user ranges must satisfy 0 < range_min_m <= range_max_m");
    check(power >= 0.0, "power must be non-negative");
    check(sigma2 > 0.0, "sigma2 must be positive");
    check(bounds.b_min > 0.0 && bounds.b_min <= bounds.b_max, "plate separation bounds must satisfy 0 < b_min <= b_max");
    check(bounds.L_min > 0.0 && bounds.L_min <= bounds.L_max, "slit length bounds must satisfy 0 < L_min <= L_max");
    check(leakage_per_m >= 0.0, "leakage_per_m must be non-negative");
    check(b_points >= 1 && L_points >= 1, "grid point counts must be at least 1");
    check(b_points >= 2 || bounds.b_min == bounds.b_max, "b_points = 1 needs b_min_m == b_max_m");
    check(L_points >= 2 || bounds.L_min == bounds.L_max, "L_points = 1 needs L_min_m == L_max_m");
    check(max_iterations >= 1, "max_iterations must be at least 1");
    check(mimo_elements >= 1, "mimo_elements must be at least 1");
    check(mimo_reference_hz > 0.0, "mimo_reference_hz must be positive");
    check(trials >= 1, "trials must be at least 1");
    check(!snr_db.empty(), "snr_db must list at least one point");
    for (double s : snr_db)
        check(std::isfinite(s), "snr_db entries must be finite");
    check(map_angle_step_deg > 0.0 && map_angle_min_deg <= map_angle_max_deg && map_angle_min_deg >= 0.0 &&
              map_angle_max_deg <= 180.0,
          "map angle grid must satisfy 0 <= min <= max <= 180 with a positive step");
    check(map_range_step_m > 0.0 && map_range_min_m > 0.0 && map_range_min_m <= map_range_max_m,
          "map range grid must satisfy 0 < min <= max with a positive step");
}

FrequencyGrid ScenarioConfig::frequency_grid() const
{
    return FrequencyGrid::uniform_bins(f_low_hz, f_high_hz, num_subbands);
}

SearchGrids ScenarioConfig::search_grids() const
{
    return SearchGrids::uniform(bounds, b_points, L_points);
}

std::vector<double> ScenarioConfig::map_angles_deg() const
{
    return stepped(map_angle_min_deg, map_angle_max_deg, map_angle_step_deg);
}

std::vector<double> ScenarioConfig::map_ranges() const
{
    return stepped(map_range_min_m, map_range_max_m, map_range_step_m);
}

ScenarioConfig parse_scenario_config(std::istream& in)
{
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check(doc.is_object(), "config must be a JSON object of key/value pairs");

    ScenarioConfig config;
    const auto& table = setters();
    for (const auto& [key, value] : doc.items()) {
        const auto it = table.find(key);
        check(it != table.end(), "unknown config key '" + key + "'");
        it->second(config, value, key);
    }
    config.validate();
    return config;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    check(static_cast<bool>(in), "cannot open config file " + path.string());
    return parse_scenario_config(in);
}

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

UserSet sample_users(const ScenarioConfig& config, std::mt19937_64& engine)
{
    std::vector<UserPosition> users(config.num_users);
    for (auto& u : users) {
        const double angle_deg =
            config.angle_min_deg + (config.angle_max_deg - config.angle_min_deg) * uniform01(engine);
        u.angle = deg_to_rad(angle_deg);
        u.range = config.range_min_m + (config.range_max_m - config.range_min_m) * uniform01(engine);
    }
    return UserSet(std::move(users));
}

UserSet sample_users(const ScenarioConfig& config, std::uint64_t trial)
{
    auto engine = trial_engine(config.seed, trial);
    return sample_users(config, engine);
}

Scenario make_scenario(const ScenarioConfig& config, const UserSet& users)
{
    return {config.frequency_grid(), users, PathLossProfile::inverse_range(), config.leakage_per_m};
}

BeampatternExperiment run_beampattern_experiment(const ScenarioConfig& config, const UserSet& users)
{
    config.validate();
    const auto scenario = make_scenario(config, users);
    auto allocation =
        alternate_optimize(config.search_grids(), config.power, scenario, config.noise(), config.optimizer_options());
    const auto angles = config.map_angles_deg();
    const auto ranges = config.map_ranges();
    auto map = beampattern(allocation.config, scenario.grid, allocation.powers, scenario.loss, angles, ranges,
                           config.map_floor);
    return {users, std::move(allocation), std::move(map)};
}

BeampatternExperiment run_beampattern_experiment(const ScenarioConfig& config)
{
    return run_beampattern_experiment(config, sample_users(config, 0));
}

PairedTrial run_paired_trial(const ScenarioConfig& config, const UserSet& users, double power)
{
    const auto scenario = make_scenario(config, users);
    const auto noise = config.noise();
    auto allocation = alternate_optimize(config.search_grids(), power, scenario, noise, config.optimizer_options());

    const auto lwa_channel = build_channel(allocation.config, scenario.grid, users, scenario.loss);
    const auto mimo = normalize_to_lwa(build_mimo_channel(config.mimo_geometry(), scenario.grid, users), lwa_channel);
    const double mimo_rate = mimo_sum_rate(mimo, power, noise);
    const double lwa_rate = allocation.sum_rate;
    return {users, std::move(allocation), lwa_rate, mimo_rate, mimo.normalization_factor()};
}

double power_for_snr_db(const ScenarioConfig& config, double snr_db)
{
    return std::pow(10.0, snr_db / 10.0) * static_cast<double>(config.num_subbands) * config.sigma2;
}

std::pair<double, double> mean_and_stddev(const std::vector<double>& values)
{
    if (values.empty())
        return {0.0, 0.0};
    auto compensated_sum = [](const auto& xs, auto&& f) {
        double sum = 0.0;
        double carry = 0.0;
        for (double x : xs) {
            const double v = f(x);
            const double t = sum + v;
            carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
            sum = t;
        }
        return sum + carry;
    };
    const double n = static_cast<double>(values.size());
    const double mean = compensated_sum(values, [](double x) { return x; }) / n;
    if (values.size() < 2)
        return {mean, 0.0};
    const double ss = compensated_sum(values, [mean](double x) { return (x - mean) * (x - mean); });
    return {mean, std::sqrt(ss / (n - 1.0))};
}

SweepResult run_snr_sweep(const ScenarioConfig& config, const std::vector<double>& snr_points_db, unsigned threads)
{
    config.validate();
    if (snr_points_db.empty())
        throw InvalidArgument("SNR sweep needs at least one point");

    const std::size_t points = snr_points_db.size();
    SweepResult sweep;
    sweep.lwa_rates.assign(points, std::vector<double>(config.trials));
    sweep.mimo_rates.assign(points, std::vector<double>(config.trials));

    auto run_trial = [&](std::size_t t) {
        const auto users = sample_users(config, t);
        for (std::size_t p = 0; p < points; ++p) {
            const auto trial = run_paired_trial(config, users, power_for_snr_db(config, snr_points_db[p]));
            sweep.lwa_rates[p][t] = trial.lwa_rate;
            sweep.mimo_rates[p][t] = trial.mimo_rate;
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(threads, config.trials));
    if (workers <= 1) {
        for (std::size_t t = 0; t < config.trials; ++t)
            run_trial(t);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t t = w; t < config.trials; t += workers)
                            run_trial(t);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
        }
        for (const auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    for (std::size_t p = 0; p < points; ++p) {
        const auto [mean_lwa, std_lwa] = mean_and_stddev(sweep.lwa_rates[p]);
        const auto [mean_mimo, std_mimo] = mean_and_stddev(sweep.mimo_rates[p]);
        sweep.rows.push_back({snr_points_db[p], mean_lwa, std_lwa, mean_mimo, std_mimo, config.trials});
    }
    return sweep;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep)
{
    const auto old_precision = out.precision(9);
    out << "snr_db,mean_lwa,std_lwa,mean_mimo,std_mimo,trials\n";
    for (const auto& r : sweep.rows)
        out << r.snr_db << ',' << r.mean_lwa << ',' << r.std_lwa << ',' << r.mean_mimo << ',' << r.std_mimo << ','
            << r.trials << '\n';
    out.precision(old_precision);
}

void write_users_csv(std::ostream& out, const UserSet& users)
{
    const auto old_precision = out.precision(9);
    out << "user,angle_deg,range_m\n";
    for (std::size_t k = 0; k < users.size(); ++k)
        out << k << ',' << rad_to_deg(users[k].angle) << ',' << users[k].range << '\n';
    out.precision(old_precision);
}

void write_paired_report(std::ostream& out, const PairedTrial& trial, const ScenarioConfig& config)
{
    const auto old_precision = out.precision(12);
    out << "# LWA vs fully digital MIMO, single trial\n";
    out << "seed=" << config.seed << '\n';
    out << "power=" << trial.allocation.powers.budget() << '\n';
    out << "snr_db="
        << 10.0 * std::log10(trial.allocation.powers.budget() / (static_cast<double>(config.num_subbands) * config.sigma2))
        << '\n';
    out << "sigma2=" << config.sigma2 << '\n';
    out << "lwa_b_m=" << trial.allocation.config.plate_separation << '\n';
    out << "lwa_L_m=" << trial.allocation.config.slit_length << '\n';
    out << "lwa_rate_bits=" << trial.lwa_rate << '\n';
    out << "mimo_elements=" << config.mimo_elements << '\n';
    out << "mimo_normalization=" << trial.mimo_normalization << '\n';
    out << "mimo_rate_bits=" << trial.mimo_rate << '\n';
    out << "\n[users]\n";
    out.precision(old_precision);
    write_users_csv(out, trial.users);
}

} // namespace lwa
