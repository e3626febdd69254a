#include "lwa/optimizer.hpp"

#include "lwa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace lwa {

namespace {

constexpr int kMaxBisections = 200;
constexpr double kBudgetTolerance = 1e-12;

std::vector<double> linspace(double lo, double hi, std::size_t count)
{
    if (count == 0)
        throw InvalidArgument("search grid needs at least one point");
    if (count == 1) {
        if (lo != hi)
            throw InvalidArgument("a single-point grid needs a degenerate interval");
        return {lo};
    }
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = std::lerp(lo, hi, static_cast<double>(i) / static_cast<double>(count - 1));
    v.back() = hi;
    return v;
}

void require_increasing(const std::vector<double>& v, const char* what)
{
    if (v.empty())
        throw InvalidArgument(std::string(what) + " grid must be non-empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0))
            throw InvalidArgument(std::string(what) + " grid values must be positive");
        if (i > 0 && !(v[i] > v[i - 1]))
            throw InvalidArgument(std::string(what) + " grid must be strictly increasing");
    }
}

} // namespace

PowerAllocation waterfill(std::span<const double> gains_squared, double budget, const NoiseModel& noise)
{
    noise.validate();
    if (gains_squared.empty())
        throw InvalidArgument("waterfilling needs at least one channel");
    if (!(budget >= 0.0))
        throw InvalidArgument("power budget must be non-negative");
    for (double g : gains_squared)
        if (!(g >= 0.0))
            throw InvalidArgument("squared gains must be non-negative");

    std::vector<double> powers(gains_squared.size(), 0.0);
    if (budget == 0.0)
        return PowerAllocation(std::move(powers), budget);

    // Inverse channel quality sigma^2 / g_n; infinite for dead channels.
    std::vector<double> floor_level(gains_squared.size());
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < gains_squared.size(); ++n) {
        floor_level[n] = gains_squared[n] > 0.0 ? noise.variance / gains_squared[n]
                                                : std::numeric_limits<double>::infinity();
        lowest = std::min(lowest, floor_level[n]);
    }
    if (!std::isfinite(lowest))
        throw AllGainsZero();

    auto poured = [&](double level) {
        double total = 0.0;
        for (double f : floor_level)
            if (level > f)
                total += level - f;
        return total;
    };

    // poured(lowest) = 0 and poured(lowest + budget) >= budget.
    double lo = lowest;
    double hi = lowest + budget;
    double level = hi;
    for (int it = 0; it < kMaxBisections; ++it) {
        level = 0.5 * (lo + hi);
        const double total = poured(level);
        if (std::abs(total - budget) <= kBudgetTolerance * budget)
            break;
        (total < budget ? lo : hi) = level;
    }

    for (std::size_t n = 0; n < powers.size(); ++n)
        powers[n] = level > floor_level[n] ? level - floor_level[n] : 0.0;

    // The last bisection step can overshoot by a few ulps of the level.
    const double total = std::accumulate(powers.begin(), powers.end(), 0.0);
    if (total > budget)
        for (double& p : powers)
            p *= budget / total;
    return PowerAllocation(std::move(powers), budget);
}

SearchGrids::SearchGrids(std::vector<double> b_values, std::vector<double> L_values)
    : b_(std::move(b_values)), L_(std::move(L_values))
{
    require_increasing(b_, "plate separation");
    require_increasing(L_, "slit length");
}

SearchGrids SearchGrids::uniform(const LwaBounds& bounds, std::size_t b_points, std::size_t L_points)
{
    bounds.validate();
    return SearchGrids(linspace(bounds.b_min, bounds.b_max, b_points), linspace(bounds.L_min, bounds.L_max, L_points));
}

GainTable::GainTable(const SearchGrids& grids, const Scenario& scenario)
    : grids_(grids), leakage_(scenario.leakage), subbands_(scenario.grid.size())
{
    table_.reserve(grids_.size() * subbands_);
    for (std::size_t ib = 0; ib < grids_.b_values().size(); ++ib)
        for (std::size_t iL = 0; iL < grids_.L_values().size(); ++iL) {
            const auto channel = build_channel(config(ib, iL), scenario.grid, scenario.users, scenario.loss);
            const auto g = channel.gains_squared();
            table_.insert(table_.end(), g.begin(), g.end());
        }
}

std::span<const double> GainTable::gains(std::size_t b_index, std::size_t L_index) const
{
    const std::size_t offset = (b_index * grids_.L_values().size() + L_index) * subbands_;
    return std::span(table_).subspan(offset, subbands_);
}

LwaConfig GainTable::config(std::size_t b_index, std::size_t L_index) const
{
    return {grids_.b_values()[b_index], grids_.L_values()[L_index], leakage_};
}

GeometryChoice GainTable::argmax(const PowerAllocation& powers, const NoiseModel& noise) const
{
    if (powers.size() != subbands_)
        throw InvalidArgument("power vector length does not match the frequency grid");
    noise.validate();
    GeometryChoice best;
    bool first = true;
    // Row-major scan with a strict comparison keeps the smallest (b, L) on ties.
    for (std::size_t ib = 0; ib < grids_.b_values().size(); ++ib)
        for (std::size_t iL = 0; iL < grids_.L_values().size(); ++iL) {
            const double rate = average_sum_rate(gains(ib, iL), powers.powers(), noise);
            if (first || rate > best.rate) {
                best = {ib, iL, config(ib, iL), rate};
                first = false;
            }
        }
    return best;
}

GeometryChoice grid_search_geometry(const SearchGrids& grids, const PowerAllocation& fixed_powers,
                                    const Scenario& scenario, const NoiseModel& noise)
{
    return GainTable(grids, scenario).argmax(fixed_powers, noise);
}

AllocationResult alternate_optimize(const SearchGrids& grids, double budget, const Scenario& scenario,
                                    const NoiseModel& noise, const OptimizerOptions& options)
{
    if (options.max_iterations < 1)
        throw InvalidArgument("alternating optimization needs at least one iteration");
    noise.validate();

    const GainTable table(grids, scenario);
    AllocationResult result;
    result.powers = PowerAllocation::uniform(scenario.grid.size(), budget);

    GeometryChoice previous;
    for (std::size_t i = 1; i <= options.max_iterations; ++i) {
        const GeometryChoice choice = table.argmax(result.powers, noise);
        const auto gains = table.gains(choice.b_index, choice.L_index);

        auto powers = waterfill(gains, budget, noise);
        double rate = average_sum_rate(gains, powers.powers(), noise);
        // Waterfilling is optimal for this geometry; only rounding can make
        // the incumbent powers look better, and then they are kept.
        if (choice.rate > rate) {
            powers = result.powers;
            rate = choice.rate;
        }

        result.trace.push_back({i, choice.config.plate_separation, choice.config.slit_length, rate});
        const bool unchanged = i > 1 && choice.b_index == previous.b_index && choice.L_index == previous.L_index &&
                               powers == result.powers;
        result.config = choice.config;
        result.powers = std::move(powers);
        result.sum_rate = rate;
        previous = choice;
        if (unchanged) {
            result.reached_fixed_point = true;
            if (options.early_exit)
                break;
        }
    }
    return result;
}

void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace)
{
    const auto old_precision = out.precision(17);
    out << "iter,b_m,L_m,rate_bits\n";
    for (const auto& t : trace)
        out << t.iteration << ',' << t.b << ',' << t.L << ',' << t.rate << '\n';
    out.precision(old_precision);
}

void write_allocation_report(std::ostream& out, const AllocationResult& result, const FrequencyGrid& grid)
{
    const auto old_precision = out.precision(17);
    out << "# LWA allocation result\n";
    out << "b_m=" << result.config.plate_separation << '\n';
    out << "L_m=" << result.config.slit_length << '\n';
    out << "leakage_per_m=" << result.config.leakage << '\n';
    out << "sum_rate_bits=" << result.sum_rate << '\n';
    out << "budget=" << result.powers.budget() << '\n';
    out << "iterations=" << result.trace.size() << '\n';
    out << "fixed_point=" << (result.reached_fixed_point ? "true" : "false") << '\n';
    out << "\n[powers]\nn,frequency_hz,power\n";
    for (std::size_t n = 0; n < result.powers.size(); ++n)
        out << n << ',' << (n < grid.size() ? grid[n] : 0.0) << ',' << result.powers[n] << '\n';
    out << "\n[trace]\n";
    out.precision(old_precision);
    write_trace_csv(out, result.trace);
}

} // namespace lwa
