#pragma once

#include "lwa/channel.hpp"
#include "lwa/physics.hpp"
#include "lwa/power.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace lwa {

/// Optimal power over parallel channels with squared gains `gains_squared`:
/// P_n = max(mu - sigma^2 / g_n, 0) with the water level mu found by bisection
/// so that the powers exhaust `budget`. Zero-gain channels get exactly 0.
///
/// A zero budget yields all-zero powers. Throws AllGainsZero if the budget is
/// positive and no gain is.
PowerAllocation waterfill(std::span<const double> gains_squared, double budget, const NoiseModel& noise);

/// Candidate plate separations and slit lengths, each strictly increasing.
class SearchGrids {
public:
    SearchGrids(std::vector<double> b_values, std::vector<double> L_values);

    /// Evenly spaced points including both endpoints of each bound. A count
    /// of 1 is only accepted for a degenerate interval.
    static SearchGrids uniform(const LwaBounds& bounds, std::size_t b_points, std::size_t L_points);

    std::span<const double> b_values() const noexcept { return b_; }
    std::span<const double> L_values() const noexcept { return L_; }
    std::size_t size() const noexcept { return b_.size() * L_.size(); }

private:
    std::vector<double> b_;
    std::vector<double> L_;
};

/// Everything about the link except the antenna geometry.
struct Scenario {
    FrequencyGrid grid;
    UserSet users;
    PathLossProfile loss = PathLossProfile::inverse_range();
    double leakage = 0.0;
};

struct GeometryChoice {
    std::size_t b_index = 0;
    std::size_t L_index = 0;
    LwaConfig config;
    double rate = 0.0;

    friend bool operator==(const GeometryChoice&, const GeometryChoice&) = default;
};

/// ||h_n||^2 for every (b, L) candidate. The table does not depend on the
/// power allocation, so one table serves every iteration of the alternating
/// optimization.
class GainTable {
public:
    GainTable(const SearchGrids& grids, const Scenario& scenario);

    std::span<const double> gains(std::size_t b_index, std::size_t L_index) const;
    LwaConfig config(std::size_t b_index, std::size_t L_index) const;

    /// Exhaustive maximization of the average sum rate under fixed powers.
    /// Ties go to the smallest b, then the smallest L.
    GeometryChoice argmax(const PowerAllocation& powers, const NoiseModel& noise) const;

    std::size_t subbands() const noexcept { return subbands_; }

private:
    SearchGrids grids_;
    double leakage_;
    std::size_t subbands_;
    std::vector<double> table_;
};

GeometryChoice grid_search_geometry(const SearchGrids& grids, const PowerAllocation& fixed_powers,
                                    const Scenario& scenario, const NoiseModel& noise);

struct TraceEntry {
    std::size_t iteration;
    double b;
    double L;
    double rate;
};

struct AllocationResult {
    LwaConfig config;
    PowerAllocation powers;
    double sum_rate = 0.0;
    std::vector<TraceEntry> trace;
    bool reached_fixed_point = false;
};

struct OptimizerOptions {
    std::size_t max_iterations = 10;
    /// Stop once geometry and powers repeat between successive iterations.
    bool early_exit = true;
};

/// Alternates the exhaustive (b, L) search with waterfilling, starting from
/// uniform powers budget/N.
AllocationResult alternate_optimize(const SearchGrids& grids, double budget, const Scenario& scenario,
                                    const NoiseModel& noise, const OptimizerOptions& options = {});

/// Text report: chosen geometry, per-subband powers and the iteration trace
/// as CSV (`iter,b_m,L_m,rate_bits`).
void write_allocation_report(std::ostream& out, const AllocationResult& result, const FrequencyGrid& grid);
void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace);

} // namespace lwa
