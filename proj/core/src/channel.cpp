#include "lwa/channel.hpp"

#include "lwa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lwa {

FrequencyGrid::FrequencyGrid(std::vector<double> frequencies) : frequencies_(std::move(frequencies))
{
    if (frequencies_.empty())
        throw InvalidArgument("frequency grid must contain at least one subband");
    for (std::size_t n = 0; n < frequencies_.size(); ++n) {
        if (!(frequencies_[n] > 0.0))
            throw InvalidArgument("subband frequencies must be positive");
        if (n > 0 && !(frequencies_[n] > frequencies_[n - 1]))
            throw InvalidArgument("subband frequencies must be strictly increasing");
    }
}

FrequencyGrid FrequencyGrid::uniform_bins(double f_low, double f_high, std::size_t count)
{
    if (count == 0 || !(f_low > 0.0) || !(f_high > f_low))
        throw InvalidArgument("frequency band must satisfy 0 < f_low < f_high with at least one bin");
    const double width = (f_high - f_low) / static_cast<double>(count);
    std::vector<double> f(count);
    for (std::size_t n = 0; n < count; ++n)
        f[n] = f_low + (static_cast<double>(n) + 0.5) * width;
    return FrequencyGrid(std::move(f));
}

UserSet::UserSet(std::vector<UserPosition> users) : users_(std::move(users))
{
    if (users_.empty())
        throw InvalidArgument("user set must contain at least one user");
    for (const auto& u : users_) {
        if (!(u.range > 0.0))
            throw InvalidArgument("user ranges must be positive");
        if (!(u.angle > 0.0 && u.angle <= std::numbers::pi / 2.0))
            throw InvalidArgument("user angles must lie in (0, 90] degrees");
    }
}

PathLossProfile::PathLossProfile(std::string name, Function fn) : name_(std::move(name)), fn_(std::move(fn))
{
    if (!fn_)
        throw InvalidArgument("path loss profile needs a callable");
}

PathLossProfile PathLossProfile::inverse_range(double reference_range)
{
    if (!(reference_range > 0.0))
        throw InvalidArgument("reference range must be positive");
    return PathLossProfile("inverse-range", [reference_range](double range, double) { return reference_range / range; });
}

double PathLossProfile::operator()(double range, double frequency_hz) const
{
    return fn_(range, frequency_hz);
}

void NoiseModel::validate() const
{
    if (!(variance > 0.0))
        throw InvalidArgument("noise variance must be positive");
}

ChannelMatrix::ChannelMatrix(std::size_t subbands, std::size_t users, LwaConfig config)
    : subbands_(subbands), users_(users), config_(config), entries_(subbands * users)
{
}

std::vector<double> ChannelMatrix::gains_squared() const
{
    std::vector<double> g(subbands_, 0.0);
    for (std::size_t n = 0; n < subbands_; ++n)
        for (const auto& h : row(n))
            g[n] += std::norm(h);
    return g;
}

double ChannelMatrix::max_magnitude() const
{
    double m = 0.0;
    for (const auto& h : entries_)
        m = std::max(m, std::abs(h));
    return m;
}

ChannelMatrix build_channel(const LwaConfig& config, const FrequencyGrid& grid, const UserSet& users,
                            const PathLossProfile& loss)
{
    config.validate();
    ChannelMatrix channel(grid.size(), users.size(), config);
    const double cutoff = config.cutoff_frequency();
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double f = grid[n];
        if (f < cutoff) {
            // Row stays zero; only the exact-cutoff case is allowed through.
            channel.add_warning({n, f, cutoff});
            continue;
        }
        for (std::size_t k = 0; k < users.size(); ++k)
            channel(n, k) = diffraction_gain(config, users[k].angle, f) * loss(users[k].range, f);
    }
    return channel;
}

double subband_rate_from_gain(double gain_squared, double power, const NoiseModel& noise)
{
    if (!(power >= 0.0))
        throw InvalidArgument("subband power must be non-negative");
    return std::log2(1.0 + power / noise.variance * gain_squared);
}

double subband_rate(std::span<const std::complex<double>> h, double power, const NoiseModel& noise)
{
    double g = 0.0;
    for (const auto& v : h)
        g += std::norm(v);
    return subband_rate_from_gain(g, power, noise);
}

double average_sum_rate(std::span<const double> gains_squared, std::span<const double> powers,
                        const NoiseModel& noise)
{
    if (gains_squared.size() != powers.size())
        throw InvalidArgument("power vector length " + std::to_string(powers.size()) +
                              " does not match subband count " + std::to_string(gains_squared.size()));
    if (gains_squared.empty())
        throw InvalidArgument("sum rate needs at least one subband");
    double sum = 0.0;
    for (std::size_t n = 0; n < powers.size(); ++n)
        sum += subband_rate_from_gain(gains_squared[n], powers[n], noise);
    return sum / static_cast<double>(powers.size());
}

double average_sum_rate(const ChannelMatrix& channel, const PowerAllocation& powers, const NoiseModel& noise)
{
    return average_sum_rate(channel.gains_squared(), powers.powers(), noise);
}

BeampatternMap beampattern(const LwaConfig& config, const FrequencyGrid& grid, const PowerAllocation& powers,
                           const PathLossProfile& loss, std::span<const double> angles_deg,
                           std::span<const double> ranges, double floor)
{
    if (powers.size() != grid.size())
        throw InvalidArgument("power vector length does not match the frequency grid");
    if (angles_deg.empty() || ranges.empty())
        throw InvalidArgument("beampattern grids must be non-empty");
    config.validate();

    const std::size_t N = grid.size();
    const double cutoff = config.cutoff_frequency();

    // |Gamma(range, f_n)|^2, shared by every angle.
    std::vector<double> loss2(ranges.size() * N);
    for (std::size_t r = 0; r < ranges.size(); ++r)
        for (std::size_t n = 0; n < N; ++n) {
            const double g = loss(ranges[r], grid[n]);
            loss2[r * N + n] = g * g;
        }

    BeampatternMap map{{angles_deg.begin(), angles_deg.end()}, {ranges.begin(), ranges.end()}, {}};
    map.values.resize(angles_deg.size() * ranges.size());

    std::vector<double> weighted(N);
    for (std::size_t a = 0; a < angles_deg.size(); ++a) {
        const double angle = deg_to_rad(angles_deg[a]);
        for (std::size_t n = 0; n < N; ++n)
            weighted[n] = (grid[n] < cutoff || powers[n] == 0.0)
                              ? 0.0
                              : std::norm(diffraction_gain(config, angle, grid[n])) * powers[n];
        for (std::size_t r = 0; r < ranges.size(); ++r) {
            double energy = 0.0;
            for (std::size_t n = 0; n < N; ++n)
                energy += weighted[n] * loss2[r * N + n];
            map.values[a * ranges.size() + r] = energy > 0.0 ? std::log10(energy) : floor;
        }
    }
    return map;
}

void write_beampattern_csv(std::ostream& out, const BeampatternMap& map)
{
    const auto old_precision = out.precision(9);
    out << "angle_deg,range_m,log_energy\n";
    for (std::size_t a = 0; a < map.angles_deg.size(); ++a)
        for (std::size_t r = 0; r < map.ranges.size(); ++r)
            out << map.angles_deg[a] << ',' << map.ranges[r] << ',' << map.at(a, r) << '\n';
    out.precision(old_precision);
}

} // namespace lwa
