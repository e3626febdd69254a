#pragma once

#include "lwa/physics.hpp"
#include "lwa/power.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lwa {

/// Ordered subband center frequencies f_1 < ... < f_N (Hz).
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> frequencies);

    /// N equal-width bins over [f_low, f_high], one center frequency per bin.
    static FrequencyGrid uniform_bins(double f_low, double f_high, std::size_t count);

    std::span<const double> frequencies() const noexcept { return frequencies_; }
    double operator[](std::size_t n) const { return frequencies_[n]; }
    std::size_t size() const noexcept { return frequencies_.size(); }

private:
    std::vector<double> frequencies_;
};

struct UserPosition {
    double angle; // rad, from the antenna axis
    double range; // m

    friend bool operator==(const UserPosition&, const UserPosition&) = default;
};

/// K receivers in polar coordinates around the antenna. Angles in (0, pi/2],
/// ranges > 0.
class UserSet {
public:
    explicit UserSet(std::vector<UserPosition> users);

    std::span<const UserPosition> users() const noexcept { return users_; }
    const UserPosition& operator[](std::size_t k) const { return users_[k]; }
    std::size_t size() const noexcept { return users_.size(); }

    friend bool operator==(const UserSet&, const UserSet&) = default;

private:
    std::vector<UserPosition> users_;
};

/// Attenuation coefficient Gamma(range, frequency). The default profile is
/// frequency independent: reference_range / range.
class PathLossProfile {
public:
    using Function = std::function<double(double range, double frequency_hz)>;

    PathLossProfile(std::string name, Function fn);

    static PathLossProfile inverse_range(double reference_range = 1.0);

    double operator()(double range, double frequency_hz) const;
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
    Function fn_;
};

struct NoiseModel {
    double variance = 1.0; // sigma^2, linear

    void validate() const;
};

/// A subband whose frequency fell below the cutoff of the geometry; its row
/// of the channel is zero.
struct SubCutoffWarning {
    std::size_t subband;
    double frequency_hz;
    double cutoff_hz;
};

/// N x K matrix of complex gains; row n is the subband channel vector h_n,
/// entry (n, k) = G(angle_k, f_n) * Gamma(range_k, f_n).
class ChannelMatrix {
public:
    ChannelMatrix(std::size_t subbands, std::size_t users, LwaConfig config);

    std::size_t subbands() const noexcept { return subbands_; }
    std::size_t users() const noexcept { return users_; }
    const LwaConfig& config() const noexcept { return config_; }

    std::complex<double> operator()(std::size_t n, std::size_t k) const { return entries_[n * users_ + k]; }
    std::complex<double>& operator()(std::size_t n, std::size_t k) { return entries_[n * users_ + k]; }

    std::span<const std::complex<double>> row(std::size_t n) const
    {
        return std::span(entries_).subspan(n * users_, users_);
    }

    /// ||h_n||^2 for every subband.
    std::vector<double> gains_squared() const;
    double max_magnitude() const;

    const std::vector<SubCutoffWarning>& warnings() const noexcept { return warnings_; }
    void add_warning(SubCutoffWarning w) { warnings_.push_back(w); }

private:
    std::size_t subbands_;
    std::size_t users_;
    LwaConfig config_;
    std::vector<std::complex<double>> entries_;
    std::vector<SubCutoffWarning> warnings_;
};

ChannelMatrix build_channel(const LwaConfig& config, const FrequencyGrid& grid, const UserSet& users,
                            const PathLossProfile& loss);

/// log2(1 + P/sigma^2 * ||h||^2).
double subband_rate(std::span<const std::complex<double>> h, double power, const NoiseModel& noise);
double subband_rate_from_gain(double gain_squared, double power, const NoiseModel& noise);

/// Mean over subbands of subband_rate, in bits per channel use.
double average_sum_rate(const ChannelMatrix& channel, const PowerAllocation& powers, const NoiseModel& noise);
double average_sum_rate(std::span<const double> gains_squared, std::span<const double> powers,
                        const NoiseModel& noise);

inline constexpr double kBeampatternFloor = -300.0;

/// log10 of the power-weighted radiated energy on an angle x range grid.
struct BeampatternMap {
    std::vector<double> angles_deg;
    std::vector<double> ranges;
    std::vector<double> values; // angle-major: values[a * ranges.size() + r]

    double at(std::size_t a, std::size_t r) const { return values[a * ranges.size() + r]; }
};

/// Energy map log10(sum_n |G(angle, f_n) Gamma(range, f_n)|^2 P_n). Points
/// that receive no energy (all terms zero) get `floor`.
BeampatternMap beampattern(const LwaConfig& config, const FrequencyGrid& grid, const PowerAllocation& powers,
                           const PathLossProfile& loss, std::span<const double> angles_deg,
                           std::span<const double> ranges, double floor = kBeampatternFloor);

/// CSV with header `angle_deg,range_m,log_energy`, 9 significant digits.
void write_beampattern_csv(std::ostream& out, const BeampatternMap& map);

} // namespace lwa
