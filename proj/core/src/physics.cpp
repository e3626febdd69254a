#include "lwa/physics.hpp"

#include "lwa/errors.hpp"

#include <cmath>
#include <string>

namespace lwa {

namespace {

// Rounding in c/(2bf) can push the ratio a few ulps past 1 when f is computed
// as exactly c/(2b); treat that as the cutoff itself.
constexpr double kCutoffSlack = 1e-14;

double cutoff_ratio(const LwaConfig& config, double frequency_hz)
{
    if (!(frequency_hz > 0.0))
        throw InvalidArgument("frequency must be positive, got " + std::to_string(frequency_hz));
    config.validate();
    const double ratio = kSpeedOfLight / (2.0 * config.plate_separation * frequency_hz);
    if (ratio > 1.0 + kCutoffSlack)
        throw CutoffViolation(frequency_hz, config.cutoff_frequency());
    return std::min(ratio, 1.0);
}

} // namespace

CutoffViolation::CutoffViolation(double frequency_hz, double cutoff_hz)
    : std::domain_error("frequency " + std::to_string(frequency_hz) + " Hz is below the waveguide cutoff " +
                        std::to_string(cutoff_hz) + " Hz"),
      frequency_hz_(frequency_hz), cutoff_hz_(cutoff_hz)
{
}

void LwaConfig::validate() const
{
    if (!(plate_separation > 0.0))
        throw InvalidArgument("plate separation must be positive");
    if (!(slit_length > 0.0))
        throw InvalidArgument("slit length must be positive");
    if (!(leakage >= 0.0))
        throw InvalidArgument("leakage must be non-negative");
}

void LwaBounds::validate() const
{
    if (!(b_min > 0.0 && b_min <= b_max))
        throw InvalidArgument("plate separation bounds must satisfy 0 < b_min <= b_max");
    if (!(L_min > 0.0 && L_min <= L_max))
        throw InvalidArgument("slit length bounds must satisfy 0 < L_min <= L_max");
}

bool LwaBounds::contains(const LwaConfig& config) const
{
    return config.plate_separation >= b_min && config.plate_separation <= b_max &&
           config.slit_length >= L_min && config.slit_length <= L_max;
}

double wavenumber(double frequency_hz)
{
    return 2.0 * std::numbers::pi * frequency_hz / kSpeedOfLight;
}

double emission_angle(const LwaConfig& config, double frequency_hz)
{
    return std::asin(cutoff_ratio(config, frequency_hz));
}

std::complex<double> sinc(std::complex<double> z)
{
    if (std::abs(z) < 1e-6) {
        const auto z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

std::complex<double> diffraction_gain(const LwaConfig& config, double angle, double frequency_hz)
{
    const double ratio = cutoff_ratio(config, frequency_hz);
    const double k0 = wavenumber(frequency_hz);
    const double beta = k0 * std::sqrt(1.0 - ratio * ratio);
    const std::complex<double> z{(beta - k0 * std::cos(angle)) * config.slit_length / 2.0,
                                 -config.leakage * config.slit_length / 2.0};
    return sinc(z);
}

double beam_peak_frequency(const LwaConfig& config, double angle)
{
    if (!(angle > 0.0 && angle <= std::numbers::pi / 2.0))
        throw InvalidArgument("beam peak angle must lie in (0, pi/2]");
    config.validate();
    return kSpeedOfLight / (2.0 * config.plate_separation * std::sin(angle));
}

} // namespace lwa
