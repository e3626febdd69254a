#pragma once

#include <complex>
#include <numbers>

namespace lwa {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Physical geometry of a parallel-plate leaky-wave antenna.
///
/// `plate_separation` (b) sets the cutoff and the frequency-to-angle mapping,
/// `slit_length` (L) sets the aperture and therefore the beamwidth, and
/// `leakage` (alpha, 1/m) is the attenuation of the guided wave caused by
/// radiation through the slit. Leakage is normally negligible and defaults to 0.
struct LwaConfig {
    double plate_separation = 1e-3; // m
    double slit_length = 10e-3;     // m
    double leakage = 0.0;           // 1/m

    /// Throws InvalidArgument unless b > 0, L > 0 and alpha >= 0.
    void validate() const;

    /// c / (2b), the lowest frequency that propagates between the plates.
    double cutoff_frequency() const { return kSpeedOfLight / (2.0 * plate_separation); }

    friend bool operator==(const LwaConfig&, const LwaConfig&) = default;
};

/// Box constraint on the tunable geometry.
struct LwaBounds {
    double b_min = 0.9e-3;
    double b_max = 1.1e-3;
    double L_min = 10e-3;
    double L_max = 50e-3;

    void validate() const;
    bool contains(const LwaConfig& config) const;
};

/// Free-space wavenumber 2*pi*f/c.
double wavenumber(double frequency_hz);

/// Angle (radians, measured from the plate axis) at which the spectral
/// component at `frequency_hz` leaves the slit: asin(c / (2 b f)).
///
/// Throws CutoffViolation below c/(2b). Exactly at cutoff the result is pi/2.
double emission_angle(const LwaConfig& config, double frequency_hz);

/// Complex far-field pattern of the slit at `angle` and `frequency_hz`:
/// sinc((beta - j*alpha - k0*cos(angle)) * L/2) with sinc(z) = sin(z)/z and
/// beta = k0 * sqrt(1 - (c/(2bf))^2) the guided propagation constant.
///
/// |G| = 1 at the emission angle when alpha = 0. Throws CutoffViolation
/// below cutoff.
std::complex<double> diffraction_gain(const LwaConfig& config, double angle, double frequency_hz);

/// Inverse of emission_angle: the frequency whose beam peaks at `angle`.
/// Throws InvalidArgument unless angle is in (0, pi/2].
double beam_peak_frequency(const LwaConfig& config, double angle);

/// Unnormalized complex sinc, sin(z)/z, with a series expansion near zero.
std::complex<double> sinc(std::complex<double> z);

} // namespace lwa
