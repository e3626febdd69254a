#include "oracles.hpp"

#include "lwa/errors.hpp"
#include "lwa/physics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lwa;

namespace {

LwaConfig geometry(double b, double L, double alpha = 0.0) { return {b, L, alpha}; }

/// Width (rad) of the contiguous region around the peak where |G|^2 >= 1/2.
double half_power_beamwidth(const LwaConfig& cfg, double f, double step)
{
    const double peak = emission_angle(cfg, f);
    auto above = [&](double a) { return std::norm(diffraction_gain(cfg, a, f)) >= 0.5; };
    double lo = peak, hi = peak;
    while (lo - step >= 0.0 && above(lo - step))
        lo -= step;
    while (hi + step <= std::numbers::pi && above(hi + step))
        hi += step;
    return hi - lo;
}

} // namespace

TEST_CASE("emission angle follows asin(c / 2bf)")
{
    const auto cfg = geometry(1e-3, 10e-3);

    // c/(2bf) = 1/2 exactly when f = c * 1000 Hz.
    CHECK(emission_angle(cfg, kSpeedOfLight * 1000.0) == doctest::Approx(std::numbers::pi / 6).epsilon(1e-15));

    // 50-digit reference values with the exact speed of light.
    CHECK(std::abs(emission_angle(cfg, 300e9) - 0.52319940686480665) < 1e-15);
    CHECK(std::abs(emission_angle(cfg, 424e9) - 0.36134088046658743) < 1e-15);
    CHECK(std::abs(emission_angle(cfg, 600e9) - 0.25250163554678842) < 1e-15);
    CHECK(std::abs(emission_angle(cfg, 300e9) - oracle::emission_angle(1e-3, 300e9)) < 1e-15);
}

TEST_CASE("emission angle at and below cutoff")
{
    const auto cfg = geometry(1e-3, 10e-3);
    const double cutoff = kSpeedOfLight / (2.0 * 1e-3);
    CHECK(cfg.cutoff_frequency() == doctest::Approx(149.896229e9));
    CHECK(emission_angle(cfg, cutoff) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK_THROWS_AS(emission_angle(cfg, 100e9), CutoffViolation);
    CHECK_THROWS_AS(diffraction_gain(cfg, 0.3, 100e9), CutoffViolation);
    CHECK_THROWS_AS(emission_angle(cfg, 0.0), InvalidArgument);
    CHECK_THROWS_AS(emission_angle(geometry(0.0, 1e-2), 300e9), InvalidArgument);
    CHECK_THROWS_AS(emission_angle(geometry(1e-3, 1e-2, -1.0), 300e9), InvalidArgument);

    try {
        emission_angle(cfg, 100e9);
    } catch (const CutoffViolation& e) {
        CHECK(e.frequency_hz() == 100e9);
        CHECK(e.cutoff_hz() == doctest::Approx(cutoff));
    }
}

TEST_CASE("diffraction gain examples")
{
    const auto cfg = geometry(1e-3, 10e-3);

    SUBCASE("unit gain on the emission angle")
    {
        const double f = 300e9;
        const auto g = diffraction_gain(cfg, emission_angle(cfg, f), f);
        CHECK(g.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(g.imag() == 0.0);
    }

    SUBCASE("broadside value matches 50-digit evaluation")
    {
        const auto g = diffraction_gain(cfg, std::numbers::pi / 2, 300e9);
        // sin(z)/z at z = beta L / 2 = 27.232100912...
        CHECK(g.real() == doctest::Approx(0.031710092947094087).epsilon(1e-10));
        CHECK(std::abs(g - oracle::diffraction_gain(1e-3, 10e-3, 0.0, std::numbers::pi / 2, 300e9)) < 1e-13);
    }

    SUBCASE("off-peak magnitude below one")
    {
        const double peak = emission_angle(cfg, 300e9);
        CHECK(std::abs(diffraction_gain(cfg, peak + 1e-3, 300e9)) < 1.0);
        CHECK(std::abs(diffraction_gain(cfg, peak - 1e-3, 300e9)) < 1.0);
    }

    SUBCASE("leakage makes the gain complex and matches the complex oracle")
    {
        const auto lossy = geometry(1e-3, 20e-3, 30.0);
        for (double angle : {0.1, 0.4, 0.5231994, 0.9, 1.5}) {
            const auto g = diffraction_gain(lossy, angle, 300e9);
            const auto ref = oracle::diffraction_gain(1e-3, 20e-3, 30.0, angle, 300e9);
            CHECK(std::abs(g - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
        }
        CHECK(std::abs(diffraction_gain(lossy, 0.9, 300e9).imag()) > 1e-6);
    }
}

TEST_CASE("complex sinc is continuous across the series threshold")
{
    for (double r : {9.9e-7, 1.0e-6, 1.01e-6}) {
        for (double theta : {0.0, 0.7, 1.6, 3.0}) {
            const std::complex<double> z = std::polar(r, theta);
            const std::complex<long double> zl(z.real(), z.imag());
            const auto direct = std::sin(zl) / zl;
            CHECK(std::abs(sinc(z) - std::complex<double>(direct)) < 1e-15);
        }
    }
    CHECK(sinc({0.0, 0.0}) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("beam peak frequency inverts the emission angle")
{
    const auto cfg = geometry(1e-3, 10e-3);
    CHECK(beam_peak_frequency(cfg, std::numbers::pi / 6) == doctest::Approx(kSpeedOfLight * 1000.0).epsilon(1e-14));
    CHECK(beam_peak_frequency(cfg, std::numbers::pi / 2) == doctest::Approx(cfg.cutoff_frequency()).epsilon(1e-15));
    CHECK_THROWS_AS(beam_peak_frequency(cfg, 0.0), InvalidArgument);
    CHECK_THROWS_AS(beam_peak_frequency(cfg, 1.6), InvalidArgument);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.01, std::numbers::pi / 2);
    std::uniform_real_distribution<double> sep(0.5e-3, 2e-3);
    for (int i = 0; i < 200; ++i) {
        const auto c = geometry(sep(rng), 10e-3);
        const double a = angle(rng);
        CHECK(emission_angle(c, beam_peak_frequency(c, a)) == doctest::Approx(a).epsilon(1e-12));
    }
}

TEST_CASE("emission angle strictly decreases with frequency")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> sep(0.5e-3, 2e-3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto cfg = geometry(sep(rng), 10e-3);
        double previous = emission_angle(cfg, cfg.cutoff_frequency());
        for (double f = cfg.cutoff_frequency() * 1.001; f < 2e12; f *= 1.05) {
            const double a = emission_angle(cfg, f);
            CHECK(a < previous);
            previous = a;
        }
    }
}

TEST_CASE("pattern peaks at the emission angle and is real without leakage")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> sep(0.9e-3, 1.1e-3);
    std::uniform_real_distribution<double> len(10e-3, 50e-3);
    std::uniform_real_distribution<double> scale(1.05, 5.0);
    const double step = deg_to_rad(0.01);
    for (int trial = 0; trial < 20; ++trial) {
        const auto cfg = geometry(sep(rng), len(rng));
        const double f = cfg.cutoff_frequency() * scale(rng);
        double best = -1.0, best_angle = 0.0;
        for (int i = 0; i <= 9000; ++i) {
            const double a = i * step;
            const auto g = diffraction_gain(cfg, a, f);
            CHECK(std::abs(g.imag()) <= 1e-12 * std::abs(g));
            if (std::abs(g) > best) {
                best = std::abs(g);
                best_angle = a;
            }
        }
        CHECK(std::abs(best_angle - emission_angle(cfg, f)) <= step);
    }
}

TEST_CASE("doubling the slit length does not widen the beam")
{
    const double step = deg_to_rad(0.001);
    for (double b : {0.9e-3, 1.0e-3, 1.1e-3})
        for (double f : {250e9, 400e9, 700e9})
            for (double L : {5e-3, 10e-3, 20e-3}) {
                const double wide = half_power_beamwidth(geometry(b, L), f, step);
                const double narrow = half_power_beamwidth(geometry(b, 2 * L), f, step);
                CHECK(narrow <= wide);
            }
}

TEST_CASE("bounds validation")
{
    CHECK_NOTHROW(LwaBounds{}.validate());
    CHECK_THROWS_AS((LwaBounds{1e-3, 0.5e-3, 1e-2, 2e-2}.validate()), InvalidArgument);
    CHECK_THROWS_AS((LwaBounds{1e-3, 2e-3, 0.0, 2e-2}.validate()), InvalidArgument);
    CHECK(LwaBounds{}.contains(geometry(1e-3, 20e-3)));
    CHECK_FALSE(LwaBounds{}.contains(geometry(1.2e-3, 20e-3)));
}
