#include "oracles.hpp"
#include "scenarios.hpp"

#include "lwa/errors.hpp"
#include "lwa/mimo.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace lwa;
using testing_support::random_users;

namespace {

MimoChannelTensor random_tensor(std::mt19937_64& rng, std::size_t N, std::size_t K, std::size_t M)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    MimoChannelTensor t(N, K, M);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t m = 0; m < M; ++m)
                t(n, k, m) = {gauss(rng), gauss(rng)};
    return t;
}

} // namespace

TEST_CASE("ULA geometry")
{
    const UlaGeometry ula(8, 500e9);
    CHECK(ula.spacing() == doctest::Approx(kSpeedOfLight / 1e12));
    for (std::size_t m = 0; m < 8; ++m)
        CHECK(ula.positions()[m] == doctest::Approx(-ula.positions()[7 - m]));
    CHECK(ula.aperture() == doctest::Approx(7 * ula.spacing()));
    CHECK(UlaGeometry(1, 500e9).positions()[0] == 0.0);
    CHECK_THROWS_AS(UlaGeometry(0, 500e9), InvalidArgument);
    CHECK_THROWS_AS(UlaGeometry(4, 0.0), InvalidArgument);
}

TEST_CASE("MIMO channel examples")
{
    const auto grid = FrequencyGrid::uniform_bins(200e9, 800e9, 5);

    SUBCASE("single element reduces to range loss")
    {
        const UserSet users({{0.3, 12.0}, {1.0, 17.0}});
        const auto t = build_mimo_channel(UlaGeometry(1, 500e9), grid, users);
        for (std::size_t n = 0; n < grid.size(); ++n)
            for (std::size_t k = 0; k < 2; ++k)
                CHECK(std::abs(t(n, k, 0)) == doctest::Approx(1.0 / users[k].range).epsilon(1e-14));
    }

    SUBCASE("magnitudes do not depend on frequency")
    {
        std::mt19937_64 rng(4);
        const auto users = random_users(rng, 3);
        const auto t = build_mimo_channel(UlaGeometry(8, 500e9), grid, users);
        for (std::size_t n = 1; n < grid.size(); ++n)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t m = 0; m < 8; ++m)
                    CHECK(std::abs(t(n, k, m)) == doctest::Approx(std::abs(t(0, k, m))).epsilon(1e-14));
    }

    SUBCASE("far-field phases approach the planar wavefront")
    {
        const UlaGeometry ula(8, 500e9);
        const double rho = 1e4 * ula.aperture();
        const double angle = deg_to_rad(35.0);
        const auto t = build_mimo_channel(ula, grid, UserSet({{angle, rho}}));
        for (std::size_t n = 0; n < grid.size(); ++n)
            for (std::size_t m = 1; m < 8; ++m) {
                // Phase of element m relative to element 0.
                const double measured = std::arg(t(n, 0, m) / t(n, 0, 0));
                const double planar = 2 * std::numbers::pi * grid[n] *
                                      (static_cast<double>(m) * ula.spacing() * std::cos(angle)) / kSpeedOfLight;
                CHECK(std::abs(std::remainder(measured - planar, 2 * std::numbers::pi)) <= 0.01 * planar);
            }
    }

    SUBCASE("users inside the aperture are rejected")
    {
        const UlaGeometry ula(64, 500e9);
        CHECK_THROWS_AS(build_mimo_channel(ula, grid, UserSet({{0.5, ula.aperture() / 4}})), InvalidArgument);
    }
}

TEST_CASE("normalization to the LWA channel")
{
    ChannelMatrix lwa(2, 1, LwaConfig{});
    lwa(0, 0) = {0.05, 0.0};
    lwa(1, 0) = {0.0, -0.1};

    MimoChannelTensor same(1, 1, 2);
    same(0, 0, 0) = {0.0, 0.1};
    same(0, 0, 1) = {0.03, 0.0};
    const auto unchanged = normalize_to_lwa(same, lwa);
    CHECK(unchanged.normalization_factor() == 1.0);
    CHECK(unchanged(0, 0, 1) == same(0, 0, 1));

    MimoChannelTensor twice(1, 1, 2);
    twice(0, 0, 0) = {0.2, 0.0};
    twice(0, 0, 1) = {0.0, 0.08};
    const auto halved = normalize_to_lwa(twice, lwa);
    CHECK(halved.normalization_factor() == doctest::Approx(0.5));
    CHECK(halved(0, 0, 1).imag() == doctest::Approx(0.04));

    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const auto t = random_tensor(rng, 3, 2, 4);
        const auto once = normalize_to_lwa(t, lwa);
        CHECK(std::abs(once.max_magnitude() - 0.1) <= 1e-12 * 0.1);
        const auto again = normalize_to_lwa(once, lwa);
        for (std::size_t m = 0; m < 4; ++m)
            CHECK(std::abs(again(1, 1, m) - once(1, 1, m)) <= 1e-15 * std::abs(once(1, 1, m)) + 1e-300);
    }

    CHECK_THROWS_AS(normalize_to_lwa(twice, ChannelMatrix(2, 1, LwaConfig{})), ZeroChannel);
    CHECK_THROWS_AS(normalize_to_lwa(MimoChannelTensor(1, 1, 2), lwa), ZeroChannel);
}

TEST_CASE("singular values carry the Frobenius norm")
{
    std::mt19937_64 rng(10);
    for (auto [K, M] : {std::pair{2, 2}, {4, 8}, {4, 1}, {3, 16}}) {
        const auto t = random_tensor(rng, 4, K, M);
        const auto sv = subband_singular_values(t);
        for (std::size_t n = 0; n < 4; ++n) {
            CHECK(sv[n].size() == static_cast<std::size_t>(std::min(K, M)));
            double fro = 0.0;
            for (const auto& h : t.subband(n))
                fro += std::norm(h);
            double sum = 0.0;
            for (double s : sv[n])
                sum += s * s;
            CHECK(sum == doctest::Approx(fro).epsilon(1e-9));
        }
    }
}

TEST_CASE("MIMO sum rate")
{
    const NoiseModel unit{1.0};

    SUBCASE("scalar channel")
    {
        MimoChannelTensor t(1, 1, 1);
        t(0, 0, 0) = {0.6, 0.8};
        CHECK(mimo_sum_rate(t, 1.0, unit) == doctest::Approx(1.0));
    }

    SUBCASE("rank-1 subbands with equal strength split power uniformly")
    {
        MimoChannelTensor t(3, 2, 2);
        for (std::size_t n = 0; n < 3; ++n)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t m = 0; m < 2; ++m)
                    t(n, k, m) = std::polar(0.5, 0.3 * static_cast<double>(n)); // all-equal entries, rank 1
        // Singular value sqrt(4 * 0.25) = 1 per subband, so P/3 each.
        CHECK(mimo_sum_rate(t, 3.0, unit) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("matches simplex enumeration over pooled eigenchannels")
    {
        std::mt19937_64 rng(77);
        for (int i = 0; i < 3; ++i) {
            const auto t = random_tensor(rng, 2, 2, 2);
            std::vector<double> pooled;
            for (const auto& s : subband_singular_values(t))
                for (double v : s)
                    pooled.push_back(v * v);
            const double brute = oracle::simplex_best_rate(pooled, 2.0, 1.0, 100, 2.0);
            CHECK(std::abs(mimo_sum_rate(t, 2.0, unit) - brute) <= 1e-4);
        }
    }

    SUBCASE("budget must be positive")
    {
        CHECK_THROWS_AS(mimo_sum_rate(MimoChannelTensor(1, 1, 1), 0.0, unit), InvalidArgument);
        CHECK_THROWS_AS(mimo_sum_rate(MimoChannelTensor(1, 1, 1), 1.0, unit), AllGainsZero);
    }
}

TEST_CASE("adding array elements rarely lowers the normalized MIMO rate")
{
    // Statistical: the spherical wavefront makes single draws noisy.
    const auto grid = FrequencyGrid::uniform_bins(200e9, 800e9, 40);
    std::mt19937_64 rng(31);
    int non_decreasing = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto users = random_users(rng, 4);
        const double target = 1.0 / std::min_element(users.users().begin(), users.users().end(),
                                                     [](auto& a, auto& b) { return a.range < b.range; })
                                        ->range;
        ChannelMatrix ref(1, 1, LwaConfig{});
        ref(0, 0) = target;
        const double small = mimo_sum_rate(normalize_to_lwa(build_mimo_channel(UlaGeometry(4, 500e9), grid, users), ref),
                                           10.0, NoiseModel{1.0});
        const double large = mimo_sum_rate(normalize_to_lwa(build_mimo_channel(UlaGeometry(8, 500e9), grid, users), ref),
                                           10.0, NoiseModel{1.0});
        non_decreasing += large >= small ? 1 : 0;
    }
    CHECK(non_decreasing >= 45);
}
