#pragma once

#include "lwa/channel.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lwa {

/// Uniform linear array along the antenna axis, centered at the origin, with
/// half-wavelength spacing at `reference_frequency`.
class UlaGeometry {
public:
    UlaGeometry(std::size_t elements, double reference_frequency);

    std::size_t size() const noexcept { return positions_.size(); }
    double spacing() const noexcept { return spacing_; }
    double reference_frequency() const noexcept { return reference_frequency_; }
    /// Element coordinates along the axis (m), symmetric about 0.
    std::span<const double> positions() const noexcept { return positions_; }
    double aperture() const noexcept { return positions_.back() - positions_.front(); }

private:
    double reference_frequency_;
    double spacing_;
    std::vector<double> positions_;
};

/// N x K x M line-of-sight gains of a fully digital array.
class MimoChannelTensor {
public:
    MimoChannelTensor(std::size_t subbands, std::size_t users, std::size_t elements);

    std::size_t subbands() const noexcept { return subbands_; }
    std::size_t users() const noexcept { return users_; }
    std::size_t elements() const noexcept { return elements_; }
    double normalization_factor() const noexcept { return normalization_; }

    std::complex<double> operator()(std::size_t n, std::size_t k, std::size_t m) const
    {
        return entries_[(n * users_ + k) * elements_ + m];
    }
    std::complex<double>& operator()(std::size_t n, std::size_t k, std::size_t m)
    {
        return entries_[(n * users_ + k) * elements_ + m];
    }

    /// Row-major K x M block of subband n.
    std::span<const std::complex<double>> subband(std::size_t n) const
    {
        return std::span(entries_).subspan(n * users_ * elements_, users_ * elements_);
    }

    double max_magnitude() const;
    /// Multiplies every entry by `factor` and accumulates it in normalization_factor().
    void scale(double factor);

private:
    std::size_t subbands_;
    std::size_t users_;
    std::size_t elements_;
    double normalization_ = 1.0;
    std::vector<std::complex<double>> entries_;
};

/// Spherical-wavefront model valid in both near and far field:
/// entry (n, k, m) = (reference_range / d) * exp(-j 2 pi f_n d / c), with d the
/// exact distance from element m to user k. Throws InvalidArgument if a user
/// sits within half the aperture.
MimoChannelTensor build_mimo_channel(const UlaGeometry& geometry, const FrequencyGrid& grid, const UserSet& users,
                                     double reference_range = 1.0);

/// Scales the tensor so its largest tap magnitude equals the largest tap of
/// `lwa_channel`. Throws ZeroChannel if either is identically zero.
MimoChannelTensor normalize_to_lwa(MimoChannelTensor tensor, const ChannelMatrix& lwa_channel);

/// Singular values of each K x M subband matrix, descending.
std::vector<std::vector<double>> subband_singular_values(const MimoChannelTensor& tensor);

/// Joint waterfilling over every (subband, eigenmode) pair; returns the mean
/// over subbands of the per-subband eigenmode rates in bits per channel use.
double mimo_sum_rate(const MimoChannelTensor& tensor, double budget, const NoiseModel& noise);

} // namespace lwa
