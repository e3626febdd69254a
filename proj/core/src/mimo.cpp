#include "lwa/mimo.hpp"

#include "lwa/errors.hpp"
#include "lwa/optimizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace lwa {

UlaGeometry::UlaGeometry(std::size_t elements, double reference_frequency)
    : reference_frequency_(reference_frequency)
{
    if (elements == 0)
        throw InvalidArgument("array needs at least one element");
    if (!(reference_frequency > 0.0))
        throw InvalidArgument("array reference frequency must be positive");
    spacing_ = kSpeedOfLight / (2.0 * reference_frequency);
    positions_.resize(elements);
    const double center = 0.5 * static_cast<double>(elements - 1);
    for (std::size_t m = 0; m < elements; ++m)
        positions_[m] = (static_cast<double>(m) - center) * spacing_;
}

MimoChannelTensor::MimoChannelTensor(std::size_t subbands, std::size_t users, std::size_t elements)
    : subbands_(subbands), users_(users), elements_(elements), entries_(subbands * users * elements)
{
}

double MimoChannelTensor::max_magnitude() const
{
    double m = 0.0;
    for (const auto& h : entries_)
        m = std::max(m, std::abs(h));
    return m;
}

void MimoChannelTensor::scale(double factor)
{
    for (auto& h : entries_)
        h *= factor;
    normalization_ *= factor;
}

MimoChannelTensor build_mimo_channel(const UlaGeometry& geometry, const FrequencyGrid& grid, const UserSet& users,
                                     double reference_range)
{
    const double half_aperture = 0.5 * geometry.aperture();
    for (const auto& u : users.users())
        if (!(u.range > half_aperture))
            throw InvalidArgument("user range must exceed half the array aperture");

    MimoChannelTensor tensor(grid.size(), users.size(), geometry.size());
    std::vector<double> distance(users.size() * geometry.size());
    for (std::size_t k = 0; k < users.size(); ++k) {
        const double ux = users[k].range * std::cos(users[k].angle);
        const double uy = users[k].range * std::sin(users[k].angle);
        for (std::size_t m = 0; m < geometry.size(); ++m)
            distance[k * geometry.size() + m] = std::hypot(ux - geometry.positions()[m], uy);
    }
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double k0 = wavenumber(grid[n]);
        for (std::size_t k = 0; k < users.size(); ++k)
            for (std::size_t m = 0; m < geometry.size(); ++m) {
                const double d = distance[k * geometry.size() + m];
                tensor(n, k, m) = std::polar(reference_range / d, -k0 * d);
            }
    }
    return tensor;
}

MimoChannelTensor normalize_to_lwa(MimoChannelTensor tensor, const ChannelMatrix& lwa_channel)
{
    const double target = lwa_channel.max_magnitude();
    const double current = tensor.max_magnitude();
    if (!(target > 0.0))
        throw ZeroChannel("LWA channel has no nonzero tap");
    if (!(current > 0.0))
        throw ZeroChannel("MIMO channel has no nonzero tap");
    if (current != target)
        tensor.scale(target / current);
    return tensor;
}

std::vector<std::vector<double>> subband_singular_values(const MimoChannelTensor& tensor)
{
    using Matrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    std::vector<std::vector<double>> result(tensor.subbands());
    for (std::size_t n = 0; n < tensor.subbands(); ++n) {
        const auto block = tensor.subband(n);
        const Eigen::Map<const Matrix> H(block.data(), static_cast<Eigen::Index>(tensor.users()),
                                         static_cast<Eigen::Index>(tensor.elements()));
        const Eigen::JacobiSVD<Matrix> svd(H);
        const auto& s = svd.singularValues();
        result[n].assign(s.data(), s.data() + s.size());
    }
    return result;
}

double mimo_sum_rate(const MimoChannelTensor& tensor, double budget, const NoiseModel& noise)
{
    if (!(budget > 0.0))
        throw InvalidArgument("MIMO power budget must be positive");
    const auto singular = subband_singular_values(tensor);

    std::vector<double> pooled;
    for (const auto& values : singular)
        for (double s : values)
            pooled.push_back(s * s);
    const auto powers = waterfill(pooled, budget, noise);

    double total = 0.0;
    for (std::size_t j = 0; j < pooled.size(); ++j)
        total += subband_rate_from_gain(pooled[j], powers[j], noise);
    return total / static_cast<double>(tensor.subbands());
}

} // namespace lwa
