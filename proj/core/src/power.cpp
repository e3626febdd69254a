#include "lwa/power.hpp"

#include "lwa/errors.hpp"

#include <numeric>

namespace lwa {

PowerAllocation::PowerAllocation(std::vector<double> powers, double budget)
    : powers_(std::move(powers)), budget_(budget)
{
    if (!(budget_ >= 0.0))
        throw InvalidArgument("power budget must be non-negative");
    for (double p : powers_)
        if (!(p >= 0.0))
            throw InvalidArgument("subband powers must be non-negative");
    if (total() > budget_ * (1.0 + 1e-9) + 1e-300)
        throw InvalidArgument("subband powers exceed the total budget");
}

PowerAllocation PowerAllocation::uniform(std::size_t subbands, double budget)
{
    if (subbands == 0)
        throw InvalidArgument("power allocation needs at least one subband");
    return PowerAllocation(std::vector<double>(subbands, budget / static_cast<double>(subbands)), budget);
}

double PowerAllocation::total() const
{
    return std::accumulate(powers_.begin(), powers_.end(), 0.0);
}

} // namespace lwa
