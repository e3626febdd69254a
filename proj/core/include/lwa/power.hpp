#pragma once

#include <span>
#include <vector>

namespace lwa {

/// Per-subband transmit powers under a total budget.
///
/// Invariants: every entry is >= 0 and the entries sum to at most the budget.
class PowerAllocation {
public:
    PowerAllocation() = default;
    PowerAllocation(std::vector<double> powers, double budget);

    /// budget/N on every subband.
    static PowerAllocation uniform(std::size_t subbands, double budget);

    std::span<const double> powers() const noexcept { return powers_; }
    double operator[](std::size_t n) const { return powers_[n]; }
    std::size_t size() const noexcept { return powers_.size(); }
    double budget() const noexcept { return budget_; }
    double total() const;

    friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;

private:
    std::vector<double> powers_;
    double budget_ = 0.0;
};

} // namespace lwa
