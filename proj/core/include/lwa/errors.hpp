#pragma once

#include <stdexcept>
#include <string>

namespace lwa {

/// Frequency at or below the parallel-plate cutoff c/(2b): the guided mode is
/// evanescent and there is no propagating emission angle.
class CutoffViolation : public std::domain_error {
public:
    CutoffViolation(double frequency_hz, double cutoff_hz);

    double frequency_hz() const noexcept { return frequency_hz_; }
    double cutoff_hz() const noexcept { return cutoff_hz_; }

private:
    double frequency_hz_;
    double cutoff_hz_;
};

/// Waterfilling was asked to spread a positive budget over channels that all
/// have zero gain.
class AllGainsZero : public std::runtime_error {
public:
    AllGainsZero() : std::runtime_error("all channel gains are zero") {}
};

/// Max-tap normalization against an all-zero channel.
class ZeroChannel : public std::runtime_error {
public:
    explicit ZeroChannel(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or out-of-range input (bad geometry, length mismatch, bad grid).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Configuration file could not be parsed or failed validation.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lwa
