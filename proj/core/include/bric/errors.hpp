#pragma once

#include <stdexcept>
#include <string>

namespace bric {

/// Raised when a normalized funnel coordinate leaves the open barrier domain.
/// The simulation engine catches this to trigger step halving and, once the
/// halving budget is exhausted, to abort the run with a violation report.
class FunnelViolation : public std::runtime_error {
public:
    FunnelViolation(int channel, double zeta)
        : std::runtime_error("funnel violation on channel " + std::to_string(channel) +
                             " (zeta = " + std::to_string(zeta) + ")"),
          channel_(channel),
          zeta_(zeta) {}

    int channel() const noexcept { return channel_; }
    double zeta() const noexcept { return zeta_; }

    // Filled in by the engine, which knows the integration time.
    double time() const noexcept { return time_; }
    void set_time(double t) noexcept { time_ = t; }

private:
    int channel_;
    double zeta_;
    double time_ = 0.0;
};

/// Non-finite value encountered while evaluating a derivative or a state.
class NumericFailure : public std::runtime_error {
public:
    explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bric
