#pragma once

#include <cstdint>

namespace dnstamper::sim {

/// Simulated time in microseconds. Tests advance it explicitly, so timeout
/// behavior is exercised without real waiting.
class VirtualClock {
public:
    std::uint64_t now_us() const { return now_us_; }
    void advance(std::uint64_t us) { now_us_ += us; }

private:
    std::uint64_t now_us_ = 0;
};

/// Link characteristics between prober and resolver.
struct TransportParams {
    std::uint64_t latency_us = 10'000;   ///< one-way delay
    double loss_probability = 0.0;       ///< chance an exchange is dropped
    std::uint64_t timeout_us = 2'000'000;///< how long the client waits
};

}  // namespace dnstamper::sim
