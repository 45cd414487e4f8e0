#pragma once

#include <map>
#include <mutex>
#include <random>
#include <vector>

#include "dnstamper/dns/wire.hpp"
#include "dnstamper/sim/fleet.hpp"

namespace dnstamper::probe {

/// One request/response attempt as the client saw it.
struct ExchangeResult {
    bool replied = false;             ///< false: the timeout elapsed in silence
    std::vector<std::uint8_t> reply;  ///< raw wire bytes when replied
    std::uint64_t elapsed_us = 0;
};

/// Moves raw query bytes to a resolver and back. Implementations exist for
/// the in-process fleet and for real UDP sockets; the prober cannot tell
/// them apart.
class QueryTransport {
public:
    virtual ~QueryTransport() = default;
    virtual ExchangeResult exchange(Ipv4Address resolver,
                                    const std::vector<std::uint8_t>& query,
                                    std::uint64_t timeout_us) = 0;

    /// Deterministic transports are probed sequentially so a fixed seed
    /// reproduces the exact transcript.
    virtual bool deterministic() const { return false; }
};

/// Runs queries against the in-process fleet under a virtual clock. Loss is
/// drawn from a seeded generator, so runs replay exactly. Queries that do
/// not decode are dropped silently, like a nameserver ignoring junk.
class VirtualTransport : public QueryTransport {
public:
    VirtualTransport(const sim::ResolverFleet* fleet, sim::VirtualClock* clock,
                     sim::TransportParams params = {}, std::uint32_t seed = 1)
        : fleet_(fleet), clock_(clock), params_(params), rng_(seed) {
        for (const auto& r : fleet_->resolvers()) by_address_.emplace(r.address, &r);
    }

    ExchangeResult exchange(Ipv4Address resolver, const std::vector<std::uint8_t>& query,
                            std::uint64_t timeout_us) override {
        std::lock_guard lock(mutex_);
        auto it = by_address_.find(resolver);
        if (it == by_address_.end())
            throw InputError("no simulated resolver at " + resolver.to_string());

        auto lost = [&] { return loss_(rng_) < params_.loss_probability; };
        if (lost()) return time_out(timeout_us);

        dns::DnsMessage request;
        try {
            request = dns::decode(query);
        } catch (const DecodeError&) {
            return time_out(timeout_us);
        }
        const auto response = it->second->resolver->handle_query(request);
        if (!response || lost()) return time_out(timeout_us);

        ExchangeResult out;
        out.replied = true;
        out.reply = dns::encode(*response);
        out.elapsed_us = 2 * params_.latency_us;
        clock_->advance(out.elapsed_us);
        return out;
    }

    bool deterministic() const override { return true; }

private:
    ExchangeResult time_out(std::uint64_t timeout_us) {
        clock_->advance(timeout_us);
        return ExchangeResult{false, {}, timeout_us};
    }

    const sim::ResolverFleet* fleet_;
    sim::VirtualClock* clock_;
    sim::TransportParams params_;
    std::mt19937 rng_;
    std::uniform_real_distribution<double> loss_{0.0, 1.0};
    std::map<Ipv4Address, const sim::FleetResolver*> by_address_;
    std::mutex mutex_;
};

}  // namespace dnstamper::probe
