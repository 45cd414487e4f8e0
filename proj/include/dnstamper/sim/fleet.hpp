#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "dnstamper/sim/resolver.hpp"

namespace dnstamper::sim {

/// One endpoint of the simulated fleet. Providers with split-brain setups
/// contribute several entries under one provider id.
struct FleetResolver {
    std::string id;        ///< unique endpoint id, e.g. "p07-r1"
    std::string provider;  ///< owning provider id
    Ipv4Address address;   ///< simulated client-facing address
    std::shared_ptr<const RecursiveResolver> resolver;
};

/// The population under survey: a shared authoritative tree plus every
/// provider's recursive resolvers.
class ResolverFleet {
public:
    ResolverFleet(std::shared_ptr<const dns::AuthoritativeTree> tree,
                  std::shared_ptr<const VirtualClock> clock)
        : tree_(std::move(tree)), clock_(std::move(clock)) {}

    void add_resolver(std::string id, std::string provider, Ipv4Address address,
                      tamper::PolicySet policies, ResolverConfig config = {}) {
        resolvers_.push_back(FleetResolver{
            std::move(id), std::move(provider), address,
            std::make_shared<RecursiveResolver>(tree_.get(), std::move(policies), config,
                                                clock_.get())});
    }

    const std::vector<FleetResolver>& resolvers() const { return resolvers_; }
    const dns::AuthoritativeTree& tree() const { return *tree_; }
    std::shared_ptr<const dns::AuthoritativeTree> tree_ptr() const { return tree_; }

    const FleetResolver* find(const std::string& id) const {
        for (const auto& r : resolvers_)
            if (r.id == id) return &r;
        return nullptr;
    }

    std::vector<std::string> provider_ids() const {
        std::vector<std::string> out;
        for (const auto& r : resolvers_)
            if (std::find(out.begin(), out.end(), r.provider) == out.end())
                out.push_back(r.provider);
        return out;
    }

private:
    std::shared_ptr<const dns::AuthoritativeTree> tree_;
    std::shared_ptr<const VirtualClock> clock_;
    std::vector<FleetResolver> resolvers_;
};

}  // namespace dnstamper::sim
