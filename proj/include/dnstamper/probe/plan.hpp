#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dnstamper/sim/resolver.hpp"

namespace dnstamper::probe {

/// What to ask every resolver under survey. The record types default to the
/// set that separates the known manipulation styles: A carries the blocking
/// itself, MX shows mail fallout, NS/SOA expose forged zones, ANY catches
/// operators who only rewrote address lookups.
struct ProbePlan {
    std::vector<dns::DomainName> names;
    std::vector<dns::RecordType> rtypes = {dns::RecordType::A, dns::RecordType::ANY,
                                           dns::RecordType::MX, dns::RecordType::NS,
                                           dns::RecordType::SOA};
    std::uint64_t timeout_us = 2'000'000;
    int retries = 1;       ///< extra attempts after a timeout
    int concurrency = 16;  ///< parallel queries; forced to 1 on deterministic transports
    std::uint32_t seed = 1;
};

/// The ground truth to judge replies against: what a resolver with no
/// policies would answer for every question in the plan.
class ReferenceSet {
public:
    using Answer = sim::RecursiveResolver::Resolution;

    static ReferenceSet build(const dns::AuthoritativeTree& tree, const ProbePlan& plan) {
        const sim::RecursiveResolver clean(&tree, {});
        ReferenceSet out;
        for (const auto& name : plan.names)
            for (const auto rtype : plan.rtypes)
                out.answers_[{name, rtype}] = clean.resolve(name, rtype);
        return out;
    }

    const Answer* find(const dns::DomainName& name, dns::RecordType rtype) const {
        auto it = answers_.find({name, rtype});
        return it == answers_.end() ? nullptr : &it->second;
    }

    const Answer& at(const dns::DomainName& name, dns::RecordType rtype) const {
        const auto* a = find(name, rtype);
        if (!a)
            throw InputError("no reference answer for " + name.to_string() + " " +
                             to_string(rtype));
        return *a;
    }

    const std::map<std::pair<dns::DomainName, dns::RecordType>, Answer>& all() const {
        return answers_;
    }

private:
    std::map<std::pair<dns::DomainName, dns::RecordType>, Answer> answers_;
};

}  // namespace dnstamper::probe
