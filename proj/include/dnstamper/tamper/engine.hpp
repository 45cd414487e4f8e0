#pragma once

#include <vector>

#include "dnstamper/tamper/policy.hpp"

namespace dnstamper::tamper {

/// Outcome of running one question through a resolver's policy list, before
/// any authoritative resolution happens.
struct Decision {
    enum class Kind {
        PassThrough,    ///< no policy involved; resolve normally
        Backref,        ///< shadow delegates back to the live servers
        Refused,        ///< reply REFUSED
        ServFail,       ///< reply SERVFAIL
        Silence,        ///< no reply at all
        ForgedNxdomain, ///< reply NXDOMAIN from the shadow zone
        ShadowEmpty,    ///< reply NOERROR with no answers from the shadow
        ShadowRecords,  ///< reply NOERROR with fabricated or copied records
    };
    Kind kind = Kind::PassThrough;
    std::vector<dns::ResourceRecord> records;

    /// True when the reply is served from a shadow zone the operator created
    /// (and therefore carries the aa bit, like any locally authoritative
    /// zone would).
    bool from_shadow() const {
        return kind == Kind::ForgedNxdomain || kind == Kind::ShadowEmpty ||
               kind == Kind::ShadowRecords;
    }
};

namespace detail {

constexpr std::uint32_t kFabricatedTtl = 3600;

inline bool scope_matches(const TamperScope& scope, const dns::DomainName& qname,
                          dns::RecordType qtype) {
    switch (scope.kind) {
        case TamperScope::Kind::WholeZone: return qname.is_subdomain_of(scope.name);
        case TamperScope::Kind::SingleName: return qname == scope.name;
        case TamperScope::Kind::SingleRecord:
            return qname == scope.name && qtype == scope.rtype;
    }
    return false;
}

/// Hijack and astrayment fabricate address data, so they only answer address
/// lookups (and ANY). Everything else about the name falls to the shadow.
inline bool technique_answers(Technique t, dns::RecordType qtype) {
    if (t == Technique::Hijack || t == Technique::Astrayment)
        return qtype == dns::RecordType::A || qtype == dns::RecordType::ANY;
    return true;
}

inline dns::ResourceRecord fabricate(const TamperPolicy& p, const dns::DomainName& qname) {
    dns::ResourceRecord rr;
    rr.name = qname;
    rr.ttl = kFabricatedTtl;
    if (p.cname_target)
        rr.data = dns::CnameRdata{*p.cname_target};
    else
        rr.data = dns::ARdata{*p.address};
    return rr;
}

/// Serves a query from a shadow zone's own contents: copies first, backrefs
/// next, forged negatives last (empty answer at the apex, NXDOMAIN below).
inline Decision shadow_fallback(const dns::DomainName& apex, const ShadowState& state,
                                const dns::DomainName& qname, dns::RecordType qtype) {
    switch (state.fallback) {
        case ShadowState::Fallback::Refused: return {Decision::Kind::Refused, {}};
        case ShadowState::Fallback::Silence: return {Decision::Kind::Silence, {}};
        case ShadowState::Fallback::ServFail: return {Decision::Kind::ServFail, {}};
        case ShadowState::Fallback::Forged: break;
    }
    for (const auto& backref : state.config.backrefs) {
        if (qname.is_subdomain_of(backref)) return {Decision::Kind::Backref, {}};
    }
    if (qtype == dns::RecordType::ANY) {
        std::vector<dns::ResourceRecord> all;
        for (const auto& [key, records] : state.config.copied) {
            if (key.first == qname) all.insert(all.end(), records.begin(), records.end());
        }
        if (!all.empty()) return {Decision::Kind::ShadowRecords, std::move(all)};
    } else {
        auto it = state.config.copied.find({qname, qtype});
        if (it != state.config.copied.end()) return {Decision::Kind::ShadowRecords, it->second};
    }
    if (qname == apex) return {Decision::Kind::ShadowEmpty, {}};
    return {Decision::Kind::ForgedNxdomain, {}};
}

}  // namespace detail

/// Runs the policy list against one question. First matching policy in
/// declaration order wins; queries matching no policy but landing inside a
/// shadow zone are answered from the shadow, never from live data.
inline Decision decide(const PolicySet& set, const dns::DomainName& qname,
                       dns::RecordType qtype) {
    for (const auto& p : set.policies()) {
        if (!detail::scope_matches(p.scope, qname, qtype)) continue;
        if (!detail::technique_answers(p.technique, qtype)) continue;
        switch (p.technique) {
            case Technique::Refused: return {Decision::Kind::Refused, {}};
            case Technique::ServFail: return {Decision::Kind::ServFail, {}};
            case Technique::Silence: return {Decision::Kind::Silence, {}};
            case Technique::Nxdomain:
                // Forged negatives behave exactly like the shadow fallback:
                // copies and backrefs still apply.
                return detail::shadow_fallback(*set.shadow_apex_for(qname),
                                               *set.shadow_for(qname), qname, qtype);
            case Technique::Hijack:
            case Technique::Astrayment: {
                std::vector<dns::ResourceRecord> records{detail::fabricate(p, qname)};
                if (qtype == dns::RecordType::ANY) {
                    const auto* state = set.shadow_for(qname);
                    for (const auto& [key, copies] : state->config.copied) {
                        if (key.first == qname)
                            records.insert(records.end(), copies.begin(), copies.end());
                    }
                }
                return {Decision::Kind::ShadowRecords, std::move(records)};
            }
        }
    }
    const auto* apex = set.shadow_apex_for(qname);
    if (!apex) return {Decision::Kind::PassThrough, {}};
    return detail::shadow_fallback(*apex, *set.shadow_for(qname), qname, qtype);
}

}  // namespace dnstamper::tamper
