#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dnstamper/dns/zone.hpp"

namespace dnstamper::tamper {

/// The six reply manipulations a cooperating resolver operator can deploy.
enum class Technique {
    Refused,     ///< answer REFUSED for everything in the blocked zone
    Nxdomain,    ///< pretend the names do not exist
    Hijack,      ///< fabricate an A (or CNAME) pointing somewhere else
    Astrayment,  ///< fabricate an A pointing at an unused or loopback address
    Silence,     ///< swallow the query; the client times out
    ServFail,    ///< answer SERVFAIL for everything in the blocked zone
};

inline std::string to_string(Technique t) {
    switch (t) {
        case Technique::Refused: return "refused";
        case Technique::Nxdomain: return "nxdomain";
        case Technique::Hijack: return "hijack";
        case Technique::Astrayment: return "astray";
        case Technique::Silence: return "silence";
        case Technique::ServFail: return "servfail";
    }
    return "?";
}

inline std::optional<Technique> technique_from_string(const std::string& s) {
    if (s == "refused") return Technique::Refused;
    if (s == "nxdomain") return Technique::Nxdomain;
    if (s == "hijack") return Technique::Hijack;
    if (s == "astray") return Technique::Astrayment;
    if (s == "silence") return Technique::Silence;
    if (s == "servfail") return Technique::ServFail;
    return std::nullopt;
}

/// What a policy covers. Whatever the scope, configuring any technique means
/// standing up a local zone, so the whole subtree under `name` leaves the
/// operator's view of the real data (see ShadowState).
struct TamperScope {
    enum class Kind {
        WholeZone,     ///< name and every subdomain get the technique
        SingleName,    ///< exactly this name gets the technique
        SingleRecord,  ///< exactly this (name, rtype) gets the technique
    };
    Kind kind = Kind::WholeZone;
    dns::DomainName name;
    dns::RecordType rtype = dns::RecordType::A;  // SingleRecord only
};

struct TamperPolicy {
    TamperScope scope;
    Technique technique = Technique::Nxdomain;
    // Hijack carries an address or a CNAME target; astrayment always an
    // address.
    std::optional<Ipv4Address> address;
    std::optional<dns::DomainName> cname_target;
};

/// Records the operator copied into a shadow zone to soften collateral
/// damage, plus delegations pointing back at the real servers. `staleness`
/// is how old the copied snapshot is; copies never track the live zone.
struct ShadowConfig {
    std::map<std::pair<dns::DomainName, dns::RecordType>, std::vector<dns::ResourceRecord>> copied;
    std::vector<dns::DomainName> backrefs;
    std::uint32_t staleness_seconds = 0;
};

/// One shadow zone. Queries that reach the shadow without matching a policy
/// fall back either to forged negatives (empty at the apex, NXDOMAIN below)
/// or, for the blunt techniques, to the technique itself for the whole
/// subtree.
struct ShadowState {
    enum class Fallback { Forged, Refused, Silence, ServFail };
    Fallback fallback = Fallback::Forged;
    ShadowConfig config;
};

/// An ordered policy list plus the shadow zones those policies imply.
/// First match in declaration order wins.
class PolicySet {
public:
    void add(TamperPolicy policy) {
        validate(policy);
        const auto apex = policy.scope.name;
        if (!shadows_.count(apex)) {
            ShadowState state;
            switch (policy.technique) {
                case Technique::Refused: state.fallback = ShadowState::Fallback::Refused; break;
                case Technique::Silence: state.fallback = ShadowState::Fallback::Silence; break;
                case Technique::ServFail: state.fallback = ShadowState::Fallback::ServFail; break;
                default: state.fallback = ShadowState::Fallback::Forged; break;
            }
            shadows_.emplace(apex, std::move(state));
        }
        policies_.push_back(std::move(policy));
    }

    /// Attach a copied record to the deepest shadow zone containing it.
    void add_copy(dns::ResourceRecord rr) {
        auto* shadow = deepest_shadow(rr.name);
        if (!shadow) throw InputError("copy " + rr.name.to_string() + " is outside every shadow zone");
        shadow->config.copied[{rr.name, rr.type()}].push_back(std::move(rr));
    }

    /// Register a delegation back to the live servers for a subtree of a
    /// shadow zone.
    void add_backref(const dns::DomainName& subzone) {
        for (auto& [apex, state] : shadows_) {
            if (subzone.is_subdomain_of(apex) && subzone != apex) {
                // Deepest strictly-enclosing shadow wins; map order is not
                // depth order, so scan.
                auto* best = deepest_shadow_strictly_above(subzone);
                best->config.backrefs.push_back(subzone);
                return;
            }
        }
        throw InputError("backref " + subzone.to_string() + " is not inside any shadow zone");
    }

    void set_staleness(const dns::DomainName& apex, std::uint32_t seconds) {
        auto it = shadows_.find(apex);
        if (it == shadows_.end()) throw InputError("no shadow zone at " + apex.to_string());
        it->second.config.staleness_seconds = seconds;
    }

    const std::vector<TamperPolicy>& policies() const { return policies_; }
    const std::map<dns::DomainName, ShadowState>& shadows() const { return shadows_; }
    bool empty() const { return policies_.empty(); }

    const ShadowState* shadow_for(const dns::DomainName& qname) const {
        const dns::DomainName* best = nullptr;
        for (const auto& [apex, state] : shadows_) {
            if (qname.is_subdomain_of(apex) &&
                (!best || apex.labels().size() > best->labels().size()))
                best = &apex;
        }
        return best ? &shadows_.at(*best) : nullptr;
    }

    const dns::DomainName* shadow_apex_for(const dns::DomainName& qname) const {
        const dns::DomainName* best = nullptr;
        for (const auto& [apex, state] : shadows_) {
            if (qname.is_subdomain_of(apex) &&
                (!best || apex.labels().size() > best->labels().size()))
                best = &apex;
        }
        return best;
    }

private:
    static void validate(const TamperPolicy& p) {
        const bool forgery = p.technique == Technique::Hijack ||
                             p.technique == Technique::Astrayment ||
                             p.technique == Technique::Nxdomain;
        if (p.scope.kind == TamperScope::Kind::SingleRecord && !forgery)
            throw InputError("record-level scope only works for nxdomain, hijack and astray; " +
                             to_string(p.technique) + " always covers every record type");
        if (p.scope.kind == TamperScope::Kind::SingleRecord &&
            p.scope.rtype != dns::RecordType::A &&
            (p.technique == Technique::Hijack || p.technique == Technique::Astrayment))
            throw InputError("hijack/astray fabricate address records; record scope must be A");
        if (p.technique == Technique::Hijack && !p.address && !p.cname_target)
            throw InputError("hijack needs a target address or CNAME");
        if (p.technique == Technique::Astrayment && !p.address)
            throw InputError("astray needs a target address");
        if (p.technique != Technique::Hijack && p.technique != Technique::Astrayment &&
            (p.address || p.cname_target))
            throw InputError(to_string(p.technique) + " does not take a target");
    }

    ShadowState* deepest_shadow(const dns::DomainName& name) {
        ShadowState* best = nullptr;
        std::size_t best_depth = 0;
        for (auto& [apex, state] : shadows_) {
            if (name.is_subdomain_of(apex) && (!best || apex.labels().size() >= best_depth)) {
                best = &state;
                best_depth = apex.labels().size();
            }
        }
        return best;
    }

    ShadowState* deepest_shadow_strictly_above(const dns::DomainName& name) {
        ShadowState* best = nullptr;
        std::size_t best_depth = 0;
        for (auto& [apex, state] : shadows_) {
            if (name.is_subdomain_of(apex) && name != apex &&
                (!best || apex.labels().size() >= best_depth)) {
                best = &state;
                best_depth = apex.labels().size();
            }
        }
        return best;
    }

    std::vector<TamperPolicy> policies_;
    std::map<dns::DomainName, ShadowState> shadows_;
};

// ── policy text format ──────────────────────────────────────────────────────
//
//   zone   <apex> <technique> [target]
//   name   <fqdn> <technique> [target]
//   record <fqdn> <rtype> <technique> [target]
//   copy   <fqdn> <rtype> <data...>
//   backref <subdomain-apex>
//
// '#' comments. copy/backref configure the shadow zones created by earlier
// zone/name/record lines.

namespace detail {

inline TamperPolicy parse_policy_directive(const std::vector<std::string>& fields,
                                           const std::string& file, std::size_t line) {
    TamperPolicy p;
    std::size_t tech_at = 2;
    const std::string& kind = fields[0];
    if (kind == "zone") {
        p.scope.kind = TamperScope::Kind::WholeZone;
    } else if (kind == "name") {
        p.scope.kind = TamperScope::Kind::SingleName;
    } else {
        p.scope.kind = TamperScope::Kind::SingleRecord;
        if (fields.size() < 4) throw ParseError(file, line, "expected: record <fqdn> <rtype> <technique> [target]");
        const auto rt = dns::record_type_from_string(fields[2]);
        if (!rt || *rt == dns::RecordType::ANY)
            throw ParseError(file, line, "bad record type: " + fields[2]);
        p.scope.rtype = *rt;
        tech_at = 3;
    }
    if (fields.size() < tech_at + 1)
        throw ParseError(file, line, "missing technique");
    try {
        p.scope.name = dns::DomainName::parse(fields[1]);
    } catch (const InputError& e) {
        throw ParseError(file, line, e.what());
    }
    const auto tech = technique_from_string(fields[tech_at]);
    if (!tech) throw ParseError(file, line, "unknown technique: " + fields[tech_at]);
    p.technique = *tech;
    if (fields.size() > tech_at + 2) throw ParseError(file, line, "trailing fields");
    if (fields.size() == tech_at + 2) {
        const std::string& target = fields[tech_at + 1];
        try {
            p.address = Ipv4Address::parse(target);
        } catch (const InputError&) {
            try {
                p.cname_target = dns::DomainName::parse(target);
            } catch (const InputError& e) {
                throw ParseError(file, line, e.what());
            }
        }
    }
    return p;
}

}  // namespace detail

namespace detail {

inline void apply_policy_line(PolicySet& set, const std::string& data, const std::string& file,
                              std::size_t lineno) {
    const auto fields = split_fields(data);
    const std::string& kind = fields[0];
    try {
        if (kind == "zone" || kind == "name" || kind == "record") {
            set.add(parse_policy_directive(fields, file, lineno));
        } else if (kind == "copy") {
            if (fields.size() < 4)
                throw ParseError(file, lineno, "expected: copy <fqdn> <rtype> <data...>");
            const auto rt = dns::record_type_from_string(fields[2]);
            if (!rt || *rt == dns::RecordType::ANY)
                throw ParseError(file, lineno, "bad record type: " + fields[2]);
            dns::ResourceRecord rr;
            rr.name = dns::DomainName::parse(fields[1]);
            rr.ttl = 3600;
            rr.data = dns::parse_rdata(*rt, fields, 3, file, lineno);
            set.add_copy(std::move(rr));
        } else if (kind == "backref") {
            if (fields.size() != 2)
                throw ParseError(file, lineno, "expected: backref <subdomain-apex>");
            set.add_backref(dns::DomainName::parse(fields[1]));
        } else {
            throw ParseError(file, lineno, "unknown directive: " + kind);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const InputError& e) {
        throw ParseError(file, lineno, e.what());
    }
}

}  // namespace detail

inline PolicySet load_policy_file(const std::string& path) {
    PolicySet set;
    for_each_data_line(path, [&](std::size_t lineno, const std::string& data) {
        detail::apply_policy_line(set, data, path, lineno);
    });
    return set;
}

inline PolicySet parse_policy_text(const std::string& text,
                                   const std::string& name = "<string>") {
    std::istringstream in(text);
    PolicySet set;
    for_each_data_line_in(in, [&](std::size_t lineno, const std::string& data) {
        detail::apply_policy_line(set, data, name, lineno);
    });
    return set;
}

}  // namespace dnstamper::tamper
