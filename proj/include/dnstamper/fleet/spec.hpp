#pragma once

#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dnstamper/dns/zone.hpp"
#include "dnstamper/probe/aggregate.hpp"
#include "dnstamper/sim/fleet.hpp"
#include "dnstamper/tamper/policy.hpp"
#include "dnstamper/util/ipv4.hpp"
#include "dnstamper/util/text.hpp"

namespace dnstamper::fleet {

/// One provider row from a fleet spec file. The flags describe what the
/// provider's redirect machinery looks like from a browser or a mail queue,
/// which DNS answers alone cannot tell apart.
struct ProviderSpec {
    std::string id;
    std::string archetype;
    std::string policy_file;  ///< relative to the spec file, "-" for none
    int resolvers = 1;        ///< endpoints; only the first carries the policy
    bool explains_blocking = false;  ///< redirect target says why it blocked
    bool sets_cookie = false;        ///< notice page plants a tracking cookie
    bool mail_privacy_own = false;   ///< forged MX delivers to own machines
};

/// One name the survey reports on. `ordered_blocked` marks names the blocking
/// order covers; reports score those names inversely (reachable is a failure).
struct SurveyName {
    dns::DomainName name;
    bool ordered_blocked = false;
};

// ── fleet spec text format ──────────────────────────────────────────────────
//
//   zones           <path relative to the spec file>
//   special-address <addr or cidr>
//   survey-name     <fqdn> [ordered-blocked]
//   provider <id> <archetype> <policy-file|-> [resolvers=N] [explains]
//            [cookie] [mail-privacy=own|none]
//
// '#' comments. Endpoint addresses are implicit: 192.0.2.1 and up, in file
// order, second and further endpoints of one provider immediately after its
// first.

class FleetSpec {
public:
    std::string zones_file;
    std::vector<std::string> special_addresses;
    std::vector<SurveyName> survey_names;
    std::vector<ProviderSpec> providers;

    const ProviderSpec* find(const std::string& id) const {
        for (const auto& p : providers)
            if (p.id == id) return &p;
        return nullptr;
    }

    const ProviderSpec& at(const std::string& id) const {
        const auto* p = find(id);
        if (!p) throw InputError("provider " + id + " is not in the fleet spec");
        return *p;
    }

    static FleetSpec parse_text(const std::string& text,
                                const std::string& name = "<string>") {
        std::istringstream in(text);
        FleetSpec spec;
        for_each_data_line_in(in, [&](std::size_t lineno, const std::string& data) {
            detail_parse_line(spec, data, name, lineno);
        });
        if (spec.zones_file.empty()) throw ParseError(name, 0, "missing zones directive");
        if (spec.providers.empty()) throw ParseError(name, 0, "no providers declared");
        return spec;
    }

    static FleetSpec load(const std::string& path) {
        return parse_text(read_file(path), path);
    }

private:
    static void detail_parse_line(FleetSpec& spec, const std::string& data,
                                  const std::string& file, std::size_t lineno) {
        const auto fields = split_fields(data);
        const std::string& kind = fields[0];
        try {
            if (kind == "zones") {
                if (fields.size() != 2) throw ParseError(file, lineno, "expected: zones <path>");
                if (!spec.zones_file.empty())
                    throw ParseError(file, lineno, "duplicate zones directive");
                spec.zones_file = fields[1];
            } else if (kind == "special-address") {
                if (fields.size() != 2)
                    throw ParseError(file, lineno, "expected: special-address <addr or cidr>");
                Ipv4Network::parse(fields[1]);  // validate now, store as text
                spec.special_addresses.push_back(fields[1]);
            } else if (kind == "survey-name") {
                if (fields.size() < 2 || fields.size() > 3)
                    throw ParseError(file, lineno, "expected: survey-name <fqdn> [ordered-blocked]");
                SurveyName sn;
                sn.name = dns::DomainName::parse(fields[1]);
                if (fields.size() == 3) {
                    if (fields[2] != "ordered-blocked")
                        throw ParseError(file, lineno, "unknown survey-name flag: " + fields[2]);
                    sn.ordered_blocked = true;
                }
                spec.survey_names.push_back(std::move(sn));
            } else if (kind == "provider") {
                spec.providers.push_back(parse_provider(spec, fields, file, lineno));
            } else {
                throw ParseError(file, lineno, "unknown directive: " + kind);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(file, lineno, e.what());
        }
    }

    static ProviderSpec parse_provider(const FleetSpec& spec,
                                       const std::vector<std::string>& fields,
                                       const std::string& file, std::size_t lineno) {
        if (fields.size() < 4)
            throw ParseError(file, lineno,
                             "expected: provider <id> <archetype> <policy-file|-> [options]");
        ProviderSpec p;
        p.id = fields[1];
        p.archetype = fields[2];
        p.policy_file = fields[3];
        if (spec.find(p.id))
            throw ParseError(file, lineno, "duplicate provider id: " + p.id);
        for (std::size_t i = 4; i < fields.size(); ++i) {
            const std::string& opt = fields[i];
            if (opt == "explains") {
                p.explains_blocking = true;
            } else if (opt == "cookie") {
                p.sets_cookie = true;
            } else if (opt.rfind("resolvers=", 0) == 0) {
                p.resolvers = static_cast<int>(
                    parse_unsigned(opt.substr(10), "resolver count"));
                if (p.resolvers < 1)
                    throw ParseError(file, lineno, "resolver count must be at least 1");
            } else if (opt == "mail-privacy=own") {
                p.mail_privacy_own = true;
            } else if (opt == "mail-privacy=none") {
                p.mail_privacy_own = false;
            } else {
                throw ParseError(file, lineno, "unknown provider option: " + opt);
            }
        }
        return p;
    }
};

/// Everything a spec file stands up: the shared ground truth, one resolver
/// per declared endpoint, and the bookkeeping the probe pipeline needs to
/// talk to them and to fold endpoints back into providers.
struct BuiltFleet {
    std::shared_ptr<const dns::AuthoritativeTree> tree;
    std::shared_ptr<sim::VirtualClock> clock;
    sim::ResolverFleet resolvers;
    probe::ProviderMap provider_map;
    SpecialAddressSet specials;
    FleetSpec spec;

    std::vector<Ipv4Address> endpoint_addresses() const {
        std::vector<Ipv4Address> out;
        for (const auto& r : resolvers.resolvers()) out.push_back(r.address);
        return out;
    }
};

/// Endpoint addresses are handed out from here, in spec order.
inline constexpr Ipv4Address kFirstEndpointAddress{192, 0, 2, 1};

inline BuiltFleet build_fleet(const std::string& spec_path) {
    FleetSpec spec = FleetSpec::load(spec_path);
    const std::filesystem::path base = std::filesystem::path(spec_path).parent_path();

    const auto records = dns::load_zone_file((base / spec.zones_file).string());
    auto tree = std::make_shared<const dns::AuthoritativeTree>(
        dns::AuthoritativeTree::build(records));

    for (const auto& sn : spec.survey_names) {
        const auto names = tree->all_names();
        if (std::find(names.begin(), names.end(), sn.name) == names.end())
            throw InputError("survey name " + sn.name.to_string() +
                             " does not exist in the authoritative data");
    }

    auto clock = std::make_shared<sim::VirtualClock>();
    BuiltFleet out{tree, clock, sim::ResolverFleet(tree, clock), {}, {}, std::move(spec)};

    for (const auto& cidr : out.spec.special_addresses) out.specials.add(cidr);

    std::uint32_t next = kFirstEndpointAddress.value();
    for (const auto& p : out.spec.providers) {
        tamper::PolicySet policies;
        if (p.policy_file != "-")
            policies = tamper::load_policy_file((base / p.policy_file).string());
        for (int i = 1; i <= p.resolvers; ++i) {
            if ((next & 0xff) == 0xff)
                throw InputError("fleet too large for the endpoint address block");
            const Ipv4Address address{next++};
            // Only the first endpoint tampers; later ones model the part of
            // the provider's resolver park that was never converted.
            out.resolvers.add_resolver(p.id + "-r" + std::to_string(i), p.id, address,
                                       i == 1 ? policies : tamper::PolicySet{});
            out.provider_map.add(address, p.id);
        }
    }
    return out;
}

}  // namespace dnstamper::fleet
