#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dnstamper/util/ipv4.hpp"
#include "dnstamper/util/text.hpp"

namespace dnstamper::filter {

/// One packet-filter entry. Layer-3 rules match an address in any service;
/// layer-4 rules additionally pin one destination port. The address names
/// the filtered host: outbound rules match packets going to it, inbound
/// rules packets coming from it.
struct FilterRule {
    enum class Layer { L3, L4 };
    enum class Direction { Inbound, Outbound };

    Layer layer = Layer::L3;
    Direction direction = Direction::Outbound;
    Ipv4Address address;
    std::optional<std::uint16_t> port;  ///< required for L4, forbidden for L3
};

/// A client's connection attempt to one service on one server. The decision
/// covers the whole handshake: the outbound leg to the server and the
/// inbound replies from it.
struct Flow {
    Ipv4Address client;
    Ipv4Address server;
    std::uint16_t server_port = 0;
};

enum class FlowStatus {
    Delivered,
    DeniedImmediate,  ///< dropped on the way out: "Couldn't connect"
    DeniedTimeout,    ///< replies dropped on the way back: "Connection timed out"
};

inline std::string to_string(FlowStatus s) {
    switch (s) {
        case FlowStatus::Delivered: return "delivered";
        case FlowStatus::DeniedImmediate: return "denied-immediate";
        case FlowStatus::DeniedTimeout: return "denied-timeout";
    }
    return "?";
}

/// `syn_observable` records whether the server still sees the connection
/// attempt: an inbound-only filter lets the SYN through and only kills the
/// answers, so the blocked site can watch who is knocking.
struct FlowOutcome {
    FlowStatus status = FlowStatus::Delivered;
    bool syn_observable = true;
};

namespace detail {

inline bool rule_matches(const FilterRule& r, const Flow& flow) {
    if (r.address != flow.server) return false;
    return r.layer == FilterRule::Layer::L3 || *r.port == flow.server_port;
}

}  // namespace detail

/// First matching deny on either leg decides; the handshake needs both.
inline FlowOutcome flow_decision(const std::vector<FilterRule>& rules, const Flow& flow) {
    bool outbound_denied = false;
    bool inbound_denied = false;
    for (const auto& r : rules) {
        if (!detail::rule_matches(r, flow)) continue;
        if (r.direction == FilterRule::Direction::Outbound)
            outbound_denied = true;
        else
            inbound_denied = true;
    }
    if (outbound_denied) return {FlowStatus::DeniedImmediate, false};
    if (inbound_denied) return {FlowStatus::DeniedTimeout, true};
    return {FlowStatus::Delivered, true};
}

// ── rule file format ────────────────────────────────────────────────────────
//
//   l3 deny <inbound|outbound> <addr>
//   l4 deny <inbound|outbound> <addr> <port>
//
// '#' comments.

inline std::vector<FilterRule> parse_filter_rules(const std::string& text,
                                                  const std::string& name = "<string>") {
    std::istringstream in(text);
    std::vector<FilterRule> rules;
    for_each_data_line_in(in, [&](std::size_t lineno, const std::string& data) {
        const auto fields = split_fields(data);
        try {
            FilterRule r;
            if (fields[0] == "l3") {
                if (fields.size() != 4)
                    throw ParseError(name, lineno, "expected: l3 deny <inbound|outbound> <addr>");
                r.layer = FilterRule::Layer::L3;
            } else if (fields[0] == "l4") {
                if (fields.size() != 5)
                    throw ParseError(name, lineno,
                                     "expected: l4 deny <inbound|outbound> <addr> <port>");
                r.layer = FilterRule::Layer::L4;
            } else {
                throw ParseError(name, lineno, "unknown rule layer: " + fields[0]);
            }
            if (fields[1] != "deny") throw ParseError(name, lineno, "only deny rules exist");
            if (fields[2] == "inbound")
                r.direction = FilterRule::Direction::Inbound;
            else if (fields[2] == "outbound")
                r.direction = FilterRule::Direction::Outbound;
            else
                throw ParseError(name, lineno, "bad direction: " + fields[2]);
            r.address = Ipv4Address::parse(fields[3]);
            if (r.layer == FilterRule::Layer::L4) {
                const auto port = parse_unsigned(fields[4], "port");
                if (port > 65535) throw ParseError(name, lineno, "port out of range");
                r.port = static_cast<std::uint16_t>(port);
            }
            rules.push_back(r);
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(name, lineno, e.what());
        }
    });
    return rules;
}

inline std::vector<FilterRule> load_filter_rules(const std::string& path) {
    return parse_filter_rules(read_file(path), path);
}

}  // namespace dnstamper::filter
