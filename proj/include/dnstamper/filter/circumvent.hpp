#pragma once

#include <array>
#include <string>
#include <vector>

#include "dnstamper/util/errors.hpp"

namespace dnstamper::filter {

enum class BlockingKind { L3, L4, DnsTamper, FilterProxy };

inline constexpr std::array<BlockingKind, 4> kAllBlockings = {
    BlockingKind::L3, BlockingKind::L4, BlockingKind::DnsTamper, BlockingKind::FilterProxy};

inline std::string to_string(BlockingKind b) {
    switch (b) {
        case BlockingKind::L3: return "l3-filter";
        case BlockingKind::L4: return "l4-filter";
        case BlockingKind::DnsTamper: return "dns-tamper";
        case BlockingKind::FilterProxy: return "filter-proxy";
    }
    return "?";
}

enum class CircumventionKind {
    Mirroring,
    ExtraDomain,
    IpChange,
    PortChange,
    WebService,
    ArchiveCache,
    IpTunnel,
    AltProxy,
    TransNationalDialin,
    Encryption,
    DirectIp,
};

inline constexpr std::array<CircumventionKind, 11> kAllCircumventions = {
    CircumventionKind::Mirroring,    CircumventionKind::ExtraDomain,
    CircumventionKind::IpChange,     CircumventionKind::PortChange,
    CircumventionKind::WebService,   CircumventionKind::ArchiveCache,
    CircumventionKind::IpTunnel,     CircumventionKind::AltProxy,
    CircumventionKind::TransNationalDialin, CircumventionKind::Encryption,
    CircumventionKind::DirectIp,
};

inline std::string to_string(CircumventionKind c) {
    switch (c) {
        case CircumventionKind::Mirroring: return "mirroring";
        case CircumventionKind::ExtraDomain: return "extra-domain";
        case CircumventionKind::IpChange: return "ip-change";
        case CircumventionKind::PortChange: return "port-change";
        case CircumventionKind::WebService: return "web-service";
        case CircumventionKind::ArchiveCache: return "archive-cache";
        case CircumventionKind::IpTunnel: return "ip-tunnel";
        case CircumventionKind::AltProxy: return "alt-proxy";
        case CircumventionKind::TransNationalDialin: return "transnational-dialin";
        case CircumventionKind::Encryption: return "encryption";
        case CircumventionKind::DirectIp: return "direct-ip";
    }
    return "?";
}

enum class Effect { Defeats, DefeatsConditionally, Ineffective };

inline std::string to_string(Effect e) {
    switch (e) {
        case Effect::Defeats: return "defeats";
        case Effect::DefeatsConditionally: return "conditional";
        case Effect::Ineffective: return "ineffective";
    }
    return "?";
}

/// What using the technique demands of an ordinary user. Uniform per
/// technique: the cost of publishing a mirror or dialing abroad does not
/// depend on which filter is in the way.
enum class UserEffort { Transparent, PerUse, OneTimeSetup, Prohibitive };

inline std::string to_string(UserEffort e) {
    switch (e) {
        case UserEffort::Transparent: return "transparent";
        case UserEffort::PerUse: return "per-use";
        case UserEffort::OneTimeSetup: return "one-time-setup";
        case UserEffort::Prohibitive: return "prohibitive";
    }
    return "?";
}

/// One cell of the matrix. `condition` is nonempty exactly for
/// DefeatsConditionally.
struct CircumventionCell {
    Effect effect = Effect::Ineffective;
    std::string condition;
    UserEffort effort = UserEffort::PerUse;
};

namespace detail {

inline UserEffort circumvention_effort(CircumventionKind c) {
    switch (c) {
        case CircumventionKind::IpChange: return UserEffort::Transparent;
        case CircumventionKind::AltProxy: return UserEffort::OneTimeSetup;
        case CircumventionKind::Encryption: return UserEffort::OneTimeSetup;
        case CircumventionKind::IpTunnel: return UserEffort::Prohibitive;
        case CircumventionKind::TransNationalDialin: return UserEffort::Prohibitive;
        default: return UserEffort::PerUse;
    }
}

}  // namespace detail

/// The whole judgment matrix, total over 4 blockings x 11 techniques.
/// Address-keyed filters shrug off name tricks, name-keyed tampering shrugs
/// off address tricks, and indirection (proxies, tunnels, services abroad)
/// beats everything it is available for.
inline CircumventionCell circumvention_effect(BlockingKind b, CircumventionKind c) {
    using B = BlockingKind;
    using C = CircumventionKind;
    CircumventionCell cell;
    cell.effort = detail::circumvention_effort(c);

    auto defeats = [&] { cell.effect = Effect::Defeats; };
    auto ineffective = [&] { cell.effect = Effect::Ineffective; };
    auto conditional = [&](std::string cond) {
        cell.effect = Effect::DefeatsConditionally;
        cell.condition = std::move(cond);
    };

    switch (c) {
        case C::Mirroring:
        case C::WebService:
        case C::ArchiveCache:
            // Content fetched from somewhere the filter never heard of.
            defeats();
            break;
        case C::ExtraDomain:
            // New names, same addresses.
            if (b == B::L3 || b == B::L4)
                ineffective();
            else
                defeats();
            break;
        case C::IpChange:
            // Same names, new addresses.
            if (b == B::L3 || b == B::L4)
                conditional("works once the new address propagates and until filters learn it");
            else
                ineffective();
            break;
        case C::PortChange:
            if (b == B::L4)
                defeats();
            else
                ineffective();
            break;
        case C::IpTunnel:
            conditional("requires a tunnel-enabled account, which nobody offers end users");
            break;
        case C::AltProxy:
            defeats();
            break;
        case C::TransNationalDialin:
            conditional("requires dial-up into a foreign network at long-distance rates");
            break;
        case C::Encryption:
            if (b == B::L4)
                conditional("needs an unfiltered encrypted port at the far end");
            else if (b == B::FilterProxy)
                conditional("URL inspection fails unless encrypted traffic is forced through the proxy");
            else
                ineffective();
            break;
        case C::DirectIp:
            if (b == B::DnsTamper)
                conditional("fails for sites behind name-based virtual hosting");
            else if (b == B::FilterProxy)
                conditional("address-form URLs dodge host patterns but fail virtual hosting");
            else
                ineffective();
            break;
    }
    return cell;
}

/// Text rendering of the full matrix, one row per technique, conditional
/// footnotes below. Deterministic; frozen as a golden file.
inline std::string render_circumvention_matrix() {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"technique", "effort", "l3-filter", "l4-filter", "dns-tamper",
                    "filter-proxy"});
    std::vector<std::string> footnotes;
    for (const auto c : kAllCircumventions) {
        std::vector<std::string> row{to_string(c),
                                     to_string(detail::circumvention_effort(c))};
        for (const auto b : kAllBlockings) {
            const auto cell = circumvention_effect(b, c);
            row.push_back(to_string(cell.effect));
            if (cell.effect == Effect::DefeatsConditionally)
                footnotes.push_back("  " + to_string(c) + " vs " + to_string(b) + ": " +
                                    cell.condition);
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size());
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    }
    std::string out = "Circumvention effectiveness by blocking technique\n";
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) line += "  ";
            line += row[i];
            if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
        }
        out += line + "\n";
    }
    out += "conditions:\n";
    for (const auto& f : footnotes) out += f + "\n";
    return out;
}

}  // namespace dnstamper::filter
