#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dnstamper/dns/name.hpp"
#include "dnstamper/util/ipv4.hpp"
#include "dnstamper/util/text.hpp"

namespace dnstamper::filter {

/// One site reachable under one name at one address. A site may span several
/// names and several addresses; an address hosting more than one site is
/// doing name-based virtual hosting.
struct SiteBinding {
    std::string site;
    dns::DomainName name;
};

/// Who lives where. The raw material for measuring how much address-level
/// blocking takes down beyond its target.
class HostingMap {
public:
    void add(Ipv4Address address, std::string site, dns::DomainName name) {
        entries_[address].push_back({std::move(site), std::move(name)});
    }

    const std::map<Ipv4Address, std::vector<SiteBinding>>& entries() const { return entries_; }

    bool knows_site(const std::string& site) const {
        for (const auto& [addr, bindings] : entries_)
            for (const auto& b : bindings)
                if (b.site == site) return true;
        return false;
    }

    // Format: address<TAB>site<TAB>name, '#' comments.
    static HostingMap parse_text(const std::string& text,
                                 const std::string& name = "<string>") {
        std::istringstream in(text);
        HostingMap map;
        for_each_data_line_in(in, [&](std::size_t lineno, const std::string& data) {
            const auto fields = split_fields(data);
            if (fields.size() != 3)
                throw ParseError(name, lineno, "expected: address<TAB>site<TAB>name");
            try {
                map.add(Ipv4Address::parse(fields[0]), fields[1],
                        dns::DomainName::parse(fields[2]));
            } catch (const InputError& e) {
                throw ParseError(name, lineno, e.what());
            }
        });
        return map;
    }

    static HostingMap load(const std::string& path) {
        return parse_text(read_file(path), path);
    }

private:
    std::map<Ipv4Address, std::vector<SiteBinding>> entries_;
};

/// Collateral at one address that hosts at least one blocked site. Sites are
/// counted once per address however many names point at them.
struct AddressCollateral {
    Ipv4Address address;
    std::vector<std::string> blocked;     ///< intended targets at this address
    std::vector<std::string> collateral;  ///< innocent co-hosted sites
};

struct CollateralReport {
    std::vector<AddressCollateral> addresses;  ///< only touched addresses
    int touched = 0;                           ///< addresses hosting a blocked site
    int with_collateral = 0;
    double collateral_fraction = 0.0;  ///< with_collateral / touched
    int total_collateral = 0;
};

/// What address-level blocking of `blocklist` would actually take down.
inline CollateralReport virtual_host_collateral(const std::set<std::string>& blocklist,
                                                const HostingMap& hosting) {
    for (const auto& site : blocklist)
        if (!hosting.knows_site(site))
            throw InputError("blocked site " + site + " is not in the hosting map");

    CollateralReport report;
    for (const auto& [address, bindings] : hosting.entries()) {
        std::set<std::string> blocked;
        std::set<std::string> innocent;
        for (const auto& b : bindings)
            (blocklist.count(b.site) ? blocked : innocent).insert(b.site);
        if (blocked.empty()) continue;

        AddressCollateral ac;
        ac.address = address;
        ac.blocked.assign(blocked.begin(), blocked.end());
        ac.collateral.assign(innocent.begin(), innocent.end());
        ++report.touched;
        if (!ac.collateral.empty()) ++report.with_collateral;
        report.total_collateral += static_cast<int>(ac.collateral.size());
        report.addresses.push_back(std::move(ac));
    }
    if (report.touched > 0)
        report.collateral_fraction =
            static_cast<double>(report.with_collateral) / report.touched;
    return report;
}

}  // namespace dnstamper::filter
