#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dnstamper/dns/message.hpp"
#include "dnstamper/util/text.hpp"

namespace dnstamper::dns {

// Zone data lives in a line-oriented text form:
//
//   name TTL TYPE data...
//
// one record per line, '#' starts a comment. SOA marks a zone apex; every
// record belongs to the deepest apex whose subtree contains it.

/// Parses one rdata token list for `type`. Shared by zone files and tamper
/// policy `copy` directives.
inline Rdata parse_rdata(RecordType type, const std::vector<std::string>& fields,
                         std::size_t first, const std::string& file, std::size_t line) {
    const std::size_t n = fields.size() - first;
    auto need = [&](std::size_t want) {
        if (n != want)
            throw ParseError(file, line,
                             "expected " + std::to_string(want) + " data fields for " +
                                 to_string(type) + ", got " + std::to_string(n));
    };
    try {
        switch (type) {
            case RecordType::A:
                need(1);
                return ARdata{Ipv4Address::parse(fields[first])};
            case RecordType::NS:
                need(1);
                return NsRdata{DomainName::parse(fields[first])};
            case RecordType::CNAME:
                need(1);
                return CnameRdata{DomainName::parse(fields[first])};
            case RecordType::MX:
                need(2);
                return MxRdata{
                    static_cast<std::uint16_t>(parse_unsigned(fields[first], "MX preference")),
                    DomainName::parse(fields[first + 1])};
            case RecordType::SOA: {
                need(7);
                SoaRdata soa;
                soa.mname = DomainName::parse(fields[first]);
                soa.rname = DomainName::parse(fields[first + 1]);
                soa.serial = static_cast<std::uint32_t>(parse_unsigned(fields[first + 2], "serial"));
                soa.refresh = static_cast<std::uint32_t>(parse_unsigned(fields[first + 3], "refresh"));
                soa.retry = static_cast<std::uint32_t>(parse_unsigned(fields[first + 4], "retry"));
                soa.expire = static_cast<std::uint32_t>(parse_unsigned(fields[first + 5], "expire"));
                soa.minimum = static_cast<std::uint32_t>(parse_unsigned(fields[first + 6], "minimum"));
                return soa;
            }
            case RecordType::ANY:
                break;
        }
    } catch (const ParseError&) {
        throw;
    } catch (const InputError& e) {
        throw ParseError(file, line, e.what());
    }
    throw ParseError(file, line, "records cannot have type ANY");
}

inline ResourceRecord parse_zone_line(const std::string& data, const std::string& file,
                                      std::size_t line) {
    const auto fields = split_fields(data);
    if (fields.size() < 4)
        throw ParseError(file, line, "expected: name TTL TYPE data...");
    ResourceRecord rr;
    try {
        rr.name = DomainName::parse(fields[0]);
    } catch (const InputError& e) {
        throw ParseError(file, line, e.what());
    }
    rr.ttl = static_cast<std::uint32_t>(parse_unsigned(fields[1], "TTL"));
    const auto type = record_type_from_string(fields[2]);
    if (!type) throw ParseError(file, line, "unknown record type: " + fields[2]);
    rr.data = parse_rdata(*type, fields, 3, file, line);
    return rr;
}

inline std::vector<ResourceRecord> load_zone_file(const std::string& path) {
    std::vector<ResourceRecord> records;
    for_each_data_line(path, [&](std::size_t lineno, const std::string& data) {
        records.push_back(parse_zone_line(data, path, lineno));
    });
    return records;
}

inline std::vector<ResourceRecord> parse_zone_text(const std::string& text,
                                                   const std::string& name = "<string>") {
    std::istringstream in(text);
    std::vector<ResourceRecord> records;
    for_each_data_line_in(in, [&](std::size_t lineno, const std::string& data) {
        records.push_back(parse_zone_line(data, name, lineno));
    });
    return records;
}

/// The entire simulated namespace: every zone the make-believe internet
/// serves, keyed by apex. Queries are answered by walking the delegation
/// chain from the root to the deepest enclosing zone.
class AuthoritativeTree {
public:
    struct Lookup {
        enum class Status {
            Answer,    ///< records carry the requested data
            Cname,     ///< records carry a CNAME to chase
            NoData,    ///< name exists, no data of that type
            NxDomain,  ///< name does not exist in the zone
            Lame,      ///< delegation points at a zone nobody serves
        };
        Status status = Status::NxDomain;
        std::vector<ResourceRecord> records;
    };

    static AuthoritativeTree build(std::vector<ResourceRecord> records) {
        AuthoritativeTree tree;
        // Apexes are wherever a SOA sits.
        for (const auto& rr : records) {
            if (rr.type() == RecordType::SOA) tree.apexes_.insert(rr.name);
        }
        if (!tree.apexes_.count(DomainName::parse(".")))
            throw InputError("zone data has no root zone (SOA at \".\")");
        for (auto& rr : records) {
            const auto apex = tree.enclosing_apex(rr.name);
            auto& zone = tree.zones_[apex];
            if (std::find(zone.begin(), zone.end(), rr) == zone.end()) zone.push_back(rr);
        }
        for (const auto& apex : tree.apexes_) {
            if (apex.is_root()) continue;
            bool has_ns = false;
            for (const auto& rr : tree.zones_[apex])
                if (rr.name == apex && rr.type() == RecordType::NS) has_ns = true;
            if (!has_ns)
                throw InputError("zone " + apex.to_string() + " has no NS records at its apex");
        }
        return tree;
    }

    static AuthoritativeTree load(const std::string& path) {
        return build(load_zone_file(path));
    }

    const std::set<DomainName>& apexes() const { return apexes_; }

    const std::vector<ResourceRecord>& zone(const DomainName& apex) const {
        auto it = zones_.find(apex);
        if (it == zones_.end()) throw InputError("no such zone: " + apex.to_string());
        return it->second;
    }

    /// Deepest apex whose subtree contains `name`. Root always matches.
    DomainName enclosing_apex(const DomainName& name) const {
        DomainName best = DomainName::parse(".");
        for (const auto& apex : apexes_) {
            if (name.is_subdomain_of(apex) && apex.labels().size() > best.labels().size())
                best = apex;
        }
        return best;
    }

    /// Every distinct owner name in the tree; handy for exhaustive tests.
    std::vector<DomainName> all_names() const {
        std::set<DomainName> names;
        for (const auto& [apex, records] : zones_)
            for (const auto& rr : records) names.insert(rr.name);
        return {names.begin(), names.end()};
    }

    /// One zone's authoritative view of (name, type). CNAME chasing is the
    /// resolver's job; the tree reports the CNAME and stops.
    Lookup lookup(const DomainName& qname, RecordType qtype) const {
        const auto apex = enclosing_apex(qname);
        const auto& records = zones_.at(apex);

        // A delegation cut between the apex and qname means this zone does
        // not hold the answer. With a SOA the cut is a known apex and the
        // deepest-apex rule would have picked it, so reaching here through a
        // cut means the delegation is lame.
        for (const auto& rr : records) {
            if (rr.type() != RecordType::NS) continue;
            if (rr.name == apex) continue;
            if (qname.is_subdomain_of(rr.name) && !apexes_.count(rr.name))
                return {Lookup::Status::Lame, {}};
        }

        std::vector<ResourceRecord> at_name;
        bool name_exists = false;
        for (const auto& rr : records) {
            if (rr.name == qname) {
                name_exists = true;
                at_name.push_back(rr);
            } else if (rr.name.is_subdomain_of(qname)) {
                name_exists = true;  // empty non-terminal
            }
        }
        if (!name_exists) return {Lookup::Status::NxDomain, {}};

        if (qtype == RecordType::ANY) {
            if (at_name.empty()) return {Lookup::Status::NoData, {}};
            return {Lookup::Status::Answer, std::move(at_name)};
        }

        std::vector<ResourceRecord> matching;
        std::vector<ResourceRecord> cnames;
        for (auto& rr : at_name) {
            if (rr.type() == qtype) matching.push_back(rr);
            if (rr.type() == RecordType::CNAME) cnames.push_back(rr);
        }
        if (!matching.empty()) return {Lookup::Status::Answer, std::move(matching)};
        if (!cnames.empty()) return {Lookup::Status::Cname, std::move(cnames)};
        return {Lookup::Status::NoData, {}};
    }

private:
    std::set<DomainName> apexes_;
    std::map<DomainName, std::vector<ResourceRecord>> zones_;
};

}  // namespace dnstamper::dns
