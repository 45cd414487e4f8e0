#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dnstamper/dns/name.hpp"
#include "dnstamper/util/ipv4.hpp"

namespace dnstamper::dns {

/// Record types the toolkit speaks. ANY is a query-only type; resource
/// records always carry one of the five concrete types.
enum class RecordType : std::uint16_t {
    A = 1,
    NS = 2,
    CNAME = 5,
    SOA = 6,
    MX = 15,
    ANY = 255,
};

inline std::string to_string(RecordType t) {
    switch (t) {
        case RecordType::A: return "A";
        case RecordType::NS: return "NS";
        case RecordType::CNAME: return "CNAME";
        case RecordType::SOA: return "SOA";
        case RecordType::MX: return "MX";
        case RecordType::ANY: return "ANY";
    }
    return "?";
}

inline std::optional<RecordType> record_type_from_string(const std::string& s) {
    const std::string u = to_lower(s);
    if (u == "a") return RecordType::A;
    if (u == "ns") return RecordType::NS;
    if (u == "cname") return RecordType::CNAME;
    if (u == "soa") return RecordType::SOA;
    if (u == "mx") return RecordType::MX;
    if (u == "any") return RecordType::ANY;
    return std::nullopt;
}

enum class Opcode : std::uint8_t { Query = 0 };

/// Response codes observed in the wild by the survey; everything else is a
/// decode error on purpose.
enum class Rcode : std::uint8_t {
    NoError = 0,
    ServFail = 2,
    NxDomain = 3,
    Refused = 5,
};

inline std::string to_string(Rcode r) {
    switch (r) {
        case Rcode::NoError: return "NOERROR";
        case Rcode::ServFail: return "SERVFAIL";
        case Rcode::NxDomain: return "NXDOMAIN";
        case Rcode::Refused: return "REFUSED";
    }
    return "?";
}

struct ARdata {
    Ipv4Address address;
    auto operator<=>(const ARdata&) const = default;
};

struct NsRdata {
    DomainName nameserver;
    auto operator<=>(const NsRdata&) const = default;
};

struct CnameRdata {
    DomainName target;
    auto operator<=>(const CnameRdata&) const = default;
};

struct SoaRdata {
    DomainName mname;
    DomainName rname;
    std::uint32_t serial = 0;
    std::uint32_t refresh = 0;
    std::uint32_t retry = 0;
    std::uint32_t expire = 0;
    std::uint32_t minimum = 0;
    auto operator<=>(const SoaRdata&) const = default;
};

struct MxRdata {
    std::uint16_t preference = 0;
    DomainName exchange;
    auto operator<=>(const MxRdata&) const = default;
};

using Rdata = std::variant<ARdata, NsRdata, CnameRdata, SoaRdata, MxRdata>;

/// One resource record, class IN implied. The record type is derived from
/// the data alternative, so type and payload cannot disagree.
struct ResourceRecord {
    DomainName name;
    std::uint32_t ttl = 0;
    Rdata data;

    RecordType type() const {
        switch (data.index()) {
            case 0: return RecordType::A;
            case 1: return RecordType::NS;
            case 2: return RecordType::CNAME;
            case 3: return RecordType::SOA;
            case 4: return RecordType::MX;
        }
        throw InternalError("corrupt rdata variant");
    }

    /// Payload rendered as zone-file text (without name/ttl/type).
    std::string data_to_string() const {
        struct V {
            std::string operator()(const ARdata& d) const { return d.address.to_string(); }
            std::string operator()(const NsRdata& d) const { return d.nameserver.to_string(); }
            std::string operator()(const CnameRdata& d) const { return d.target.to_string(); }
            std::string operator()(const SoaRdata& d) const {
                return d.mname.to_string() + " " + d.rname.to_string() + " " +
                       std::to_string(d.serial) + " " + std::to_string(d.refresh) + " " +
                       std::to_string(d.retry) + " " + std::to_string(d.expire) + " " +
                       std::to_string(d.minimum);
            }
            std::string operator()(const MxRdata& d) const {
                return std::to_string(d.preference) + " " + d.exchange.to_string();
            }
        };
        return std::visit(V{}, data);
    }

    auto operator<=>(const ResourceRecord&) const = default;
};

struct Question {
    DomainName name;
    RecordType rtype = RecordType::A;
    auto operator<=>(const Question&) const = default;
};

/// Twelve-byte header view. Counts are kept in sync by the factories below;
/// decode fills them from the wire.
struct DnsHeader {
    std::uint16_t id = 0;
    bool qr = false;
    Opcode opcode = Opcode::Query;
    bool aa = false;
    bool tc = false;
    bool rd = true;
    bool ra = false;
    Rcode rcode = Rcode::NoError;
    std::uint16_t ancount = 0;
    std::uint16_t nscount = 0;
    std::uint16_t arcount = 0;

    auto operator<=>(const DnsHeader&) const = default;
};

/// A whole message with exactly one question. The IN class and single
/// question are baked in; everything the survey needs fits this shape.
struct DnsMessage {
    DnsHeader header;
    Question question;
    std::vector<ResourceRecord> answers;
    std::vector<ResourceRecord> authority;
    std::vector<ResourceRecord> additional;

    bool counts_consistent() const {
        return header.ancount == answers.size() && header.nscount == authority.size() &&
               header.arcount == additional.size();
    }

    void refresh_counts() {
        header.ancount = static_cast<std::uint16_t>(answers.size());
        header.nscount = static_cast<std::uint16_t>(authority.size());
        header.arcount = static_cast<std::uint16_t>(additional.size());
    }

    auto operator<=>(const DnsMessage&) const = default;
};

inline DnsMessage make_query(std::uint16_t id, DomainName name, RecordType rtype,
                             bool recursion_desired = true) {
    DnsMessage m;
    m.header.id = id;
    m.header.qr = false;
    m.header.rd = recursion_desired;
    m.question = Question{std::move(name), rtype};
    return m;
}

/// Response skeleton mirroring the query's id, question and rd flag.
inline DnsMessage make_response(const DnsMessage& query, Rcode rcode,
                                std::vector<ResourceRecord> answers = {}) {
    DnsMessage m;
    m.header.id = query.header.id;
    m.header.qr = true;
    m.header.rd = query.header.rd;
    m.header.ra = true;
    m.header.rcode = rcode;
    m.question = query.question;
    m.answers = std::move(answers);
    m.refresh_counts();
    return m;
}

}  // namespace dnstamper::dns
