#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dnstamper/dns/message.hpp"
#include "dnstamper/dns/zone.hpp"

namespace dnstamper::testutil {

/// A small namespace shared by the zone, tamper and resolver tests. The
/// bad.example.com zone is the blocking target; it includes an innocent
/// neighbour (not-so.bad), a mail host, an empty non-terminal (deep) and its
/// own delegation, so every lookup status has a witness. example.com carries
/// CNAME chains (one healthy, one looping, one dangling) and a lame
/// delegation.
inline std::string example_zone_text() {
    return R"(. 3600 SOA a.root.example. hostmaster.root.example. 1 900 300 86400 300
. 3600 NS a.root.example.
a.root.example. 3600 A 203.0.113.1
example.com. 3600 SOA ns.example.com. hostmaster.example.com. 1 900 300 86400 300
example.com. 3600 NS ns.example.com.
ns.example.com. 3600 A 203.0.113.2
example.com. 3600 A 203.0.113.10
example.com. 3600 MX 10 mail.example.com.
mail.example.com. 3600 A 203.0.113.25
www.example.com. 3600 CNAME example.com.
loop1.example.com. 3600 CNAME loop2.example.com.
loop2.example.com. 3600 CNAME loop1.example.com.
gone.example.com. 3600 CNAME missing.example.com.
lame.example.com. 3600 NS ns.lame.example.com.
bad.example.com. 3600 SOA ns.bad.example.com. hostmaster.bad.example.com. 7 900 300 86400 300
bad.example.com. 3600 NS ns.bad.example.com.
ns.bad.example.com. 3600 A 203.0.113.3
bad.example.com. 3600 A 203.0.113.50
bad.example.com. 3600 MX 10 mail.bad.example.com.
www.bad.example.com. 3600 A 203.0.113.50
www.bad.example.com. 3600 MX 10 mail.bad.example.com.
mail.bad.example.com. 3600 A 203.0.113.55
not-so.bad.example.com. 3600 A 203.0.113.60
host.deep.bad.example.com. 3600 A 203.0.113.70
)";
}

inline dns::AuthoritativeTree example_tree() {
    return dns::AuthoritativeTree::build(dns::parse_zone_text(example_zone_text()));
}

// Deterministic generators for property-style tests. Everything draws from a
// caller-owned engine so a test's seed pins the whole sequence.

inline std::string random_label(std::mt19937& rng) {
    static const char alphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789-";
    std::uniform_int_distribution<std::size_t> len(1, 15);
    std::uniform_int_distribution<std::size_t> pick(0, sizeof(alphabet) - 2);
    std::string label;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) label.push_back(alphabet[pick(rng)]);
    return label;
}

inline dns::DomainName random_name(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> depth(1, 5);
    std::vector<std::string> labels;
    const std::size_t n = depth(rng);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(random_label(rng));
    return dns::DomainName::from_labels(std::move(labels));
}

inline dns::RecordType random_query_type(std::mt19937& rng) {
    static const dns::RecordType types[] = {dns::RecordType::A,   dns::RecordType::NS,
                                            dns::RecordType::CNAME, dns::RecordType::SOA,
                                            dns::RecordType::MX,  dns::RecordType::ANY};
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    return types[pick(rng)];
}

inline dns::Rdata random_rdata(std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_int_distribution<std::uint32_t> u32;
    std::uniform_int_distribution<std::uint16_t> u16;
    switch (kind(rng)) {
        case 0: return dns::ARdata{Ipv4Address{u32(rng)}};
        case 1: return dns::NsRdata{random_name(rng)};
        case 2: return dns::CnameRdata{random_name(rng)};
        case 3:
            return dns::SoaRdata{random_name(rng), random_name(rng), u32(rng),
                                 u32(rng),         u32(rng),         u32(rng), u32(rng)};
        default: return dns::MxRdata{u16(rng), random_name(rng)};
    }
}

inline dns::ResourceRecord random_record(std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> ttl(0, 7 * 24 * 3600);
    return dns::ResourceRecord{random_name(rng), ttl(rng), random_rdata(rng)};
}

/// A structurally valid message: one question, legal flag values, counts in
/// sync. Exercises every record type and both query and response shapes.
inline dns::DnsMessage random_message(std::mt19937& rng) {
    std::uniform_int_distribution<std::uint16_t> u16;
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<std::size_t> section(0, 3);
    static const dns::Rcode rcodes[] = {dns::Rcode::NoError, dns::Rcode::ServFail,
                                        dns::Rcode::NxDomain, dns::Rcode::Refused};
    std::uniform_int_distribution<std::size_t> rc(0, 3);

    dns::DnsMessage m;
    m.header.id = u16(rng);
    m.header.qr = coin(rng) != 0;
    m.header.aa = coin(rng) != 0;
    m.header.tc = coin(rng) != 0;
    m.header.rd = coin(rng) != 0;
    m.header.ra = coin(rng) != 0;
    m.header.rcode = rcodes[rc(rng)];
    m.question = dns::Question{random_name(rng), random_query_type(rng)};
    if (m.header.qr) {
        const std::size_t an = section(rng), ns = section(rng), ar = section(rng);
        for (std::size_t i = 0; i < an; ++i) m.answers.push_back(random_record(rng));
        for (std::size_t i = 0; i < ns; ++i) m.authority.push_back(random_record(rng));
        for (std::size_t i = 0; i < ar; ++i) m.additional.push_back(random_record(rng));
    }
    m.refresh_counts();
    return m;
}

}  // namespace dnstamper::testutil
