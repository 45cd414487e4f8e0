#pragma once

#include <algorithm>
#include <vector>

#include "dnstamper/probe/plan.hpp"
#include "dnstamper/probe/prober.hpp"
#include "dnstamper/util/ipv4.hpp"

namespace dnstamper::probe {

namespace detail {

/// Strips the fields legitimate resolvers may change: TTLs count down in
/// caches, and mail exchanger preference is routing advice, not content.
inline dns::ResourceRecord comparable(dns::ResourceRecord rr) {
    rr.ttl = 0;
    if (auto* mx = std::get_if<dns::MxRdata>(&rr.data)) mx->preference = 0;
    return rr;
}

}  // namespace detail

/// Record-set equality up to ordering, TTL and MX preference.
inline bool answers_equivalent(const std::vector<dns::ResourceRecord>& got,
                               const std::vector<dns::ResourceRecord>& want) {
    if (got.size() != want.size()) return false;
    std::vector<dns::ResourceRecord> a, b;
    a.reserve(got.size());
    b.reserve(want.size());
    for (const auto& rr : got) a.push_back(detail::comparable(rr));
    for (const auto& rr : want) b.push_back(detail::comparable(rr));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

/// Header agreement on the fields a faithful resolver has no reason to
/// change. ra is the resolver's own advertisement and aa is evidence, not
/// a mismatch; neither is compared.
inline bool headers_equivalent(const dns::DnsHeader& got, const dns::DnsHeader& want) {
    return got.ancount == want.ancount && got.opcode == want.opcode && got.qr == want.qr &&
           got.rcode == want.rcode && got.rd == want.rd && got.tc == want.tc;
}

/// Judges one observation against the reference answer. The ladder runs
/// from the loudest signals (nothing came back, bytes unparseable, error
/// rcodes) down to content comparison; fabricated addresses inside
/// loopback/private space separate deliberate dead-ends from redirections.
inline Classification classify(const ProbeRecord& record, const ReferenceSet::Answer& reference,
                               const SpecialAddressSet& specials) {
    Classification out;
    auto& ev = out.evidence;

    if (record.status == ProbeStatus::Timeout) {
        out.verdict = Verdict::SilenceTimeout;
        ev.notes.push_back("no reply after " + std::to_string(record.attempts) + " attempts");
        return out;
    }
    if (record.status == ProbeStatus::DecodeError) {
        out.verdict = Verdict::ProtocolError;
        ev.notes.push_back("reply bytes do not decode");
        return out;
    }

    const auto& reply = *record.reply;
    ev.aa_set = reply.header.aa;
    if (ev.aa_set) ev.notes.push_back("reply claims authority");
    const auto expected = dns::make_response(
        dns::make_query(record.query_id, record.qname, record.rtype), reference.rcode,
        reference.answers);
    ev.headers_match = headers_equivalent(reply.header, expected.header);
    ev.answers_match = answers_equivalent(reply.answers, reference.answers);

    if (reply.header.rcode == dns::Rcode::Refused) {
        out.verdict = Verdict::Refused;
        return out;
    }
    if (reply.header.rcode == dns::Rcode::ServFail) {
        out.verdict = Verdict::ServFail;
        return out;
    }
    if (reply.header.rcode == dns::Rcode::NxDomain) {
        if (reference.rcode == dns::Rcode::NxDomain) {
            out.verdict = Verdict::Untampered;
        } else {
            out.verdict = Verdict::NxdomainForged;
            ev.notes.push_back("NXDOMAIN for a name the reference resolves");
        }
        return out;
    }

    // NOERROR from here on.
    if (reply.answers.empty()) {
        if (reference.rcode == dns::Rcode::NoError && reference.answers.empty()) {
            out.verdict = Verdict::Untampered;
        } else {
            out.verdict = Verdict::EmptyAnswer;
            ev.notes.push_back("answers withheld");
        }
        return out;
    }
    if (ev.headers_match && ev.answers_match) {
        out.verdict = Verdict::Untampered;
        return out;
    }

    std::vector<Ipv4Address> fabricated;
    for (const auto& rr : reply.answers)
        if (const auto* a = std::get_if<dns::ARdata>(&rr.data)) fabricated.push_back(a->address);
    const bool all_special =
        !fabricated.empty() && std::all_of(fabricated.begin(), fabricated.end(),
                                           [&](Ipv4Address a) { return specials.contains(a); });
    if (all_special) {
        out.verdict = Verdict::Astrayment;
        ev.notes.push_back("answer points into loopback/private/sinkhole space");
    } else {
        out.verdict = Verdict::HijackSuspect;
        ev.notes.push_back("answer content replaced");
    }
    return out;
}

/// Fills in the verdict on every record. Throws when the plan's reference
/// set does not cover an observation.
inline void classify_all(std::vector<ProbeRecord>& records, const ReferenceSet& reference,
                         const SpecialAddressSet& specials) {
    for (auto& r : records) r.verdict = classify(r, reference.at(r.qname, r.rtype), specials);
}

}  // namespace dnstamper::probe
