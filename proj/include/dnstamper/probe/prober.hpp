#pragma once

#include <atomic>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "dnstamper/probe/classify_types.hpp"
#include "dnstamper/probe/plan.hpp"
#include "dnstamper/probe/transport.hpp"

namespace dnstamper::probe {

enum class ProbeStatus {
    Reply,        ///< something came back and decoded
    Timeout,      ///< every attempt elapsed in silence
    DecodeError,  ///< something came back but is not a DNS message
};

inline std::string to_string(ProbeStatus s) {
    switch (s) {
        case ProbeStatus::Reply: return "reply";
        case ProbeStatus::Timeout: return "timeout";
        case ProbeStatus::DecodeError: return "decode-error";
    }
    return "?";
}

inline std::optional<ProbeStatus> probe_status_from_string(const std::string& s) {
    if (s == "reply") return ProbeStatus::Reply;
    if (s == "timeout") return ProbeStatus::Timeout;
    if (s == "decode-error") return ProbeStatus::DecodeError;
    return std::nullopt;
}

/// One question asked of one resolver, with everything observed about the
/// answer. The classification is attached later; probing records facts only.
struct ProbeRecord {
    Ipv4Address resolver;
    dns::DomainName qname;
    dns::RecordType rtype = dns::RecordType::A;
    std::uint16_t query_id = 0;
    ProbeStatus status = ProbeStatus::Timeout;
    int attempts = 0;
    std::uint64_t rtt_us = 0;
    std::string reply_hex;                  ///< raw bytes when anything arrived
    std::optional<dns::DnsMessage> reply;   ///< decoded form when possible
    std::optional<Classification> verdict;  ///< filled by the classifier
};

/// Asks every resolver every question in the plan. Tasks run in resolver,
/// name, record-type order; on deterministic transports they run one at a
/// time so the seed pins the whole transcript. Only timeouts are retried: a
/// broken reply is an observation, not a network accident.
inline std::vector<ProbeRecord> run_probe(const std::vector<Ipv4Address>& resolvers,
                                          const ProbePlan& plan, QueryTransport& transport) {
    std::vector<ProbeRecord> records;
    for (const auto& resolver : resolvers)
        for (const auto& name : plan.names)
            for (const auto rtype : plan.rtypes) {
                ProbeRecord r;
                r.resolver = resolver;
                r.qname = name;
                r.rtype = rtype;
                records.push_back(std::move(r));
            }

    // Ids are drawn up front so worker scheduling cannot reorder them.
    std::mt19937 rng(plan.seed);
    std::uniform_int_distribution<std::uint16_t> id;
    for (auto& r : records) r.query_id = id(rng);

    auto run_one = [&](ProbeRecord& r) {
        const auto query = dns::encode(dns::make_query(r.query_id, r.qname, r.rtype));
        ExchangeResult got;
        for (int attempt = 0; attempt <= plan.retries; ++attempt) {
            ++r.attempts;
            got = transport.exchange(r.resolver, query, plan.timeout_us);
            if (got.replied) break;
        }
        r.rtt_us = got.elapsed_us;
        if (!got.replied) {
            r.status = ProbeStatus::Timeout;
            return;
        }
        r.reply_hex = hex_encode(got.reply);
        try {
            r.reply = dns::decode(got.reply);
            r.status = ProbeStatus::Reply;
        } catch (const DecodeError&) {
            r.status = ProbeStatus::DecodeError;
        }
    };

    const int workers =
        transport.deterministic() ? 1 : std::max(1, std::min<int>(plan.concurrency,
                                                                  records.size()));
    if (workers <= 1) {
        for (auto& r : records) run_one(r);
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < records.size(); i = next.fetch_add(1))
                run_one(records[i]);
        });
    for (auto& t : pool) t.join();
    return records;
}

}  // namespace dnstamper::probe
