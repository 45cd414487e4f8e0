#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "dnstamper/dns/zone.hpp"
#include "dnstamper/sim/net.hpp"
#include "dnstamper/tamper/engine.hpp"

namespace dnstamper::sim {

struct ResolverConfig {
    bool cache_enabled = false;
    int max_cname_depth = 8;
};

/// A provider's recursive nameserver: resolves against the authoritative
/// tree, except where its tamper policies say otherwise. Thread-safe; the
/// only mutable state is the answer cache.
class RecursiveResolver {
public:
    RecursiveResolver(const dns::AuthoritativeTree* tree, tamper::PolicySet policies,
                      ResolverConfig config = {}, const VirtualClock* clock = nullptr)
        : tree_(tree), policies_(std::move(policies)), config_(config), clock_(clock) {}

    /// Full query handling. Empty optional means the query is swallowed and
    /// the client will time out.
    std::optional<dns::DnsMessage> handle_query(const dns::DnsMessage& query) const {
        const auto& q = query.question;
        const auto decision = tamper::decide(policies_, q.name, q.rtype);
        switch (decision.kind) {
            case tamper::Decision::Kind::Silence: return std::nullopt;
            case tamper::Decision::Kind::Refused:
                return make_response(query, dns::Rcode::Refused);
            case tamper::Decision::Kind::ServFail:
                return make_response(query, dns::Rcode::ServFail);
            case tamper::Decision::Kind::ForgedNxdomain: {
                auto r = make_response(query, dns::Rcode::NxDomain);
                r.header.aa = true;
                return r;
            }
            case tamper::Decision::Kind::ShadowEmpty: {
                auto r = make_response(query, dns::Rcode::NoError);
                r.header.aa = true;
                return r;
            }
            case tamper::Decision::Kind::ShadowRecords: {
                auto r = make_response(query, dns::Rcode::NoError, decision.records);
                r.header.aa = true;
                return r;
            }
            case tamper::Decision::Kind::PassThrough:
            case tamper::Decision::Kind::Backref: break;
        }
        const auto result = resolve(q.name, q.rtype);
        return make_response(query, result.rcode, result.answers);
    }

    struct Resolution {
        dns::Rcode rcode = dns::Rcode::NoError;
        std::vector<dns::ResourceRecord> answers;
        bool operator==(const Resolution&) const = default;
    };

    /// Recursive resolution against the authoritative tree only (policies do
    /// not apply here). Follows CNAME chains across zones up to the
    /// configured depth; overflow and lame delegations come back SERVFAIL.
    Resolution resolve(const dns::DomainName& name, dns::RecordType rtype) const {
        if (config_.cache_enabled) {
            std::lock_guard lock(cache_mutex_);
            auto it = cache_.find({name, rtype});
            if (it != cache_.end() && it->second.expires_us > now_us()) return it->second.value;
        }
        Resolution out;
        dns::DomainName current = name;
        for (int depth = 0; depth <= config_.max_cname_depth; ++depth) {
            const auto lk = tree_->lookup(current, rtype);
            using S = dns::AuthoritativeTree::Lookup::Status;
            if (lk.status == S::Answer) {
                out.answers.insert(out.answers.end(), lk.records.begin(), lk.records.end());
                break;
            }
            if (lk.status == S::NoData) break;
            if (lk.status == S::NxDomain) {
                out.rcode = dns::Rcode::NxDomain;
                break;
            }
            if (lk.status == S::Lame) {
                out = {dns::Rcode::ServFail, {}};
                break;
            }
            // CNAME: keep the chain in the answer and chase the target.
            out.answers.insert(out.answers.end(), lk.records.begin(), lk.records.end());
            current = std::get<dns::CnameRdata>(lk.records.front().data).target;
            if (depth == config_.max_cname_depth) {
                out = {dns::Rcode::ServFail, {}};
                break;
            }
        }
        if (config_.cache_enabled) {
            std::lock_guard lock(cache_mutex_);
            cache_[{name, rtype}] = CacheEntry{out, now_us() + ttl_us(out)};
        }
        return out;
    }

    const tamper::PolicySet& policies() const { return policies_; }
    const dns::AuthoritativeTree& tree() const { return *tree_; }

    std::size_t cache_size() const {
        std::lock_guard lock(cache_mutex_);
        return cache_.size();
    }

private:
    dns::DnsMessage make_response(const dns::DnsMessage& query, dns::Rcode rcode,
                                  std::vector<dns::ResourceRecord> answers = {}) const {
        return dns::make_response(query, rcode, std::move(answers));
    }

    std::uint64_t now_us() const { return clock_ ? clock_->now_us() : 0; }

    static std::uint64_t ttl_us(const Resolution& r) {
        if (r.answers.empty()) return std::uint64_t{300} * 1'000'000;  // negative caching
        std::uint32_t ttl = r.answers.front().ttl;
        for (const auto& rr : r.answers) ttl = std::min(ttl, rr.ttl);
        return std::uint64_t{ttl} * 1'000'000;
    }

    struct CacheEntry {
        Resolution value;
        std::uint64_t expires_us = 0;
    };

    const dns::AuthoritativeTree* tree_;
    tamper::PolicySet policies_;
    ResolverConfig config_;
    const VirtualClock* clock_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<dns::DomainName, dns::RecordType>, CacheEntry> cache_;
};

}  // namespace dnstamper::sim
