#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dnstamper/probe/prober.hpp"

namespace dnstamper::probe {

/// Maps resolver addresses to the provider operating them. Text form is one
/// `address<TAB>provider` pair per line; provider order in reports follows
/// first appearance here.
class ProviderMap {
public:
    void add(Ipv4Address address, const std::string& provider) {
        for (const auto& [a, p] : entries_)
            if (a == address)
                throw InputError("resolver " + address.to_string() + " mapped twice");
        entries_.emplace_back(address, provider);
    }

    const std::string* find(Ipv4Address address) const {
        for (const auto& [a, p] : entries_)
            if (a == address) return &p;
        return nullptr;
    }

    const std::string& at(Ipv4Address address) const {
        const auto* p = find(address);
        if (!p) throw InputError("resolver " + address.to_string() + " is not in the provider map");
        return *p;
    }

    std::vector<std::string> providers() const {
        std::vector<std::string> out;
        for (const auto& [a, p] : entries_)
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        return out;
    }

    const std::vector<std::pair<Ipv4Address, std::string>>& entries() const { return entries_; }

    static ProviderMap parse_text(const std::string& text,
                                  const std::string& name = "<string>") {
        std::istringstream in(text);
        ProviderMap map;
        for_each_data_line_in(in, [&](std::size_t lineno, const std::string& data) {
            const auto fields = split_fields(data);
            if (fields.size() != 2)
                throw ParseError(name, lineno, "expected: address<TAB>provider");
            try {
                map.add(Ipv4Address::parse(fields[0]), fields[1]);
            } catch (const InputError& e) {
                throw ParseError(name, lineno, e.what());
            }
        });
        return map;
    }

    static ProviderMap load(const std::string& path) {
        return parse_text(read_file(path), path);
    }

    std::string to_text() const {
        std::string out;
        for (const auto& [a, p] : entries_) out += a.to_string() + "\t" + p + "\n";
        return out;
    }

private:
    std::vector<std::pair<Ipv4Address, std::string>> entries_;
};

/// A provider's merged view: one verdict per question across however many
/// resolver endpoints it runs. Any tampering endpoint taints the provider,
/// so the first verdict that is not Untampered wins.
struct ProviderVerdicts {
    std::string provider;
    std::map<std::pair<dns::DomainName, dns::RecordType>, Verdict> verdicts;

    Verdict verdict(const dns::DomainName& name, dns::RecordType rtype) const {
        auto it = verdicts.find({name, rtype});
        if (it == verdicts.end())
            throw InputError(provider + " was not probed for " + name.to_string() + " " +
                             to_string(rtype));
        return it->second;
    }

    bool tampers() const {
        for (const auto& [key, v] : verdicts)
            if (v != Verdict::Untampered) return true;
        return false;
    }
};

/// Folds classified records into per-provider verdicts. Every record must
/// be classified and every resolver mapped.
inline std::vector<ProviderVerdicts> aggregate_by_provider(
    const std::vector<ProbeRecord>& records, const ProviderMap& map) {
    std::vector<ProviderVerdicts> out;
    std::map<std::string, std::size_t> index;
    for (const auto& provider : map.providers()) {
        index[provider] = out.size();
        out.push_back(ProviderVerdicts{provider, {}});
    }
    for (const auto& r : records) {
        if (!r.verdict)
            throw InputError("probe of " + r.qname.to_string() + " is not classified");
        auto& verdicts = out[index.at(map.at(r.resolver))].verdicts;
        const auto key = std::make_pair(r.qname, r.rtype);
        auto it = verdicts.find(key);
        if (it == verdicts.end())
            verdicts.emplace(key, r.verdict->verdict);
        else if (it->second == Verdict::Untampered)
            it->second = r.verdict->verdict;
    }
    std::erase_if(out, [](const ProviderVerdicts& p) { return p.verdicts.empty(); });
    return out;
}

/// Coarse behavioral buckets for a provider, judged on its address answers
/// for the site apex, its www host and one sibling host.
enum class ProviderCategory {
    Untampered,       ///< answers everything faithfully
    WwwOnly,          ///< only the www host is touched
    NegativeForgery,  ///< every name denied via NXDOMAIN or empty answers
    MixedForgery,     ///< www redirected, the rest denied
    Special,          ///< anything else
};

inline std::string to_string(ProviderCategory c) {
    switch (c) {
        case ProviderCategory::Untampered: return "untampered";
        case ProviderCategory::WwwOnly: return "www-only";
        case ProviderCategory::NegativeForgery: return "negative-forgery";
        case ProviderCategory::MixedForgery: return "mixed-forgery";
        case ProviderCategory::Special: return "special";
    }
    return "?";
}

inline ProviderCategory categorize_provider(const ProviderVerdicts& p,
                                            const dns::DomainName& apex,
                                            const dns::DomainName& www,
                                            const dns::DomainName& sibling) {
    const auto a = p.verdict(apex, dns::RecordType::A);
    const auto w = p.verdict(www, dns::RecordType::A);
    const auto s = p.verdict(sibling, dns::RecordType::A);
    auto negative = [](Verdict v) {
        return v == Verdict::NxdomainForged || v == Verdict::EmptyAnswer;
    };
    auto redirect = [](Verdict v) {
        return v == Verdict::Astrayment || v == Verdict::HijackSuspect;
    };
    if (a == Verdict::Untampered && w == Verdict::Untampered && s == Verdict::Untampered)
        return ProviderCategory::Untampered;
    if (a == Verdict::Untampered && s == Verdict::Untampered)
        return ProviderCategory::WwwOnly;
    if (negative(a) && negative(w) && negative(s)) return ProviderCategory::NegativeForgery;
    if (redirect(w) && negative(a) && negative(s)) return ProviderCategory::MixedForgery;
    return ProviderCategory::Special;
}

}  // namespace dnstamper::probe
