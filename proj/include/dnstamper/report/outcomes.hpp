#pragma once

#include <string>
#include <vector>

#include "dnstamper/probe/aggregate.hpp"

namespace dnstamper::report {

/// What a provider's redirect machinery looks like beyond the DNS answers:
/// whether the landing page explains the block, plants a cookie, or whether
/// forged mail routes deliver to the provider's own machines. DNS alone
/// cannot tell these apart, so they ride along as fixture metadata.
struct ProviderTraits {
    bool explains_blocking = false;
    bool sets_cookie = false;
    bool mail_privacy_own = false;
};

/// One provider's classified survey answers plus its traits; the unit all
/// tables count over.
struct ProviderProfile {
    probe::ProviderVerdicts verdicts;
    ProviderTraits traits;
};

/// Zips aggregated verdicts with any spec-like object offering
/// `at(provider-id)` with the trait fields (fleet::FleetSpec does).
template <typename SpecLike>
std::vector<ProviderProfile> profiles_from(const std::vector<probe::ProviderVerdicts>& verdicts,
                                           const SpecLike& spec) {
    std::vector<ProviderProfile> out;
    for (const auto& v : verdicts) {
        const auto& p = spec.at(v.provider);
        out.push_back({v, {p.explains_blocking, p.sets_cookie, p.mail_privacy_own}});
    }
    return out;
}

/// What a user pointing a browser at the name experiences.
enum class WebOutcome {
    Accessible,    ///< the real site loads
    Blocked,       ///< a page saying the content is blocked
    ObscureError,  ///< an error or an unrelated page, with no explanation
};

inline std::string to_string(WebOutcome o) {
    switch (o) {
        case WebOutcome::Accessible: return "accessible";
        case WebOutcome::Blocked: return "blocked";
        case WebOutcome::ObscureError: return "obscure-error";
    }
    return "?";
}

/// A redirect only counts as a visible block if the target page explains
/// itself; astrayment and every error-style forgery leave the user guessing.
inline WebOutcome web_outcome(const ProviderProfile& p, const dns::DomainName& name) {
    const auto v = p.verdicts.verdict(name, dns::RecordType::A);
    if (v == probe::Verdict::Untampered) return WebOutcome::Accessible;
    if (v == probe::Verdict::HijackSuspect && p.traits.explains_blocking)
        return WebOutcome::Blocked;
    return WebOutcome::ObscureError;
}

/// What happens to mail addressed to the domain.
enum class EmailOutcome { Unharmed, Broken };

inline std::string to_string(EmailOutcome o) {
    return o == EmailOutcome::Unharmed ? "unharmed" : "broken";
}

struct EmailEffect {
    EmailOutcome outcome = EmailOutcome::Unharmed;
    /// Forged route delivering to the provider's own machines: the mail is
    /// not just lost, somebody else reads it.
    bool privacy_flag = false;
};

/// Delivery follows the MX answer alone; anything but a faithful route
/// (forged, empty, rerouted, stale) bounces or strays.
inline EmailEffect email_outcome(const ProviderProfile& p, const dns::DomainName& domain) {
    const auto v = p.verdicts.verdict(domain, dns::RecordType::MX);
    if (v == probe::Verdict::Untampered) return {EmailOutcome::Unharmed, false};
    return {EmailOutcome::Broken,
            v == probe::Verdict::HijackSuspect && p.traits.mail_privacy_own};
}

}  // namespace dnstamper::report
