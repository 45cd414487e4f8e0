#pragma once

#include <string>
#include <vector>

#include "dnstamper/report/outcomes.hpp"
#include "dnstamper/report/tables.hpp"

namespace dnstamper::report {

enum class Service { Web, Email };

inline std::string to_string(Service s) { return s == Service::Web ? "web" : "email"; }

/// One (name, service) pair an interpretation of the blocking order cares
/// about, on one side or the other.
struct Requirement {
    dns::DomainName name;
    Service service = Service::Web;
};

/// One way to read the order: what MUST be unreachable and what MUST stay
/// reachable. The order's text supports several readings, so compliance is
/// only meaningful per interpretation.
struct Interpretation {
    int id = 0;
    std::string label;
    std::vector<Requirement> required_blocked;
    std::vector<Requirement> required_open;
};

/// The six defensible readings of an order that names the www host of one
/// domain. They differ in how far "the site" extends across names (www, the
/// bare domain, everything under it) and whether it covers only the Web or
/// every service. Readings 4-6 widen the blocked side to all services; the
/// "leave the rest untouched" clause then keeps only the Web reachable at
/// the names outside their scope, since the order says nothing about mail.
inline std::vector<Interpretation> order_interpretations(const dns::DomainName& apex,
                                                         const dns::DomainName& www,
                                                         const dns::DomainName& kids) {
    const Requirement apex_web{apex, Service::Web};
    const Requirement www_web{www, Service::Web};
    const Requirement kids_web{kids, Service::Web};
    const Requirement apex_mail{apex, Service::Email};
    const Requirement www_mail{www, Service::Email};
    const Requirement kids_mail{kids, Service::Email};
    return {
        {1,
         "web blocked on the www host only",
         {www_web},
         {apex_web, kids_web, apex_mail, www_mail, kids_mail}},
        {2,
         "web blocked on www and the bare domain",
         {www_web, apex_web},
         {kids_web, apex_mail, www_mail, kids_mail}},
        {3,
         "web blocked on every name in the domain",
         {apex_web, www_web, kids_web},
         {apex_mail, www_mail, kids_mail}},
        {4, "www cut off for every service", {www_web, www_mail}, {apex_web, kids_web}},
        {5,
         "www and the bare domain cut off entirely",
         {www_web, apex_web, www_mail, apex_mail},
         {kids_web}},
        {6,
         "the whole domain cut off entirely",
         {apex_web, www_web, kids_web, apex_mail, www_mail, kids_mail},
         {}},
    };
}

/// Can a subscriber of this provider still reach the (name, service) pair?
inline bool reachable(const ProviderProfile& p, const Requirement& req) {
    if (req.service == Service::Web)
        return web_outcome(p, req.name) == WebOutcome::Accessible;
    return email_outcome(p, req.name).outcome == EmailOutcome::Unharmed;
}

/// Per-provider compliance flags under one interpretation. The two flags are
/// independent: a provider can leave an ordered name reachable while also
/// killing something the order never covered.
struct ProviderCompliance {
    std::string provider;
    bool underprotective = false;
    bool overrestrictive = false;

    bool complying() const { return !underprotective && !overrestrictive; }
};

struct ComplianceRow {
    Interpretation interpretation;
    std::vector<ProviderCompliance> detail;
    int underprotective = 0;
    int complying = 0;
    int overrestrictive = 0;
    int correct_rate = 0;  ///< percent complying, half-up
};

using ComplianceMatrix = std::vector<ComplianceRow>;

inline ComplianceMatrix compliance(const std::vector<ProviderProfile>& profiles,
                                   const std::vector<Interpretation>& interpretations) {
    if (profiles.empty()) throw InputError("no providers to report on");
    ComplianceMatrix out;
    for (const auto& interp : interpretations) {
        ComplianceRow row;
        row.interpretation = interp;
        for (const auto& p : profiles) {
            ProviderCompliance pc;
            pc.provider = p.verdicts.provider;
            for (const auto& req : interp.required_blocked)
                if (reachable(p, req)) pc.underprotective = true;
            for (const auto& req : interp.required_open)
                if (!reachable(p, req)) pc.overrestrictive = true;
            row.underprotective += pc.underprotective;
            row.overrestrictive += pc.overrestrictive;
            row.complying += pc.complying();
            row.detail.push_back(std::move(pc));
        }
        row.correct_rate = rounded_percent(row.complying, static_cast<int>(profiles.size()));
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace dnstamper::report
