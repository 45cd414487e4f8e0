#pragma once

#include <string>
#include <vector>

#include "dnstamper/report/outcomes.hpp"

namespace dnstamper::report {

/// Integer percentage, half-up. Kept as the single rounding rule for every
/// table so nothing drifts by a point between renderings.
inline int rounded_percent(int part, int total) {
    if (total == 0) throw InputError("percentage over an empty provider set");
    return (200 * part + total) / (2 * total);
}

/// One name the survey reports on, with the scoring direction: for a name
/// the order covers, reachability is the failure; for any other name, any
/// interference is.
struct ReportRow {
    dns::DomainName name;
    bool should_block = false;
};

/// Per-name web reachability across the fleet.
struct OutcomeCell {
    dns::DomainName name;
    bool should_block = false;
    int accessible = 0;
    int blocked = 0;
    int obscure_error = 0;
    int error_rate = 0;

    int total() const { return accessible + blocked + obscure_error; }
};

inline std::vector<OutcomeCell> effectiveness_table(const std::vector<ProviderProfile>& profiles,
                                                    const std::vector<ReportRow>& rows) {
    if (profiles.empty()) throw InputError("no providers to report on");
    std::vector<OutcomeCell> out;
    for (const auto& row : rows) {
        OutcomeCell cell;
        cell.name = row.name;
        cell.should_block = row.should_block;
        for (const auto& p : profiles) {
            switch (web_outcome(p, row.name)) {
                case WebOutcome::Accessible: ++cell.accessible; break;
                case WebOutcome::Blocked: ++cell.blocked; break;
                case WebOutcome::ObscureError: ++cell.obscure_error; break;
            }
        }
        // An obscure error still keeps users away from an ordered-blocked
        // site, so only reachability counts against those rows; everywhere
        // else any interference at all is the failure.
        const int wrong =
            row.should_block ? cell.accessible : cell.blocked + cell.obscure_error;
        cell.error_rate = rounded_percent(wrong, cell.total());
        out.push_back(cell);
    }
    return out;
}

/// Per-domain mail deliverability across the fleet. `privacy_flagged` counts
/// providers whose forged route delivers this domain's mail to their own
/// machines.
struct EmailCell {
    dns::DomainName domain;
    bool should_block = false;  ///< the order never covered mail
    int unharmed = 0;
    int broken = 0;
    int privacy_flagged = 0;
    int error_rate = 0;

    int total() const { return unharmed + broken; }
};

inline std::vector<EmailCell> email_table(const std::vector<ProviderProfile>& profiles,
                                          const std::vector<ReportRow>& rows) {
    if (profiles.empty()) throw InputError("no providers to report on");
    std::vector<EmailCell> out;
    for (const auto& row : rows) {
        EmailCell cell;
        cell.domain = row.name;
        for (const auto& p : profiles) {
            const auto effect = email_outcome(p, row.name);
            if (effect.outcome == EmailOutcome::Unharmed)
                ++cell.unharmed;
            else
                ++cell.broken;
            if (effect.privacy_flag) ++cell.privacy_flagged;
        }
        cell.error_rate = rounded_percent(cell.broken, cell.total());
        out.push_back(cell);
    }
    return out;
}

}  // namespace dnstamper::report
