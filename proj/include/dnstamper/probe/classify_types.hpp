#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dnstamper::probe {

/// What a reply (or its absence) says about the resolver's handling of the
/// question, judged against the reference answer.
enum class Verdict {
    Untampered,      ///< reply agrees with the reference
    SilenceTimeout,  ///< no reply at all; dropped query or dead resolver
    ProtocolError,   ///< reply bytes were not a DNS message
    Refused,         ///< resolver declined with REFUSED
    ServFail,        ///< resolver claimed failure with SERVFAIL
    NxdomainForged,  ///< NXDOMAIN where the name demonstrably exists
    EmptyAnswer,     ///< NOERROR with answers withheld
    Astrayment,      ///< fabricated address pointing at loopback/private space
    HijackSuspect,   ///< answer content replaced with something else
};

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Untampered: return "untampered";
        case Verdict::SilenceTimeout: return "silence-timeout";
        case Verdict::ProtocolError: return "protocol-error";
        case Verdict::Refused: return "refused";
        case Verdict::ServFail: return "servfail";
        case Verdict::NxdomainForged: return "nxdomain-forged";
        case Verdict::EmptyAnswer: return "empty-answer";
        case Verdict::Astrayment: return "astrayment";
        case Verdict::HijackSuspect: return "hijack-suspect";
    }
    return "?";
}

inline std::optional<Verdict> verdict_from_string(const std::string& s) {
    if (s == "untampered") return Verdict::Untampered;
    if (s == "silence-timeout") return Verdict::SilenceTimeout;
    if (s == "protocol-error") return Verdict::ProtocolError;
    if (s == "refused") return Verdict::Refused;
    if (s == "servfail") return Verdict::ServFail;
    if (s == "nxdomain-forged") return Verdict::NxdomainForged;
    if (s == "empty-answer") return Verdict::EmptyAnswer;
    if (s == "astrayment") return Verdict::Astrayment;
    if (s == "hijack-suspect") return Verdict::HijackSuspect;
    return std::nullopt;
}

/// Side observations that support or color the verdict without deciding it.
/// The aa bit in particular: operators serving forged zones answer
/// authoritatively, which is visible but never counted as a mismatch.
struct Evidence {
    bool aa_set = false;
    bool headers_match = false;
    bool answers_match = false;
    std::vector<std::string> notes;
    bool operator==(const Evidence&) const = default;
};

struct Classification {
    Verdict verdict = Verdict::Untampered;
    Evidence evidence;
    bool operator==(const Classification&) const = default;
};

}  // namespace dnstamper::probe
