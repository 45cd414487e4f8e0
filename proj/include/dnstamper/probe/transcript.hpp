#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnstamper/dns/wire.hpp"
#include "dnstamper/probe/prober.hpp"

namespace dnstamper::probe {

// Transcripts are JSON Lines: a schema header, then one object per probe.
// Replies travel as raw wire bytes in hex, so a transcript is enough to
// re-run classification or audit a verdict byte by byte.

inline constexpr const char* kTranscriptSchema = "dnstamper-transcript";
inline constexpr int kTranscriptVersion = 1;

inline nlohmann::json transcript_header() {
    return {{"schema", kTranscriptSchema}, {"version", kTranscriptVersion}};
}

inline nlohmann::json to_json(const ProbeRecord& r) {
    nlohmann::json j{
        {"resolver", r.resolver.to_string()},
        {"qname", r.qname.to_string()},
        {"rtype", dns::to_string(r.rtype)},
        {"query_id", r.query_id},
        {"status", to_string(r.status)},
        {"attempts", r.attempts},
        {"rtt_us", r.rtt_us},
    };
    if (!r.reply_hex.empty()) j["reply_hex"] = r.reply_hex;
    if (r.verdict) {
        j["verdict"] = to_string(r.verdict->verdict);
        j["evidence"] = {{"aa", r.verdict->evidence.aa_set},
                         {"headers_match", r.verdict->evidence.headers_match},
                         {"answers_match", r.verdict->evidence.answers_match},
                         {"notes", r.verdict->evidence.notes}};
    }
    return j;
}

inline ProbeRecord probe_record_from_json(const nlohmann::json& j) {
    ProbeRecord r;
    try {
        r.resolver = Ipv4Address::parse(j.at("resolver").get<std::string>());
        r.qname = dns::DomainName::parse(j.at("qname").get<std::string>());
        const auto rtype = dns::record_type_from_string(j.at("rtype").get<std::string>());
        if (!rtype) throw InputError("unknown rtype: " + j.at("rtype").get<std::string>());
        r.rtype = *rtype;
        r.query_id = j.at("query_id").get<std::uint16_t>();
        const auto status = probe_status_from_string(j.at("status").get<std::string>());
        if (!status) throw InputError("unknown status: " + j.at("status").get<std::string>());
        r.status = *status;
        r.attempts = j.at("attempts").get<int>();
        r.rtt_us = j.at("rtt_us").get<std::uint64_t>();
        if (j.contains("reply_hex")) {
            r.reply_hex = j["reply_hex"].get<std::string>();
            if (r.status == ProbeStatus::Reply) r.reply = dns::decode(hex_decode(r.reply_hex));
        }
        if (j.contains("verdict")) {
            Classification cls;
            const auto verdict = verdict_from_string(j["verdict"].get<std::string>());
            if (!verdict) throw InputError("unknown verdict: " + j["verdict"].get<std::string>());
            cls.verdict = *verdict;
            if (j.contains("evidence")) {
                const auto& ev = j["evidence"];
                cls.evidence.aa_set = ev.value("aa", false);
                cls.evidence.headers_match = ev.value("headers_match", false);
                cls.evidence.answers_match = ev.value("answers_match", false);
                cls.evidence.notes = ev.value("notes", std::vector<std::string>{});
            }
            r.verdict = std::move(cls);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad transcript record: ") + e.what());
    }
    return r;
}

inline void write_transcript(std::ostream& out, const std::vector<ProbeRecord>& records) {
    out << transcript_header().dump() << "\n";
    for (const auto& r : records) out << to_json(r).dump() << "\n";
}

inline std::vector<ProbeRecord> read_transcript(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("transcript is empty");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
        throw InputError("transcript does not start with a schema header");
    }
    if (header.value("schema", "") != kTranscriptSchema)
        throw InputError("not a probe transcript (schema mismatch)");
    if (header.value("version", 0) != kTranscriptVersion)
        throw InputError("unsupported transcript version");

    std::vector<ProbeRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("transcript line " + std::to_string(lineno) + ": " + e.what());
        }
        records.push_back(probe_record_from_json(j));
    }
    return records;
}

}  // namespace dnstamper::probe
