#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dnstamper/report/compliance.hpp"
#include "dnstamper/report/tables.hpp"

namespace dnstamper::report {

namespace detail {

/// Plain-text table: first column left-aligned, the rest right-aligned,
/// two spaces between columns. Deterministic for fixed input.
inline std::string layout(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size());
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) line += "  ";
            if (i == 0) {
                line += row[i];
                line.append(width[i] - row[i].size(), ' ');
            } else {
                line.append(width[i] - row[i].size(), ' ');
                line += row[i];
            }
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

inline std::string pct(int v) { return std::to_string(v) + "%"; }

}  // namespace detail

inline std::string render_effectiveness(const std::vector<OutcomeCell>& cells) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"name", "ordered", "accessible", "blocked", "obscure error", "error rate"});
    for (const auto& c : cells)
        rows.push_back({c.name.to_string(), c.should_block ? "yes" : "no",
                        std::to_string(c.accessible), std::to_string(c.blocked),
                        std::to_string(c.obscure_error), detail::pct(c.error_rate)});
    std::string out = "Web blocking effectiveness, ";
    out += std::to_string(cells.empty() ? 0 : cells.front().total()) + " providers\n";
    return out + detail::layout(rows);
}

inline std::string render_email(const std::vector<EmailCell>& cells) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"address", "unharmed", "broken", "rerouted", "error rate"});
    for (const auto& c : cells)
        rows.push_back({"postmaster@" + c.domain.to_string(), std::to_string(c.unharmed),
                        std::to_string(c.broken), std::to_string(c.privacy_flagged),
                        detail::pct(c.error_rate)});
    std::string out = "Mail side-effects, ";
    out += std::to_string(cells.empty() ? 0 : cells.front().total()) + " providers\n";
    return out + detail::layout(rows);
}

inline std::string render_compliance(const ComplianceMatrix& matrix) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back(
        {"# interpretation", "underprotective", "complying", "overrestrictive", "correct"});
    for (const auto& r : matrix)
        rows.push_back({std::to_string(r.interpretation.id) + " " + r.interpretation.label,
                        std::to_string(r.underprotective), std::to_string(r.complying),
                        std::to_string(r.overrestrictive), detail::pct(r.correct_rate)});
    std::string out = "Compliance under the six readings of the order, ";
    out += std::to_string(matrix.empty() ? 0 : matrix.front().detail.size()) + " providers\n";
    return out + detail::layout(rows);
}

// ── machine-readable form ───────────────────────────────────────────────────

inline constexpr const char* kReportSchema = "dnstamper-report";
inline constexpr int kReportVersion = 1;

inline nlohmann::json to_json(const OutcomeCell& c) {
    return {{"name", c.name.to_string()},     {"should_block", c.should_block},
            {"accessible", c.accessible},     {"blocked", c.blocked},
            {"obscure_error", c.obscure_error}, {"error_rate", c.error_rate}};
}

inline nlohmann::json to_json(const EmailCell& c) {
    return {{"address", "postmaster@" + c.domain.to_string()},
            {"should_block", c.should_block},
            {"unharmed", c.unharmed},
            {"broken", c.broken},
            {"privacy_flagged", c.privacy_flagged},
            {"error_rate", c.error_rate}};
}

inline nlohmann::json to_json(const ComplianceRow& r) {
    nlohmann::json detail = nlohmann::json::array();
    for (const auto& pc : r.detail)
        detail.push_back({{"provider", pc.provider},
                          {"underprotective", pc.underprotective},
                          {"overrestrictive", pc.overrestrictive},
                          {"complying", pc.complying()}});
    return {{"id", r.interpretation.id},
            {"label", r.interpretation.label},
            {"underprotective", r.underprotective},
            {"complying", r.complying},
            {"overrestrictive", r.overrestrictive},
            {"correct_rate", r.correct_rate},
            {"providers", detail}};
}

/// The whole report as one versioned document.
inline nlohmann::json report_document(const std::vector<OutcomeCell>& effectiveness,
                                      const std::vector<EmailCell>& email,
                                      const ComplianceMatrix& matrix) {
    nlohmann::json doc;
    doc["schema"] = kReportSchema;
    doc["version"] = kReportVersion;
    doc["effectiveness"] = nlohmann::json::array();
    for (const auto& c : effectiveness) doc["effectiveness"].push_back(to_json(c));
    doc["email"] = nlohmann::json::array();
    for (const auto& c : email) doc["email"].push_back(to_json(c));
    doc["compliance"] = nlohmann::json::array();
    for (const auto& r : matrix) doc["compliance"].push_back(to_json(r));
    return doc;
}

}  // namespace dnstamper::report
