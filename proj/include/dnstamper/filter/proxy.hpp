#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dnstamper/util/text.hpp"

namespace dnstamper::filter {

/// Just enough of a URL for proxy filtering: scheme, lowercased host, and
/// the raw path (query string included).
struct Url {
    std::string scheme;
    std::string host;
    std::string path = "/";

    static Url parse(const std::string& text) {
        const auto sep = text.find("://");
        if (sep == std::string::npos || sep == 0)
            throw InputError("bad URL (missing scheme): " + text);
        Url url;
        url.scheme = to_lower(text.substr(0, sep));
        std::size_t host_start = sep + 3;
        std::size_t host_end = text.find('/', host_start);
        std::string authority = host_end == std::string::npos
                                    ? text.substr(host_start)
                                    : text.substr(host_start, host_end - host_start);
        // Ports don't matter to URL matching; strip them.
        const auto colon = authority.find(':');
        if (colon != std::string::npos) authority = authority.substr(0, colon);
        if (authority.empty()) throw InputError("bad URL (missing host): " + text);
        url.host = to_lower(authority);
        if (host_end != std::string::npos) url.path = text.substr(host_end);
        return url;
    }

    std::string to_string() const { return scheme + "://" + host + path; }
};

/// One filtering-proxy entry: URLs under (scheme, host, path prefix) are
/// denied or rerouted. The only blocking technique that can work at URL
/// granularity instead of whole hosts.
struct ProxyRule {
    enum class Action { Deny, Redirect };

    Url pattern;  ///< path is treated as a prefix
    Action action = Action::Deny;
    std::optional<Url> target;  ///< where Redirect sends the client
};

struct ProxyOutcome {
    enum class Kind { Delivered, Denied, Redirected };

    Kind kind = Kind::Delivered;
    std::optional<Url> target;
};

/// Longest path-prefix match among rules whose scheme and host agree; the
/// most specific opinion wins, however the rules are ordered.
inline ProxyOutcome proxy_decision(const std::vector<ProxyRule>& rules, const Url& url) {
    const ProxyRule* best = nullptr;
    for (const auto& r : rules) {
        if (r.pattern.scheme != url.scheme || r.pattern.host != url.host) continue;
        if (url.path.rfind(r.pattern.path, 0) != 0) continue;
        if (!best || r.pattern.path.size() > best->pattern.path.size()) best = &r;
    }
    if (!best) return {ProxyOutcome::Kind::Delivered, std::nullopt};
    if (best->action == ProxyRule::Action::Deny)
        return {ProxyOutcome::Kind::Denied, std::nullopt};
    return {ProxyOutcome::Kind::Redirected, best->target};
}

// ── rule file format ────────────────────────────────────────────────────────
//
//   proxy deny <url-pattern>
//   proxy redirect <url-pattern> <target-url>
//
// '#' comments.

inline std::vector<ProxyRule> parse_proxy_rules(const std::string& text,
                                                const std::string& name = "<string>") {
    std::istringstream in(text);
    std::vector<ProxyRule> rules;
    for_each_data_line_in(in, [&](std::size_t lineno, const std::string& data) {
        const auto fields = split_fields(data);
        try {
            if (fields[0] != "proxy") throw ParseError(name, lineno, "expected a proxy rule");
            ProxyRule r;
            if (fields.size() == 3 && fields[1] == "deny") {
                r.action = ProxyRule::Action::Deny;
            } else if (fields.size() == 4 && fields[1] == "redirect") {
                r.action = ProxyRule::Action::Redirect;
                r.target = Url::parse(fields[3]);
            } else {
                throw ParseError(name, lineno,
                                 "expected: proxy deny <url> | proxy redirect <url> <target>");
            }
            r.pattern = Url::parse(fields[2]);
            rules.push_back(std::move(r));
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(name, lineno, e.what());
        }
    });
    return rules;
}

inline std::vector<ProxyRule> load_proxy_rules(const std::string& path) {
    return parse_proxy_rules(read_file(path), path);
}

}  // namespace dnstamper::filter
