// dnstamper: stand up a fleet of tampering recursive resolvers, probe it (or
// real endpoints), classify the replies and render the survey tables. The
// stages talk through files so every intermediate can be diffed and replayed.
//
// Exit codes: 0 success, 1 bad input, 2 internal fault.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnstamper/filter/circumvent.hpp"
#include "dnstamper/filter/flow.hpp"
#include "dnstamper/filter/hosting.hpp"
#include "dnstamper/filter/proxy.hpp"
#include "dnstamper/fleet/spec.hpp"
#include "dnstamper/probe/classify.hpp"
#include "dnstamper/probe/prober.hpp"
#include "dnstamper/probe/transcript.hpp"
#include "dnstamper/probe/transport.hpp"
#include "dnstamper/probe/udp.hpp"
#include "dnstamper/report/compliance.hpp"
#include "dnstamper/report/render.hpp"

namespace {

using namespace dnstamper;

// A fixture directory is shorthand for the spec file inside it.
std::string fleet_spec_path(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::is_directory(arg)) return (fs::path(arg) / "fleet.spec").string();
    return arg;
}

std::vector<dns::DomainName> parse_names(const std::vector<std::string>& texts) {
    std::vector<dns::DomainName> out;
    for (const auto& t : texts) out.push_back(dns::DomainName::parse(t));
    return out;
}

std::vector<dns::RecordType> parse_rtypes(const std::vector<std::string>& texts) {
    std::vector<dns::RecordType> out;
    for (const auto& t : texts) {
        const auto r = dns::record_type_from_string(t);
        if (!r) throw InputError("unknown record type: " + t);
        out.push_back(*r);
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
    if (!out) throw InputError("write failed: " + path);
}

void write_transcript_to(const std::string& path,
                         const std::vector<probe::ProbeRecord>& records) {
    if (path == "-") {
        probe::write_transcript(std::cout, records);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    probe::write_transcript(out, records);
}

std::vector<probe::ProbeRecord> read_transcript_from(const std::string& path) {
    if (path == "-") return probe::read_transcript(std::cin);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    return probe::read_transcript(in);
}

// ── simulate ────────────────────────────────────────────────────────────────

struct SimulateOpts {
    std::string fleet;
    bool virtual_mode = false;
    std::string out_dir = "snapshot";
    unsigned bind_base = 0;
    long serve_queries = 0;
};

nlohmann::json snapshot_document(const fleet::BuiltFleet& fleet) {
    nlohmann::json endpoints = nlohmann::json::array();
    for (const auto& r : fleet.resolvers.resolvers())
        endpoints.push_back({{"id", r.id},
                             {"provider", r.provider},
                             {"address", r.address.to_string()}});
    nlohmann::json names = nlohmann::json::array();
    for (const auto& sn : fleet.spec.survey_names)
        names.push_back({{"name", sn.name.to_string()},
                         {"ordered_blocked", sn.ordered_blocked}});
    return {{"schema", "dnstamper-snapshot"},
            {"version", 1},
            {"providers", fleet.spec.providers.size()},
            {"endpoints", endpoints},
            {"survey_names", names},
            {"special_addresses", fleet.spec.special_addresses}};
}

void serve_udp(const fleet::BuiltFleet& fleet, std::uint16_t base, long max_datagrams) {
    const auto& resolvers = fleet.resolvers.resolvers();
    if (base + resolvers.size() - 1 > 65535)
        throw InputError("bind-base leaves no room for " +
                         std::to_string(resolvers.size()) + " ports");

    struct Endpoint {
        int fd;
        const sim::FleetResolver* resolver;
        std::uint16_t port;
    };
    std::vector<Endpoint> endpoints;
    auto close_all = [&] {
        for (const auto& e : endpoints) ::close(e.fd);
    };
    for (std::size_t i = 0; i < resolvers.size(); ++i) {
        const auto port = static_cast<std::uint16_t>(base + i);
        const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(port);
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        if (fd < 0 || ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
            const std::string why = std::strerror(errno);
            if (fd >= 0) ::close(fd);
            close_all();
            throw InputError("cannot bind UDP 127.0.0.1:" + std::to_string(port) + ": " + why);
        }
        endpoints.push_back({fd, &resolvers[i], port});
    }

    std::cout << "port\tendpoint\tprovider\taddress\n";
    for (const auto& e : endpoints)
        std::cout << e.port << "\t" << e.resolver->id << "\t" << e.resolver->provider << "\t"
                  << e.resolver->address.to_string() << "\n";
    std::cout << std::flush;
    std::cerr << "serving " << endpoints.size() << " endpoints on 127.0.0.1, ports " << base
              << "-" << endpoints.back().port
              << (max_datagrams > 0
                      ? " for " + std::to_string(max_datagrams) + " datagrams\n"
                      : " until interrupted\n");

    std::vector<pollfd> fds;
    for (const auto& e : endpoints) fds.push_back({e.fd, POLLIN, 0});
    long seen = 0;
    while (max_datagrams == 0 || seen < max_datagrams) {
        const int ready = ::poll(fds.data(), fds.size(), 500);
        if (ready < 0) break;
        for (std::size_t i = 0;
             i < fds.size() && (max_datagrams == 0 || seen < max_datagrams); ++i) {
            if (!(fds[i].revents & POLLIN)) continue;
            std::uint8_t buf[4096];
            sockaddr_in from{};
            socklen_t from_len = sizeof from;
            const ssize_t n = ::recvfrom(endpoints[i].fd, buf, sizeof buf, 0,
                                         reinterpret_cast<sockaddr*>(&from), &from_len);
            if (n < 0) continue;
            ++seen;
            dns::DnsMessage request;
            try {
                request = dns::decode(std::vector<std::uint8_t>(buf, buf + n));
            } catch (const DecodeError&) {
                continue;  // junk (or EDNS, which the codec does not speak): stay silent
            }
            const auto response = endpoints[i].resolver->resolver->handle_query(request);
            if (!response) continue;  // silence policy
            const auto wire = dns::encode(*response);
            ::sendto(endpoints[i].fd, wire.data(), wire.size(), 0,
                     reinterpret_cast<sockaddr*>(&from), from_len);
        }
    }
    close_all();
    std::cerr << "served " << seen << " datagrams\n";
}

void cmd_simulate(const SimulateOpts& opt) {
    if (opt.virtual_mode == (opt.bind_base != 0))
        throw InputError("choose exactly one of --virtual and --bind-base");
    const auto fleet = fleet::build_fleet(fleet_spec_path(opt.fleet));
    if (opt.bind_base != 0) {
        serve_udp(fleet, static_cast<std::uint16_t>(opt.bind_base), opt.serve_queries);
        return;
    }
    std::filesystem::create_directories(opt.out_dir);
    const auto dir = std::filesystem::path(opt.out_dir);
    write_text_file((dir / "provider_map.tsv").string(), fleet.provider_map.to_text());
    write_text_file((dir / "snapshot.json").string(),
                    snapshot_document(fleet).dump(2) + "\n");
    std::cerr << "fleet up: " << fleet.spec.providers.size() << " providers, "
              << fleet.resolvers.resolvers().size() << " endpoints\n"
              << "snapshot written to " << opt.out_dir << "\n";
}

// ── probe ───────────────────────────────────────────────────────────────────

struct ProbeOpts {
    std::string fleet;
    std::vector<std::string> against;
    std::string targets_file;
    std::vector<std::string> names;
    std::vector<std::string> rtypes;
    std::string out;
    unsigned seed = 1;
    std::uint64_t timeout_us = 2'000'000;
    int retries = 1;
    int concurrency = 16;
    double loss = 0.0;
    std::uint64_t latency_us = 10'000;
};

void cmd_probe(const ProbeOpts& opt) {
    const bool socket_mode = !opt.against.empty() || !opt.targets_file.empty();
    if (socket_mode && !opt.fleet.empty())
        throw InputError("--fleet and --against/--targets are mutually exclusive");
    if (!socket_mode && opt.fleet.empty())
        throw InputError("need something to probe: --fleet, --against or --targets");

    probe::ProbePlan plan;
    plan.seed = static_cast<std::uint32_t>(opt.seed);
    plan.timeout_us = opt.timeout_us;
    plan.retries = opt.retries;
    plan.concurrency = opt.concurrency;
    if (!opt.rtypes.empty()) plan.rtypes = parse_rtypes(opt.rtypes);

    std::vector<probe::ProbeRecord> records;
    if (socket_mode) {
        probe::UdpTransport transport;
        std::vector<Ipv4Address> targets;
        auto add = [&](const std::string& text) {
            const auto t = probe::parse_udp_target(text);
            transport.add_target(t);
            targets.push_back(t.key);
        };
        for (const auto& a : opt.against) add(a);
        if (!opt.targets_file.empty())
            for_each_data_line(opt.targets_file,
                               [&](std::size_t, const std::string& data) { add(data); });
        if (!targets.empty()) {
            if (opt.names.empty())
                throw InputError("probing real endpoints needs explicit --names");
            plan.names = parse_names(opt.names);
            std::cerr << "WARNING: sending live DNS queries to " << targets.size()
                      << " endpoint(s) you may not operate.\n"
                      << "WARNING: target selection, consent and rate limits are entirely"
                         " your responsibility.\n";
            records = probe::run_probe(targets, plan, transport);
        }
    } else {
        const auto fleet = fleet::build_fleet(fleet_spec_path(opt.fleet));
        if (opt.names.empty()) {
            for (const auto& sn : fleet.spec.survey_names) plan.names.push_back(sn.name);
            if (plan.names.empty())
                throw InputError("the fleet spec lists no survey names; pass --names");
        } else {
            plan.names = parse_names(opt.names);
        }
        sim::TransportParams params;
        params.latency_us = opt.latency_us;
        params.loss_probability = opt.loss;
        params.timeout_us = opt.timeout_us;
        probe::VirtualTransport transport(&fleet.resolvers, fleet.clock.get(), params,
                                          static_cast<std::uint32_t>(opt.seed));
        records = probe::run_probe(fleet.endpoint_addresses(), plan, transport);
    }

    write_transcript_to(opt.out, records);
    int timeouts = 0;
    for (const auto& r : records)
        if (r.status == probe::ProbeStatus::Timeout) ++timeouts;
    std::cerr << "probed " << records.size() << " questions, " << timeouts << " timeouts";
    if (opt.out != "-") std::cerr << " -> " << opt.out;
    std::cerr << "\n";
}

// ── classify ────────────────────────────────────────────────────────────────

struct ClassifyOpts {
    std::string fleet;
    std::string in;
    std::string out;
};

void cmd_classify(const ClassifyOpts& opt) {
    const auto fleet = fleet::build_fleet(fleet_spec_path(opt.fleet));
    auto records = read_transcript_from(opt.in);

    // The reference set covers exactly the questions the transcript asked.
    probe::ProbePlan plan;
    plan.rtypes.clear();
    for (const auto& r : records) {
        if (std::find(plan.names.begin(), plan.names.end(), r.qname) == plan.names.end())
            plan.names.push_back(r.qname);
        if (std::find(plan.rtypes.begin(), plan.rtypes.end(), r.rtype) == plan.rtypes.end())
            plan.rtypes.push_back(r.rtype);
    }
    const auto reference = probe::ReferenceSet::build(*fleet.tree, plan);
    probe::classify_all(records, reference, fleet.specials);
    write_transcript_to(opt.out, records);

    std::map<std::string, int> counts;
    for (const auto& r : records) ++counts[to_string(r.verdict->verdict)];
    std::cerr << "classified " << records.size() << " records:";
    for (const auto& [verdict, n] : counts) std::cerr << " " << verdict << " " << n;
    std::cerr << "\n";
}

// ── report & compliance ─────────────────────────────────────────────────────

struct ReportOpts {
    std::string fleet;
    std::string transcript;
    std::string provider_map;
    std::string json_out;
    std::string apex = "stormfront.org";
    std::string www = "www.stormfront.org";
    std::string kids = "kids.stormfront.org";
};

struct SurveyTables {
    std::vector<report::OutcomeCell> effectiveness;
    std::vector<report::EmailCell> email;
    report::ComplianceMatrix matrix;
};

SurveyTables survey_tables(const ReportOpts& opt) {
    const auto fleet = fleet::build_fleet(fleet_spec_path(opt.fleet));
    const auto records = read_transcript_from(opt.transcript);
    const auto pmap = opt.provider_map.empty() ? fleet.provider_map
                                               : probe::ProviderMap::load(opt.provider_map);
    const auto verdicts = probe::aggregate_by_provider(records, pmap);
    const auto profiles = report::profiles_from(verdicts, fleet.spec);

    std::vector<report::ReportRow> rows;
    for (const auto& sn : fleet.spec.survey_names) rows.push_back({sn.name, sn.ordered_blocked});

    SurveyTables out;
    out.effectiveness = report::effectiveness_table(profiles, rows);
    out.email = report::email_table(profiles, rows);
    const auto interpretations = report::order_interpretations(
        dns::DomainName::parse(opt.apex), dns::DomainName::parse(opt.www),
        dns::DomainName::parse(opt.kids));
    out.matrix = report::compliance(profiles, interpretations);
    return out;
}

void write_json_report(const std::string& path, const SurveyTables& tables) {
    write_text_file(
        path, report::report_document(tables.effectiveness, tables.email, tables.matrix)
                      .dump(2) +
                  "\n");
    std::cerr << "full report written to " << path << "\n";
}

void cmd_report(const ReportOpts& opt) {
    const auto tables = survey_tables(opt);
    std::cout << report::render_effectiveness(tables.effectiveness) << "\n"
              << report::render_email(tables.email);
    if (!opt.json_out.empty()) write_json_report(opt.json_out, tables);
}

void cmd_compliance(const ReportOpts& opt) {
    const auto tables = survey_tables(opt);
    std::cout << report::render_compliance(tables.matrix);
    if (!opt.json_out.empty()) write_json_report(opt.json_out, tables);
}

// ── whatif ──────────────────────────────────────────────────────────────────

struct WhatifOpts {
    std::string rules_file;
    std::string flows_file;
    std::string proxy_rules_file;
    std::string urls_file;
    std::string hosting_file;
    std::string blocklist_file;
    std::vector<std::string> block_sites;
    bool matrix = false;
};

void whatif_flows(const WhatifOpts& opt, bool& separate) {
    const auto rules = opt.rules_file.empty() ? std::vector<filter::FilterRule>{}
                                              : filter::load_filter_rules(opt.rules_file);
    if (separate) std::cout << "\n";
    separate = true;
    std::cout << "flow decisions under " << rules.size() << " filter rule(s)\n";
    for_each_data_line(opt.flows_file, [&](std::size_t lineno, const std::string& data) {
        const auto fields = split_fields(data);
        if (fields.size() != 3)
            throw ParseError(opt.flows_file, lineno, "expected: <client> <server> <port>");
        filter::Flow flow;
        try {
            flow.client = Ipv4Address::parse(fields[0]);
            flow.server = Ipv4Address::parse(fields[1]);
            const auto port = parse_unsigned(fields[2], "port");
            if (port == 0 || port > 65535) throw InputError("port out of range: " + fields[2]);
            flow.server_port = static_cast<std::uint16_t>(port);
        } catch (const InputError& e) {
            throw ParseError(opt.flows_file, lineno, e.what());
        }
        const auto outcome = filter::flow_decision(rules, flow);
        std::cout << "  " << fields[0] << " -> " << fields[1] << ":" << fields[2] << "  "
                  << to_string(outcome.status);
        if (outcome.status != filter::FlowStatus::Delivered)
            std::cout << (outcome.syn_observable ? "  (attempt visible at the far end)"
                                                 : "  (nothing leaves the network)");
        std::cout << "\n";
    });
}

void whatif_urls(const WhatifOpts& opt, bool& separate) {
    const auto rules = opt.proxy_rules_file.empty()
                           ? std::vector<filter::ProxyRule>{}
                           : filter::load_proxy_rules(opt.proxy_rules_file);
    if (separate) std::cout << "\n";
    separate = true;
    std::cout << "proxy decisions under " << rules.size() << " rule(s)\n";
    for_each_data_line(opt.urls_file, [&](std::size_t lineno, const std::string& data) {
        filter::Url url;
        try {
            url = filter::Url::parse(data);
        } catch (const InputError& e) {
            throw ParseError(opt.urls_file, lineno, e.what());
        }
        const auto outcome = filter::proxy_decision(rules, url);
        std::cout << "  " << url.to_string() << "  ";
        switch (outcome.kind) {
            case filter::ProxyOutcome::Kind::Delivered: std::cout << "delivered"; break;
            case filter::ProxyOutcome::Kind::Denied: std::cout << "denied"; break;
            case filter::ProxyOutcome::Kind::Redirected:
                std::cout << "redirected -> " << outcome.target->to_string();
                break;
        }
        std::cout << "\n";
    });
}

void whatif_collateral(const WhatifOpts& opt, bool& separate) {
    if (opt.hosting_file.empty())
        throw InputError("collateral analysis needs --hosting");
    std::set<std::string> blocklist(opt.block_sites.begin(), opt.block_sites.end());
    if (!opt.blocklist_file.empty())
        for_each_data_line(opt.blocklist_file, [&](std::size_t, const std::string& data) {
            blocklist.insert(data);
        });
    if (blocklist.empty())
        throw InputError("collateral analysis needs --block or --blocklist");

    const auto hosting = filter::HostingMap::load(opt.hosting_file);
    const auto report = filter::virtual_host_collateral(blocklist, hosting);
    if (separate) std::cout << "\n";
    separate = true;
    std::cout << "virtual-hosting collateral for " << blocklist.size() << " blocked site(s)\n";
    for (const auto& ac : report.addresses)
        std::cout << "  " << ac.address.to_string() << ": " << ac.blocked.size()
                  << " blocked, " << ac.collateral.size() << " innocent co-hosted site(s)\n";
    char fraction[32];
    std::snprintf(fraction, sizeof fraction, "%.2f", report.collateral_fraction);
    std::cout << "addresses touched: " << report.touched << ", of which "
              << report.with_collateral << " host innocents (fraction " << fraction << ")\n"
              << "collateral sites: " << report.total_collateral << "\n";
}

void cmd_whatif(const WhatifOpts& opt) {
    bool separate = false;
    bool did = false;
    if (!opt.rules_file.empty() && opt.flows_file.empty())
        throw InputError("filter rules need --flows to act on");
    if (!opt.proxy_rules_file.empty() && opt.urls_file.empty())
        throw InputError("proxy rules need --urls to act on");
    if (!opt.flows_file.empty()) {
        whatif_flows(opt, separate);
        did = true;
    }
    if (!opt.urls_file.empty()) {
        whatif_urls(opt, separate);
        did = true;
    }
    if (!opt.hosting_file.empty() || !opt.blocklist_file.empty() || !opt.block_sites.empty()) {
        whatif_collateral(opt, separate);
        did = true;
    }
    if (opt.matrix) {
        if (separate) std::cout << "\n";
        std::cout << filter::render_circumvention_matrix();
        did = true;
    }
    if (!did)
        throw InputError("nothing to do: supply --flows, --urls, --hosting or --matrix");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "DNS-blocking survey toolkit: simulate a fleet of tampering recursive"
        " resolvers, probe it, classify the replies, and report blocking"
        " effectiveness, mail fallout and order compliance.\n"
        "Options can also be set via DNSTAMPER_* environment variables where noted."};
    app.require_subcommand(1);

    SimulateOpts so;
    auto* sim = app.add_subcommand(
        "simulate", "Stand up the resolver fleet, virtually or on local UDP ports");
    sim->add_option("--fleet", so.fleet, "Fleet spec file or fixture directory")
        ->required()
        ->envname("DNSTAMPER_FLEET");
    sim->add_flag("--virtual", so.virtual_mode,
                  "Write a probe-ready snapshot instead of binding sockets");
    sim->add_option("--out", so.out_dir, "Snapshot output directory")->capture_default_str();
    sim->add_option("--bind-base", so.bind_base,
                    "Serve each endpoint on 127.0.0.1, one UDP port per resolver from here")
        ->check(CLI::Range(1, 65535));
    sim->add_option("--serve-queries", so.serve_queries,
                    "Stop after this many datagrams (0 = run until interrupted)")
        ->check(CLI::NonNegativeNumber);
    sim->callback([&] { cmd_simulate(so); });

    ProbeOpts po;
    auto* probe_cmd = app.add_subcommand("probe", "Ask every target every survey question");
    probe_cmd->add_option("--fleet", po.fleet, "Probe the virtual fleet from this spec")
        ->envname("DNSTAMPER_FLEET");
    probe_cmd->add_option("--against", po.against,
                          "Probe this host[:port] over real UDP (repeatable)");
    probe_cmd->add_option("--targets", po.targets_file,
                          "File of host[:port] lines to probe over real UDP");
    probe_cmd->add_option("--names", po.names,
                          "Names to ask (default: the fleet's survey names)")
        ->delimiter(',');
    probe_cmd->add_option("--rtypes", po.rtypes, "Record types (default: A,ANY,MX,NS,SOA)")
        ->delimiter(',');
    probe_cmd->add_option("--out", po.out, "Transcript file, '-' for stdout")->required();
    probe_cmd->add_option("--seed", po.seed, "Seed pinning probe ids and simulated loss")
        ->capture_default_str()
        ->envname("DNSTAMPER_SEED");
    probe_cmd->add_option("--timeout-us", po.timeout_us, "Per-attempt wait")
        ->capture_default_str();
    probe_cmd->add_option("--retries", po.retries, "Extra attempts after a timeout")
        ->capture_default_str();
    probe_cmd->add_option("--concurrency", po.concurrency,
                          "Parallel queries against real endpoints")
        ->capture_default_str();
    probe_cmd->add_option("--loss", po.loss, "Simulated exchange loss probability")
        ->check(CLI::Range(0.0, 1.0));
    probe_cmd->add_option("--latency-us", po.latency_us, "Simulated one-way delay")
        ->capture_default_str();
    probe_cmd->callback([&] { cmd_probe(po); });

    ClassifyOpts co;
    auto* classify_cmd =
        app.add_subcommand("classify", "Judge a transcript against the authoritative data");
    classify_cmd->add_option("--fleet", co.fleet, "Fleet spec (authoritative zones + specials)")
        ->required()
        ->envname("DNSTAMPER_FLEET");
    classify_cmd->add_option("--in", co.in, "Probe transcript, '-' for stdin")->required();
    classify_cmd->add_option("--out", co.out, "Classified transcript, '-' for stdout")
        ->required();
    classify_cmd->callback([&] { cmd_classify(co); });

    ReportOpts ro;
    auto add_report_options = [&](CLI::App* cmd, ReportOpts& opts) {
        cmd->add_option("--fleet", opts.fleet, "Fleet spec (provider traits + survey names)")
            ->required()
            ->envname("DNSTAMPER_FLEET");
        cmd->add_option("--transcript", opts.transcript,
                        "Classified transcript, '-' for stdin")
            ->required();
        cmd->add_option("--provider-map", opts.provider_map,
                        "address<TAB>provider map (default: derived from the fleet spec)");
        cmd->add_option("--json", opts.json_out, "Also write the full report as JSON here");
        cmd->add_option("--apex", opts.apex, "Blocked domain apex")->capture_default_str();
        cmd->add_option("--www", opts.www, "Blocked domain www host")->capture_default_str();
        cmd->add_option("--kids", opts.kids, "Uncovered sibling host")->capture_default_str();
    };
    auto* report_cmd =
        app.add_subcommand("report", "Render blocking effectiveness and mail side-effects");
    add_report_options(report_cmd, ro);
    report_cmd->callback([&] { cmd_report(ro); });

    ReportOpts cmo;
    auto* compliance_cmd = app.add_subcommand(
        "compliance", "Score every provider under the six readings of the blocking order");
    add_report_options(compliance_cmd, cmo);
    compliance_cmd->callback([&] { cmd_compliance(cmo); });

    WhatifOpts wo;
    auto* whatif_cmd = app.add_subcommand(
        "whatif", "Evaluate filtering rules, proxy rules, hosting collateral and circumvention");
    whatif_cmd->add_option("--rules", wo.rules_file, "l3/l4 filter rule file");
    whatif_cmd->add_option("--flows", wo.flows_file, "Flows to decide: <client> <server> <port>");
    whatif_cmd->add_option("--proxy-rules", wo.proxy_rules_file, "Proxy rule file");
    whatif_cmd->add_option("--urls", wo.urls_file, "URLs to pass through the proxy rules");
    whatif_cmd->add_option("--hosting", wo.hosting_file,
                           "Hosting map: address<TAB>site<TAB>name");
    whatif_cmd->add_option("--block", wo.block_sites, "Site to block (repeatable)");
    whatif_cmd->add_option("--blocklist", wo.blocklist_file, "File of site ids to block");
    whatif_cmd->add_flag("--matrix", wo.matrix,
                         "Render the circumvention-vs-blocking decision matrix");
    whatif_cmd->callback([&] { cmd_whatif(wo); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DecodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
