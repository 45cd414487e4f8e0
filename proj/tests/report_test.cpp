#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "dnstamper/fleet/spec.hpp"
#include "dnstamper/probe/classify.hpp"
#include "dnstamper/probe/prober.hpp"
#include "dnstamper/probe/transport.hpp"
#include "dnstamper/report/compliance.hpp"
#include "dnstamper/report/render.hpp"
#include "testutil.hpp"

using namespace dnstamper;
using probe::Verdict;

namespace {

dns::DomainName name(const std::string& s) { return dns::DomainName::parse(s); }

const dns::DomainName kApex = name("stormfront.org");
const dns::DomainName kWww = name("www.stormfront.org");
const dns::DomainName kKids = name("kids.stormfront.org");
const dns::DomainName kRotten = name("rotten.com");
const dns::DomainName kControl = name("control.example");

// Full survey over the committed fleet, reduced to report inputs.
struct Rig {
    fleet::BuiltFleet built =
        fleet::build_fleet(std::string(DNSTAMPER_FIXTURE_DIR) + "/nrw27/fleet.spec");
    std::vector<report::ProviderProfile> profiles;
    std::vector<report::ReportRow> rows;

    Rig() {
        probe::ProbePlan plan;
        for (const auto& sn : built.spec.survey_names) plan.names.push_back(sn.name);
        probe::VirtualTransport transport(&built.resolvers, built.clock.get(), {}, 99);
        auto records = probe::run_probe(built.endpoint_addresses(), plan, transport);
        const auto reference = probe::ReferenceSet::build(built.resolvers.tree(), plan);
        probe::classify_all(records, reference, built.specials);
        profiles = report::profiles_from(probe::aggregate_by_provider(records, built.provider_map),
                                         built.spec);
        for (const auto& sn : built.spec.survey_names)
            rows.push_back({sn.name, sn.ordered_blocked});
    }
};

const Rig& rig() {
    static Rig r;
    return r;
}

// A single-provider profile with hand-picked verdicts, for the outcome units.
report::ProviderProfile synthetic(Verdict www_a, report::ProviderTraits traits = {},
                                  Verdict www_mx = Verdict::Untampered) {
    report::ProviderProfile p;
    p.verdicts.provider = "px";
    p.verdicts.verdicts[{kWww, dns::RecordType::A}] = www_a;
    p.verdicts.verdicts[{kWww, dns::RecordType::MX}] = www_mx;
    p.traits = traits;
    return p;
}

std::string read_golden(const std::string& file) {
    std::ifstream in(std::string(DNSTAMPER_GOLDEN_DIR) + "/" + file, std::ios::binary);
    EXPECT_TRUE(in.good()) << file;
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Rounding, HalfUpToIntegerPercent) {
    EXPECT_EQ(report::rounded_percent(12, 27), 44);  // 44.4
    EXPECT_EQ(report::rounded_percent(15, 27), 56);  // 55.6
    EXPECT_EQ(report::rounded_percent(16, 27), 59);  // 59.3
    EXPECT_EQ(report::rounded_percent(3, 27), 11);   // 11.1
    EXPECT_EQ(report::rounded_percent(0, 27), 0);
    EXPECT_EQ(report::rounded_percent(27, 27), 100);
    EXPECT_EQ(report::rounded_percent(1, 8), 13);   // 12.5 rounds up
    EXPECT_EQ(report::rounded_percent(1, 200), 1);  // 0.5 rounds up
    EXPECT_EQ(report::rounded_percent(1, 3), 33);
    EXPECT_THROW(report::rounded_percent(1, 0), InputError);
}

TEST(WebOutcome, OnlyExplainedRedirectsCountAsBlocked) {
    using report::WebOutcome;
    const report::ProviderTraits explains{true, false, false};
    EXPECT_EQ(report::web_outcome(synthetic(Verdict::Untampered), kWww),
              WebOutcome::Accessible);
    EXPECT_EQ(report::web_outcome(synthetic(Verdict::HijackSuspect, explains), kWww),
              WebOutcome::Blocked);
    EXPECT_EQ(report::web_outcome(synthetic(Verdict::HijackSuspect), kWww),
              WebOutcome::ObscureError);
    // A dead-end address cannot serve an explanation no matter what the
    // operator intended.
    EXPECT_EQ(report::web_outcome(synthetic(Verdict::Astrayment, explains), kWww),
              WebOutcome::ObscureError);
    for (Verdict v : {Verdict::NxdomainForged, Verdict::EmptyAnswer, Verdict::Refused,
                      Verdict::ServFail, Verdict::SilenceTimeout, Verdict::ProtocolError})
        EXPECT_EQ(report::web_outcome(synthetic(v, explains), kWww), WebOutcome::ObscureError)
            << probe::to_string(v);
}

TEST(WebOutcome, TamperingNeverLooksAccessible) {
    // The monotonicity behind every table: only a faithful answer reaches
    // the real site, whatever the traits say.
    for (int i = 0; i < 2; ++i) {
        const report::ProviderTraits traits{i == 1, false, false};
        for (Verdict v :
             {Verdict::SilenceTimeout, Verdict::ProtocolError, Verdict::Refused,
              Verdict::ServFail, Verdict::NxdomainForged, Verdict::EmptyAnswer,
              Verdict::Astrayment, Verdict::HijackSuspect})
            EXPECT_NE(report::web_outcome(synthetic(v, traits), kWww),
                      report::WebOutcome::Accessible)
                << probe::to_string(v);
    }
}

TEST(EmailOutcome, AnyForgedRouteBreaksDelivery) {
    using report::EmailOutcome;
    EXPECT_EQ(report::email_outcome(synthetic(Verdict::Untampered), kWww).outcome,
              EmailOutcome::Unharmed);
    for (Verdict v : {Verdict::NxdomainForged, Verdict::EmptyAnswer, Verdict::HijackSuspect,
                      Verdict::Refused, Verdict::ServFail, Verdict::SilenceTimeout})
        EXPECT_EQ(report::email_outcome(synthetic(Verdict::Untampered, {}, v), kWww).outcome,
                  EmailOutcome::Broken)
            << probe::to_string(v);
}

TEST(EmailOutcome, RerouteToOwnMachinesRaisesThePrivacyFlag) {
    const report::ProviderTraits own{false, false, true};
    EXPECT_TRUE(
        report::email_outcome(synthetic(Verdict::Untampered, own, Verdict::HijackSuspect), kWww)
            .privacy_flag);
    // A forged route pointing elsewhere, or no route at all, loses mail but
    // leaks nothing to the operator.
    EXPECT_FALSE(
        report::email_outcome(synthetic(Verdict::Untampered, {}, Verdict::HijackSuspect), kWww)
            .privacy_flag);
    EXPECT_FALSE(
        report::email_outcome(synthetic(Verdict::Untampered, own, Verdict::EmptyAnswer), kWww)
            .privacy_flag);
}

TEST(Outcomes, MissingVerdictNamesProviderAndRow) {
    const auto p = synthetic(Verdict::Untampered);
    try {
        report::web_outcome(p, kKids);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("px"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("kids.stormfront.org"), std::string::npos);
    }
}

TEST(Effectiveness, ReproducesTheSurveyMatrix) {
    const auto cells = report::effectiveness_table(rig().profiles, rig().rows);
    ASSERT_EQ(cells.size(), 5u);

    auto expect = [&](std::size_t i, const dns::DomainName& n, bool ordered, int acc, int blk,
                      int obs, int rate) {
        EXPECT_EQ(cells[i].name, n);
        EXPECT_EQ(cells[i].should_block, ordered);
        EXPECT_EQ(cells[i].accessible, acc);
        EXPECT_EQ(cells[i].blocked, blk);
        EXPECT_EQ(cells[i].obscure_error, obs);
        EXPECT_EQ(cells[i].error_rate, rate);
        EXPECT_EQ(cells[i].total(), 27);
    };
    expect(0, kApex, true, 12, 4, 11, 44);
    expect(1, kWww, true, 0, 12, 15, 0);
    expect(2, kKids, false, 12, 0, 15, 56);
    expect(3, kRotten, false, 24, 3, 0, 11);
    expect(4, kControl, false, 27, 0, 0, 0);
}

TEST(Effectiveness, CoverageGapIsAnError) {
    auto profiles = rig().profiles;
    profiles[0].verdicts.verdicts.erase({kKids, dns::RecordType::A});
    EXPECT_THROW(report::effectiveness_table(profiles, rig().rows), InputError);
    EXPECT_THROW(report::effectiveness_table({}, rig().rows), InputError);
}

TEST(Email, ReproducesTheSurveyMatrix) {
    const auto cells = report::email_table(rig().profiles, rig().rows);
    ASSERT_EQ(cells.size(), 5u);

    auto expect = [&](std::size_t i, const dns::DomainName& n, int unharmed, int broken,
                      int rerouted, int rate) {
        EXPECT_EQ(cells[i].domain, n);
        EXPECT_FALSE(cells[i].should_block);
        EXPECT_EQ(cells[i].unharmed, unharmed);
        EXPECT_EQ(cells[i].broken, broken);
        EXPECT_EQ(cells[i].privacy_flagged, rerouted);
        EXPECT_EQ(cells[i].error_rate, rate);
        EXPECT_EQ(cells[i].total(), 27);
    };
    expect(0, kApex, 11, 16, 2, 59);
    expect(1, kWww, 0, 27, 1, 100);
    // The published record for this row famously sums to one provider too
    // many; the fixture keeps 27 providers and the row's error rate.
    expect(2, kKids, 11, 16, 0, 59);
    expect(3, kRotten, 24, 3, 0, 11);
    expect(4, kControl, 27, 0, 0, 0);
}

TEST(Compliance, ReproducesTheSurveyMatrix) {
    const auto matrix = report::compliance(
        rig().profiles, report::order_interpretations(kApex, kWww, kKids));
    ASSERT_EQ(matrix.size(), 6u);

    auto expect = [&](std::size_t i, int under, int comply, int over, int rate) {
        EXPECT_EQ(matrix[i].interpretation.id, static_cast<int>(i) + 1);
        EXPECT_EQ(matrix[i].underprotective, under);
        EXPECT_EQ(matrix[i].complying, comply);
        EXPECT_EQ(matrix[i].overrestrictive, over);
        EXPECT_EQ(matrix[i].correct_rate, rate);
        EXPECT_EQ(matrix[i].detail.size(), 27u);
    };
    expect(0, 0, 0, 27, 0);
    expect(1, 12, 0, 27, 0);
    expect(2, 12, 0, 27, 0);
    expect(3, 0, 12, 15, 44);
    expect(4, 12, 0, 15, 0);
    expect(5, 12, 15, 0, 56);
}

TEST(Compliance, FlagsAreIndependentAndCoherent) {
    const auto matrix = report::compliance(
        rig().profiles, report::order_interpretations(kApex, kWww, kKids));
    // Readings 2 and 3 sum over 27 because under- and overrestriction
    // co-occur: every provider kills www mail, and the single-name
    // archetypes still leave the apex reachable.
    for (std::size_t i : {1u, 2u}) {
        int both = 0;
        for (const auto& pc : matrix[i].detail)
            if (pc.underprotective && pc.overrestrictive) ++both;
        EXPECT_EQ(both, 12) << "interpretation " << i + 1;
    }
    for (const auto& row : matrix) {
        int comply = 0;
        for (const auto& pc : row.detail) {
            EXPECT_EQ(pc.complying(), !pc.underprotective && !pc.overrestrictive);
            comply += pc.complying();
        }
        EXPECT_EQ(comply, row.complying);
    }
}

// Independent restatement of the six readings, written directly over the
// reachability grid instead of requirement lists. Criterion: both
// formulations agree on every provider flag.
TEST(Compliance, BruteForceOracleAgreesOnEveryProvider) {
    const auto matrix = report::compliance(
        rig().profiles, report::order_interpretations(kApex, kWww, kKids));
    for (const auto& p : rig().profiles) {
        const bool web_apex = report::web_outcome(p, kApex) == report::WebOutcome::Accessible;
        const bool web_www = report::web_outcome(p, kWww) == report::WebOutcome::Accessible;
        const bool web_kids = report::web_outcome(p, kKids) == report::WebOutcome::Accessible;
        const bool mail_apex =
            report::email_outcome(p, kApex).outcome == report::EmailOutcome::Unharmed;
        const bool mail_www =
            report::email_outcome(p, kWww).outcome == report::EmailOutcome::Unharmed;
        const bool mail_kids =
            report::email_outcome(p, kKids).outcome == report::EmailOutcome::Unharmed;

        const bool under[6] = {
            web_www,
            web_www || web_apex,
            web_www || web_apex || web_kids,
            web_www || mail_www,
            web_www || web_apex || mail_www || mail_apex,
            web_www || web_apex || web_kids || mail_www || mail_apex || mail_kids,
        };
        const bool over[6] = {
            !(web_apex && web_kids && mail_apex && mail_www && mail_kids),
            !(web_kids && mail_apex && mail_www && mail_kids),
            !(mail_apex && mail_www && mail_kids),
            !(web_apex && web_kids),
            !web_kids,
            false,
        };
        for (int i = 0; i < 6; ++i) {
            const auto& detail = matrix[i].detail;
            const auto it = std::find_if(detail.begin(), detail.end(), [&](const auto& pc) {
                return pc.provider == p.verdicts.provider;
            });
            ASSERT_NE(it, detail.end());
            EXPECT_EQ(it->underprotective, under[i])
                << p.verdicts.provider << " reading " << i + 1;
            EXPECT_EQ(it->overrestrictive, over[i])
                << p.verdicts.provider << " reading " << i + 1;
        }
    }
}

TEST(Render, MatchesTheFrozenTables) {
    const auto t1 = report::effectiveness_table(rig().profiles, rig().rows);
    const auto t2 = report::email_table(rig().profiles, rig().rows);
    const auto t3 = report::compliance(
        rig().profiles, report::order_interpretations(kApex, kWww, kKids));
    EXPECT_EQ(report::render_effectiveness(t1), read_golden("table1.txt"));
    EXPECT_EQ(report::render_email(t2), read_golden("table2.txt"));
    EXPECT_EQ(report::render_compliance(t3), read_golden("table3.txt"));
}

TEST(Render, JsonDocumentCarriesEveryCell) {
    const auto t1 = report::effectiveness_table(rig().profiles, rig().rows);
    const auto t2 = report::email_table(rig().profiles, rig().rows);
    const auto t3 = report::compliance(
        rig().profiles, report::order_interpretations(kApex, kWww, kKids));
    const auto doc = report::report_document(t1, t2, t3);

    EXPECT_EQ(doc.at("schema"), report::kReportSchema);
    EXPECT_EQ(doc.at("version"), report::kReportVersion);
    ASSERT_EQ(doc.at("effectiveness").size(), 5u);
    EXPECT_EQ(doc.at("effectiveness")[0].at("accessible"), 12);
    EXPECT_EQ(doc.at("effectiveness")[0].at("error_rate"), 44);
    ASSERT_EQ(doc.at("email").size(), 5u);
    EXPECT_EQ(doc.at("email")[1].at("broken"), 27);
    ASSERT_EQ(doc.at("compliance").size(), 6u);
    EXPECT_EQ(doc.at("compliance")[5].at("complying"), 15);
    ASSERT_EQ(doc.at("compliance")[0].at("providers").size(), 27u);
    // Byte-determinism for fixed input.
    EXPECT_EQ(doc.dump(), report::report_document(t1, t2, t3).dump());
}

}  // namespace
