#include "dnstamper/probe/classify.hpp"

#include <gtest/gtest.h>

#include "dnstamper/probe/aggregate.hpp"
#include "testutil.hpp"

using namespace dnstamper;
using probe::Classification;
using probe::ProbeRecord;
using probe::ProbeStatus;
using probe::Verdict;
using dns::RecordType;

namespace {

dns::DomainName name(const char* s) { return dns::DomainName::parse(s); }

dns::ResourceRecord a_rr(const char* owner, const char* addr, std::uint32_t ttl = 3600) {
    return {name(owner), ttl, dns::ARdata{Ipv4Address::parse(addr)}};
}

dns::ResourceRecord mx_rr(const char* owner, std::uint16_t pref, const char* exchange,
                          std::uint32_t ttl = 3600) {
    return {name(owner), ttl, dns::MxRdata{pref, name(exchange)}};
}

dns::ResourceRecord cname_rr(const char* owner, const char* target) {
    return {name(owner), 3600, dns::CnameRdata{name(target)}};
}

using Answer = probe::ReferenceSet::Answer;

ProbeRecord reply_record(const char* qname, RecordType rtype, dns::Rcode rcode,
                         std::vector<dns::ResourceRecord> answers, bool aa = false) {
    ProbeRecord r;
    r.resolver = Ipv4Address::parse("192.0.2.1");
    r.qname = name(qname);
    r.rtype = rtype;
    r.query_id = 7;
    r.status = ProbeStatus::Reply;
    r.attempts = 1;
    auto msg = dns::make_response(dns::make_query(7, r.qname, rtype), rcode, std::move(answers));
    msg.header.aa = aa;
    r.reply = std::move(msg);
    return r;
}

Classification judge(const ProbeRecord& r, const Answer& ref) {
    return probe::classify(r, ref, SpecialAddressSet{});
}

const Answer kRefA{dns::Rcode::NoError, {a_rr("www.bad.example.com.", "203.0.113.50")}};

}  // namespace

TEST(Classifier, TimeoutIsSilence) {
    ProbeRecord r;
    r.qname = name("www.bad.example.com.");
    r.status = ProbeStatus::Timeout;
    r.attempts = 2;
    const auto c = judge(r, kRefA);
    EXPECT_EQ(c.verdict, Verdict::SilenceTimeout);
    ASSERT_FALSE(c.evidence.notes.empty());
    EXPECT_NE(c.evidence.notes[0].find("2 attempts"), std::string::npos);
}

TEST(Classifier, UndecodableReplyIsProtocolError) {
    ProbeRecord r;
    r.qname = name("www.bad.example.com.");
    r.status = ProbeStatus::DecodeError;
    r.reply_hex = "deadbeef";
    EXPECT_EQ(judge(r, kRefA).verdict, Verdict::ProtocolError);
}

TEST(Classifier, ErrorRcodesAreTheirOwnVerdicts) {
    auto refused = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::Refused, {});
    EXPECT_EQ(judge(refused, kRefA).verdict, Verdict::Refused);
    auto failed = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::ServFail, {});
    EXPECT_EQ(judge(failed, kRefA).verdict, Verdict::ServFail);
}

TEST(Classifier, NxdomainAgainstResolvingReferenceIsForged) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NxDomain, {}, true);
    const auto c = judge(r, kRefA);
    EXPECT_EQ(c.verdict, Verdict::NxdomainForged);
    EXPECT_TRUE(c.evidence.aa_set);
}

TEST(Classifier, NxdomainMatchingReferenceIsClean) {
    const Answer ref{dns::Rcode::NxDomain, {}};
    auto r = reply_record("missing.example.com.", RecordType::A, dns::Rcode::NxDomain, {});
    EXPECT_EQ(judge(r, ref).verdict, Verdict::Untampered);
}

TEST(Classifier, WithheldAnswersAreEmptyAnswer) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError, {});
    EXPECT_EQ(judge(r, kRefA).verdict, Verdict::EmptyAnswer);
}

TEST(Classifier, EmptyMatchingEmptyReferenceIsClean) {
    const Answer ref{dns::Rcode::NoError, {}};
    auto r = reply_record("mail.bad.example.com.", RecordType::MX, dns::Rcode::NoError, {});
    EXPECT_EQ(judge(r, ref).verdict, Verdict::Untampered);
}

TEST(Classifier, FaithfulReplyIsUntampered) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                          {a_rr("www.bad.example.com.", "203.0.113.50")});
    const auto c = judge(r, kRefA);
    EXPECT_EQ(c.verdict, Verdict::Untampered);
    EXPECT_TRUE(c.evidence.headers_match);
    EXPECT_TRUE(c.evidence.answers_match);
    EXPECT_FALSE(c.evidence.aa_set);
}

TEST(Classifier, CacheArtifactsDoNotCountAsTampering) {
    // TTL countdown.
    auto ttl = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                            {a_rr("www.bad.example.com.", "203.0.113.50", 17)});
    EXPECT_EQ(judge(ttl, kRefA).verdict, Verdict::Untampered);

    // MX preference rewriting.
    const Answer mx_ref{dns::Rcode::NoError, {mx_rr("bad.example.com.", 10, "mail.bad.example.com.")}};
    auto pref = reply_record("bad.example.com.", RecordType::MX, dns::Rcode::NoError,
                             {mx_rr("bad.example.com.", 20, "mail.bad.example.com.", 60)});
    EXPECT_EQ(judge(pref, mx_ref).verdict, Verdict::Untampered);

    // Answer reordering.
    const Answer two{dns::Rcode::NoError,
                     {a_rr("bad.example.com.", "203.0.113.50"), a_rr("bad.example.com.", "203.0.113.51")}};
    auto swapped = reply_record("bad.example.com.", RecordType::A, dns::Rcode::NoError,
                                {a_rr("bad.example.com.", "203.0.113.51"),
                                 a_rr("bad.example.com.", "203.0.113.50")});
    EXPECT_EQ(judge(swapped, two).verdict, Verdict::Untampered);
}

TEST(Classifier, AuthorityClaimIsEvidenceNotMismatch) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                          {a_rr("www.bad.example.com.", "203.0.113.50")}, true);
    const auto c = judge(r, kRefA);
    EXPECT_EQ(c.verdict, Verdict::Untampered);
    EXPECT_TRUE(c.evidence.aa_set);
}

TEST(Classifier, LoopbackAndPrivateFabricationsAreAstrayment) {
    for (const char* addr : {"127.0.0.1", "127.255.0.9", "10.9.9.9", "172.20.1.1", "192.168.1.1"}) {
        auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                              {a_rr("www.bad.example.com.", addr)}, true);
        EXPECT_EQ(judge(r, kRefA).verdict, Verdict::Astrayment) << addr;
    }
}

TEST(Classifier, OperatorSinkholesExtendTheSpecialSet) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                          {a_rr("www.bad.example.com.", "1.1.1.1")});
    EXPECT_EQ(judge(r, kRefA).verdict, Verdict::HijackSuspect);

    SpecialAddressSet specials;
    specials.add("1.1.1.1/32");
    EXPECT_EQ(probe::classify(r, kRefA, specials).verdict, Verdict::Astrayment);
}

TEST(Classifier, PublicRedirectionIsHijackSuspect) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                          {a_rr("www.bad.example.com.", "198.51.100.80")}, true);
    EXPECT_EQ(judge(r, kRefA).verdict, Verdict::HijackSuspect);
}

TEST(Classifier, CnameRedirectionIsHijackSuspect) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                          {cname_rr("www.bad.example.com.", "blocked.provider.test.")}, true);
    EXPECT_EQ(judge(r, kRefA).verdict, Verdict::HijackSuspect);
}

TEST(Classifier, MixedFabricationLeansHijack) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                          {a_rr("www.bad.example.com.", "127.0.0.1"),
                           a_rr("www.bad.example.com.", "198.51.100.80")});
    EXPECT_EQ(judge(r, kRefA).verdict, Verdict::HijackSuspect);
}

TEST(Classifier, AnyAddressChangeFlipsTheVerdict) {
    auto r = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                          {a_rr("www.bad.example.com.", "203.0.113.51")});
    EXPECT_NE(judge(r, kRefA).verdict, Verdict::Untampered);

    auto dup = reply_record("www.bad.example.com.", RecordType::A, dns::Rcode::NoError,
                            {a_rr("www.bad.example.com.", "203.0.113.50"),
                             a_rr("www.bad.example.com.", "203.0.113.50")});
    EXPECT_NE(judge(dup, kRefA).verdict, Verdict::Untampered);
}

TEST(Classifier, ClassifyAllNeedsReferenceCoverage) {
    const auto tree = testutil::example_tree();
    probe::ProbePlan plan;
    plan.names = {name("www.bad.example.com.")};
    plan.rtypes = {RecordType::A};
    const auto reference = probe::ReferenceSet::build(tree, plan);

    std::vector<ProbeRecord> records{reply_record("www.bad.example.com.", RecordType::A,
                                                  dns::Rcode::NoError,
                                                  {a_rr("www.bad.example.com.", "203.0.113.50")})};
    probe::classify_all(records, reference, SpecialAddressSet{});
    ASSERT_TRUE(records[0].verdict);
    EXPECT_EQ(records[0].verdict->verdict, Verdict::Untampered);

    records.push_back(reply_record("unplanned.example.com.", RecordType::A,
                                   dns::Rcode::NoError, {}));
    EXPECT_THROW(probe::classify_all(records, reference, SpecialAddressSet{}), InputError);
}

TEST(ProviderMap, ParsesAndValidates) {
    const auto map = probe::ProviderMap::parse_text(
        "# survey targets\n"
        "192.0.2.1\tp01\n"
        "192.0.2.2\tp01\n"
        "192.0.2.3\tp02\n");
    EXPECT_EQ(map.entries().size(), 3u);
    EXPECT_EQ(map.at(Ipv4Address::parse("192.0.2.2")), "p01");
    EXPECT_EQ(map.providers(), (std::vector<std::string>{"p01", "p02"}));
    EXPECT_EQ(map.find(Ipv4Address::parse("192.0.2.9")), nullptr);

    EXPECT_THROW(probe::ProviderMap::parse_text("192.0.2.1\tp01\n192.0.2.1\tp02\n"),
                 InputError);
    EXPECT_THROW(probe::ProviderMap::parse_text("192.0.2.1\n"), ParseError);
    EXPECT_THROW(probe::ProviderMap::parse_text("not-an-address\tp01\n"), ParseError);
}

TEST(Aggregate, AnyTamperingEndpointTaintsTheProvider) {
    auto map = probe::ProviderMap::parse_text("192.0.2.1\tp01\n192.0.2.2\tp01\n");
    const auto qname = name("www.bad.example.com.");

    auto make = [&](const char* addr, Verdict v) {
        ProbeRecord r;
        r.resolver = Ipv4Address::parse(addr);
        r.qname = qname;
        r.rtype = RecordType::A;
        r.status = ProbeStatus::Reply;
        r.verdict = Classification{v, {}};
        return r;
    };

    for (bool tampered_first : {true, false}) {
        std::vector<ProbeRecord> records;
        records.push_back(make("192.0.2.1", tampered_first ? Verdict::HijackSuspect
                                                           : Verdict::Untampered));
        records.push_back(make("192.0.2.2", tampered_first ? Verdict::Untampered
                                                           : Verdict::HijackSuspect));
        const auto providers = probe::aggregate_by_provider(records, map);
        ASSERT_EQ(providers.size(), 1u);
        EXPECT_EQ(providers[0].provider, "p01");
        EXPECT_EQ(providers[0].verdict(qname, RecordType::A), Verdict::HijackSuspect);
        EXPECT_TRUE(providers[0].tampers());
    }

    std::vector<ProbeRecord> clean{make("192.0.2.1", Verdict::Untampered),
                                   make("192.0.2.2", Verdict::Untampered)};
    const auto providers = probe::aggregate_by_provider(clean, map);
    EXPECT_EQ(providers[0].verdict(qname, RecordType::A), Verdict::Untampered);
    EXPECT_FALSE(providers[0].tampers());

    std::vector<ProbeRecord> unmapped{make("192.0.2.9", Verdict::Untampered)};
    EXPECT_THROW(probe::aggregate_by_provider(unmapped, map), InputError);

    std::vector<ProbeRecord> unclassified{make("192.0.2.1", Verdict::Untampered)};
    unclassified[0].verdict.reset();
    EXPECT_THROW(probe::aggregate_by_provider(unclassified, map), InputError);
}

TEST(Aggregate, CategoriesFollowTheAddressVerdictPattern) {
    const auto apex = name("bad.example.com.");
    const auto www = name("www.bad.example.com.");
    const auto sibling = name("not-so.bad.example.com.");

    auto provider = [&](Verdict at_apex, Verdict at_www, Verdict at_sibling) {
        probe::ProviderVerdicts p;
        p.provider = "pX";
        p.verdicts[{apex, RecordType::A}] = at_apex;
        p.verdicts[{www, RecordType::A}] = at_www;
        p.verdicts[{sibling, RecordType::A}] = at_sibling;
        return p;
    };
    using C = probe::ProviderCategory;
    auto cat = [&](const probe::ProviderVerdicts& p) {
        return probe::categorize_provider(p, apex, www, sibling);
    };

    EXPECT_EQ(cat(provider(Verdict::Untampered, Verdict::Untampered, Verdict::Untampered)),
              C::Untampered);
    EXPECT_EQ(cat(provider(Verdict::Untampered, Verdict::HijackSuspect, Verdict::Untampered)),
              C::WwwOnly);
    EXPECT_EQ(cat(provider(Verdict::Untampered, Verdict::Refused, Verdict::Untampered)),
              C::WwwOnly);
    EXPECT_EQ(cat(provider(Verdict::EmptyAnswer, Verdict::NxdomainForged,
                           Verdict::NxdomainForged)),
              C::NegativeForgery);
    EXPECT_EQ(cat(provider(Verdict::NxdomainForged, Verdict::HijackSuspect,
                           Verdict::NxdomainForged)),
              C::MixedForgery);
    EXPECT_EQ(cat(provider(Verdict::NxdomainForged, Verdict::Astrayment, Verdict::EmptyAnswer)),
              C::MixedForgery);
    EXPECT_EQ(cat(provider(Verdict::Refused, Verdict::Refused, Verdict::Refused)), C::Special);
    EXPECT_EQ(cat(provider(Verdict::Astrayment, Verdict::Astrayment, Verdict::Astrayment)),
              C::Special);
    EXPECT_THROW(probe::ProviderVerdicts{}.verdict(apex, RecordType::A), InputError);
}
