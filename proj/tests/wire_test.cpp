#include "dnstamper/dns/wire.hpp"

#include <gtest/gtest.h>

#include <random>

#include "testutil.hpp"

using namespace dnstamper;
using namespace dnstamper::dns;

namespace {

std::vector<std::uint8_t> bytes(std::initializer_list<int> xs) {
    std::vector<std::uint8_t> out;
    for (int x : xs) out.push_back(static_cast<std::uint8_t>(x));
    return out;
}

}  // namespace

// Byte-level expectations below were laid out by hand against the RFC 1035
// section 4 field diagrams before the codec was written, and are frozen.

TEST(Wire, EncodesSimpleAQuery) {
    const auto q = make_query(1, DomainName::parse("example.com"), RecordType::A);
    const auto expected = bytes({
        0x00, 0x01,              // id = 1
        0x01, 0x00,              // flags: rd only
        0x00, 0x01,              // qdcount = 1
        0x00, 0x00,              // ancount
        0x00, 0x00,              // nscount
        0x00, 0x00,              // arcount
        0x07, 'e', 'x', 'a', 'm', 'p', 'l', 'e', 0x03, 'c', 'o', 'm', 0x00,
        0x00, 0x01,              // qtype A
        0x00, 0x01,              // qclass IN
    });
    EXPECT_EQ(encode(q), expected);
}

TEST(Wire, EncodesNxdomainResponseHeader) {
    const auto q = make_query(0x2b3c, DomainName::parse("gone.example.com"), RecordType::A);
    const auto r = make_response(q, Rcode::NxDomain);
    const auto wire = encode(r);
    ASSERT_GE(wire.size(), 12u);
    EXPECT_EQ(wire[0], 0x2b);
    EXPECT_EQ(wire[1], 0x3c);
    // qr=1 rd=1 ra=1 rcode=3  ->  0x8183
    EXPECT_EQ(wire[2], 0x81);
    EXPECT_EQ(wire[3], 0x83);
    EXPECT_EQ(wire[3] & 0x0f, 3);  // rcode nibble
    EXPECT_EQ(wire[6], 0x00);      // ancount = 0
    EXPECT_EQ(wire[7], 0x00);
}

TEST(Wire, EncodesSingleARecordAnswer) {
    const auto q = make_query(0x1234, DomainName::parse("www.example.com"), RecordType::A);
    auto r = make_response(q, Rcode::NoError,
                           {ResourceRecord{DomainName::parse("www.example.com"), 3600,
                                           ARdata{Ipv4Address(192, 0, 2, 80)}}});
    const auto expected = bytes({
        0x12, 0x34,
        0x81, 0x80,              // qr rd ra
        0x00, 0x01, 0x00, 0x01, 0x00, 0x00, 0x00, 0x00,
        0x03, 'w', 'w', 'w', 0x07, 'e', 'x', 'a', 'm', 'p', 'l', 'e',
        0x03, 'c', 'o', 'm', 0x00,
        0x00, 0x01, 0x00, 0x01,
        // answer: owner name repeated uncompressed
        0x03, 'w', 'w', 'w', 0x07, 'e', 'x', 'a', 'm', 'p', 'l', 'e',
        0x03, 'c', 'o', 'm', 0x00,
        0x00, 0x01,              // type A
        0x00, 0x01,              // class IN
        0x00, 0x00, 0x0e, 0x10,  // ttl 3600
        0x00, 0x04,              // rdlength
        0xc0, 0x00, 0x02, 0x50,  // 192.0.2.80
    });
    EXPECT_EQ(encode(r), expected);
}

TEST(Wire, EncodesMxRdata) {
    const auto q = make_query(7, DomainName::parse("example.com"), RecordType::MX);
    auto r = make_response(q, Rcode::NoError,
                           {ResourceRecord{DomainName::parse("example.com"), 60,
                                           MxRdata{10, DomainName::parse("mail.example.com")}}});
    const auto wire = encode(r);
    // rdata = 2 bytes preference + uncompressed exchange name (18 octets).
    const std::size_t rdata_len = 2 + DomainName::parse("mail.example.com").wire_length();
    EXPECT_EQ(wire[wire.size() - rdata_len - 2], 0x00);
    EXPECT_EQ(wire[wire.size() - rdata_len - 1], rdata_len);
    EXPECT_EQ(wire[wire.size() - rdata_len], 0x00);  // preference hi
    EXPECT_EQ(wire[wire.size() - rdata_len + 1], 10);
    EXPECT_EQ(decode(wire), r);
}

TEST(Wire, DecodesCompressedNames) {
    // Hand-assembled response using a pointer back to the question name.
    auto wire = bytes({
        0x00, 0x2a,
        0x81, 0x80,
        0x00, 0x01, 0x00, 0x01, 0x00, 0x00, 0x00, 0x00,
        0x03, 'w', 'w', 'w', 0x07, 'e', 'x', 'a', 'm', 'p', 'l', 'e',
        0x03, 'c', 'o', 'm', 0x00,   // question name at offset 12
        0x00, 0x01, 0x00, 0x01,
        0xc0, 0x0c,                  // answer name: pointer to offset 12
        0x00, 0x01, 0x00, 0x01,
        0x00, 0x00, 0x0e, 0x10,
        0x00, 0x04,
        0xc0, 0x00, 0x02, 0x50,
    });
    const auto m = decode(wire);
    ASSERT_EQ(m.answers.size(), 1u);
    EXPECT_EQ(m.answers[0].name, DomainName::parse("www.example.com"));
    EXPECT_EQ(m.answers[0].type(), RecordType::A);
    EXPECT_EQ(std::get<ARdata>(m.answers[0].data).address, Ipv4Address(192, 0, 2, 80));

    // Re-encoding emits the uncompressed equivalent; decoding that again
    // must give the identical message.
    EXPECT_EQ(decode(encode(m)), m);
}

TEST(Wire, DecodeUppercaseNameCanonicalizes) {
    auto wire = bytes({
        0x00, 0x01, 0x01, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
        0x03, 'W', 'W', 'W', 0x07, 'E', 'x', 'a', 'm', 'p', 'l', 'e',
        0x03, 'c', 'o', 'm', 0x00,
        0x00, 0x01, 0x00, 0x01,
    });
    EXPECT_EQ(decode(wire).question.name, DomainName::parse("www.example.com"));
}

TEST(Wire, RejectsTruncatedBuffers) {
    const auto q = make_query(1, DomainName::parse("example.com"), RecordType::A);
    const auto wire = encode(q);
    for (std::size_t len = 0; len < wire.size(); ++len) {
        std::vector<std::uint8_t> cut(wire.begin(), wire.begin() + static_cast<long>(len));
        EXPECT_THROW(decode(cut), DecodeError) << "length " << len;
    }
}

TEST(Wire, RejectsTrailingGarbage) {
    const auto q = make_query(1, DomainName::parse("example.com"), RecordType::A);
    auto wire = encode(q);
    wire.push_back(0x00);
    EXPECT_THROW(decode(wire), DecodeError);
}

TEST(Wire, RejectsPointerLoop) {
    auto wire = bytes({
        0x00, 0x01, 0x01, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
        0xc0, 0x0c,  // question name points at itself
        0x00, 0x01, 0x00, 0x01,
    });
    EXPECT_THROW(decode(wire), DecodeError);
}

TEST(Wire, RejectsForwardPointer) {
    auto wire = bytes({
        0x00, 0x01, 0x01, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
        0xc0, 0x20,  // points past itself
        0x00, 0x01, 0x00, 0x01,
    });
    EXPECT_THROW(decode(wire), DecodeError);
}

TEST(Wire, RejectsUnknownTypeRcodeOpcodeClass) {
    const auto q = make_query(9, DomainName::parse("example.com"), RecordType::A);
    auto wire = encode(q);

    auto mutated = wire;
    mutated[wire.size() - 3] = 16;  // qtype TXT, unsupported
    EXPECT_THROW(decode(mutated), DecodeError);

    mutated = wire;
    mutated[3] = 0x01;  // rcode FORMERR, outside the supported set
    EXPECT_THROW(decode(mutated), DecodeError);

    mutated = wire;
    mutated[2] = 0x29;  // opcode 5 (update)
    EXPECT_THROW(decode(mutated), DecodeError);

    mutated = wire;
    mutated[wire.size() - 1] = 0x03;  // class CH
    EXPECT_THROW(decode(mutated), DecodeError);
}

TEST(Wire, RejectsMultiQuestionMessages) {
    const auto q = make_query(9, DomainName::parse("example.com"), RecordType::A);
    auto wire = encode(q);
    wire[5] = 0x02;  // qdcount = 2
    EXPECT_THROW(decode(wire), DecodeError);
}

TEST(Wire, RejectsRecordWithQtypeAny) {
    // A *record* of type ANY is meaningless; only questions may use it.
    const auto q = make_query(3, DomainName::parse("example.com"), RecordType::ANY);
    auto r = make_response(q, Rcode::NoError,
                           {ResourceRecord{DomainName::parse("example.com"), 60,
                                           ARdata{Ipv4Address(192, 0, 2, 1)}}});
    auto wire = encode(r);
    // Flip the answer's type field (2 bytes after the owner name) to 255.
    // Answer starts right after question; owner name is 13 octets.
    const std::size_t type_off = wire.size() - 4 /*addr*/ - 2 /*rdlen*/ - 4 /*ttl*/ - 2 /*class*/ - 2;
    wire[type_off] = 0x00;
    wire[type_off + 1] = 0xff;
    EXPECT_THROW(decode(wire), DecodeError);
}

TEST(Wire, RejectsOversizedLabelOnEncode) {
    // from_labels_unchecked lets an illegal label through construction; the
    // encoder is the last line of defense.
    auto m = make_query(1, DomainName::from_labels_unchecked({std::string(64, 'a'), "org"}),
                        RecordType::A);
    EXPECT_THROW(encode(m), EncodeError);

    auto long_name = DomainName::from_labels_unchecked(
        {std::string(63, 'a'), std::string(63, 'b'), std::string(63, 'c'), std::string(63, 'd')});
    EXPECT_THROW(encode(make_query(1, long_name, RecordType::A)), EncodeError);
}

TEST(Wire, RoundTripsGeneratedMessages) {
    std::mt19937 rng(2003);
    for (int i = 0; i < 1000; ++i) {
        const auto m = dnstamper::testutil::random_message(rng);
        const auto wire = encode(m);
        EXPECT_EQ(decode(wire), m) << "iteration " << i;
    }
}

TEST(Wire, DecodeNeverCrashesOnRandomBytes) {
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> len(0, 300);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 5000; ++i) {
        std::vector<std::uint8_t> buf(static_cast<std::size_t>(len(rng)));
        for (auto& b : buf) b = static_cast<std::uint8_t>(byte(rng));
        try {
            (void)decode(buf);
        } catch (const DecodeError&) {
            // expected for nearly all inputs
        }
    }
}

TEST(Wire, DecodeNeverCrashesOnMutatedMessages) {
    std::mt19937 rng(98);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 2000; ++i) {
        auto wire = encode(dnstamper::testutil::random_message(rng));
        std::uniform_int_distribution<std::size_t> pos(0, wire.size() - 1);
        for (int flips = 0; flips < 3; ++flips) wire[pos(rng)] = static_cast<std::uint8_t>(byte(rng));
        try {
            (void)decode(wire);
        } catch (const DecodeError&) {
        }
    }
}
