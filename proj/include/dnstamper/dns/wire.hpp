#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dnstamper/dns/message.hpp"
#include "dnstamper/util/errors.hpp"

namespace dnstamper::dns {

// RFC 1035 wire codec, restricted to what the toolkit speaks: class IN, one
// question, types A/NS/CNAME/SOA/MX (+ ANY in questions). The encoder never
// emits compression; the decoder accepts it, as real servers compress.

namespace detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void put_name(std::vector<std::uint8_t>& out, const DomainName& name) {
    if (name.wire_length() > 255)
        throw EncodeError("name longer than 255 octets: " + name.to_string());
    for (const auto& label : name.labels()) {
        if (label.empty() || label.size() > 63)
            throw EncodeError("label length out of range in " + name.to_string());
        out.push_back(static_cast<std::uint8_t>(label.size()));
        out.insert(out.end(), label.begin(), label.end());
    }
    out.push_back(0);
}

inline void put_record(std::vector<std::uint8_t>& out, const ResourceRecord& rr) {
    put_name(out, rr.name);
    put_u16(out, static_cast<std::uint16_t>(rr.type()));
    put_u16(out, 1);  // class IN
    put_u32(out, rr.ttl);
    const std::size_t len_pos = out.size();
    put_u16(out, 0);  // rdlength, patched below

    struct V {
        std::vector<std::uint8_t>& out;
        void operator()(const ARdata& d) const { put_u32(out, d.address.value()); }
        void operator()(const NsRdata& d) const { put_name(out, d.nameserver); }
        void operator()(const CnameRdata& d) const { put_name(out, d.target); }
        void operator()(const SoaRdata& d) const {
            put_name(out, d.mname);
            put_name(out, d.rname);
            put_u32(out, d.serial);
            put_u32(out, d.refresh);
            put_u32(out, d.retry);
            put_u32(out, d.expire);
            put_u32(out, d.minimum);
        }
        void operator()(const MxRdata& d) const {
            put_u16(out, d.preference);
            put_name(out, d.exchange);
        }
    };
    std::visit(V{out}, rr.data);

    const std::size_t rdlen = out.size() - len_pos - 2;
    if (rdlen > 0xffff) throw EncodeError("rdata too long");
    out[len_pos] = static_cast<std::uint8_t>(rdlen >> 8);
    out[len_pos + 1] = static_cast<std::uint8_t>(rdlen & 0xff);
}

/// Bounds-checked reader over the raw message.
class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> buf) : buf_(buf) {}

    std::size_t offset() const { return off_; }
    bool exhausted() const { return off_ == buf_.size(); }

    std::uint8_t u8() {
        need(1);
        return buf_[off_++];
    }

    std::uint16_t u16() {
        need(2);
        const std::uint16_t v = static_cast<std::uint16_t>((buf_[off_] << 8) | buf_[off_ + 1]);
        off_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | buf_[off_ + static_cast<std::size_t>(i)];
        off_ += 4;
        return v;
    }

    /// Reads a possibly compressed name. Pointer targets must march strictly
    /// backwards, which accepts anything a conforming encoder produces and
    /// cuts every loop.
    DomainName name() {
        std::vector<std::string> labels;
        std::size_t wire_len = 1;
        std::size_t pos = off_;
        std::size_t floor = buf_.size();  // lowest pointer target seen
        bool jumped = false;
        while (true) {
            if (pos >= buf_.size()) throw DecodeError(pos, "name runs off the buffer");
            const std::uint8_t b = buf_[pos];
            if (b == 0) {
                if (!jumped) off_ = pos + 1;
                return DomainName::from_labels_unchecked(std::move(labels));
            }
            if ((b & 0xc0) == 0xc0) {
                if (pos + 1 >= buf_.size()) throw DecodeError(pos, "truncated compression pointer");
                const std::size_t target =
                    (static_cast<std::size_t>(b & 0x3f) << 8) | buf_[pos + 1];
                if (target >= pos || target >= floor)
                    throw DecodeError(pos, "compression pointer does not point backwards");
                if (!jumped) off_ = pos + 2;
                jumped = true;
                floor = target;
                pos = target;
                continue;
            }
            if ((b & 0xc0) != 0) throw DecodeError(pos, "reserved label type");
            const std::size_t len = b;
            if (pos + 1 + len > buf_.size()) throw DecodeError(pos, "label runs off the buffer");
            wire_len += 1 + len;
            if (wire_len > 255) throw DecodeError(pos, "name longer than 255 octets");
            labels.emplace_back(reinterpret_cast<const char*>(buf_.data() + pos + 1), len);
            pos += 1 + len;
        }
    }

private:
    void need(std::size_t n) const {
        if (off_ + n > buf_.size()) throw DecodeError(off_, "message truncated");
    }

    std::span<const std::uint8_t> buf_;
    std::size_t off_ = 0;
};

inline RecordType decode_rtype(std::uint16_t v, std::size_t at, bool allow_any) {
    switch (v) {
        case 1: return RecordType::A;
        case 2: return RecordType::NS;
        case 5: return RecordType::CNAME;
        case 6: return RecordType::SOA;
        case 15: return RecordType::MX;
        case 255:
            if (allow_any) return RecordType::ANY;
            throw DecodeError(at, "type ANY is only valid in a question");
    }
    throw DecodeError(at, "unsupported record type " + std::to_string(v));
}

inline ResourceRecord read_record(Reader& r) {
    ResourceRecord rr;
    rr.name = r.name();
    const std::size_t type_at = r.offset();
    const RecordType type = decode_rtype(r.u16(), type_at, false);
    if (r.u16() != 1) throw DecodeError(type_at + 2, "unsupported class (only IN)");
    rr.ttl = r.u32();
    const std::uint16_t rdlen = r.u16();
    const std::size_t rdata_start = r.offset();
    switch (type) {
        case RecordType::A: rr.data = ARdata{Ipv4Address{r.u32()}}; break;
        case RecordType::NS: rr.data = NsRdata{r.name()}; break;
        case RecordType::CNAME: rr.data = CnameRdata{r.name()}; break;
        case RecordType::SOA: {
            SoaRdata soa;
            soa.mname = r.name();
            soa.rname = r.name();
            soa.serial = r.u32();
            soa.refresh = r.u32();
            soa.retry = r.u32();
            soa.expire = r.u32();
            soa.minimum = r.u32();
            rr.data = soa;
            break;
        }
        case RecordType::MX: {
            MxRdata mx;
            mx.preference = r.u16();
            mx.exchange = r.name();
            rr.data = mx;
            break;
        }
        case RecordType::ANY: throw InternalError("unreachable");
    }
    if (r.offset() - rdata_start != rdlen)
        throw DecodeError(rdata_start, "rdlength disagrees with rdata");
    return rr;
}

}  // namespace detail

inline std::vector<std::uint8_t> encode(const DnsMessage& m) {
    if (!m.counts_consistent()) throw EncodeError("header counts disagree with sections");
    std::vector<std::uint8_t> out;
    out.reserve(64);
    detail::put_u16(out, m.header.id);
    std::uint16_t flags = 0;
    if (m.header.qr) flags |= 0x8000;
    flags |= static_cast<std::uint16_t>(static_cast<std::uint16_t>(m.header.opcode) << 11);
    if (m.header.aa) flags |= 0x0400;
    if (m.header.tc) flags |= 0x0200;
    if (m.header.rd) flags |= 0x0100;
    if (m.header.ra) flags |= 0x0080;
    flags |= static_cast<std::uint16_t>(m.header.rcode);
    detail::put_u16(out, flags);
    detail::put_u16(out, 1);  // exactly one question
    detail::put_u16(out, m.header.ancount);
    detail::put_u16(out, m.header.nscount);
    detail::put_u16(out, m.header.arcount);
    detail::put_name(out, m.question.name);
    detail::put_u16(out, static_cast<std::uint16_t>(m.question.rtype));
    detail::put_u16(out, 1);  // class IN
    for (const auto& rr : m.answers) detail::put_record(out, rr);
    for (const auto& rr : m.authority) detail::put_record(out, rr);
    for (const auto& rr : m.additional) detail::put_record(out, rr);
    return out;
}

inline DnsMessage decode(std::span<const std::uint8_t> buf) {
    detail::Reader r(buf);
    DnsMessage m;
    m.header.id = r.u16();
    const std::uint16_t flags = r.u16();
    m.header.qr = (flags & 0x8000) != 0;
    const std::uint8_t opcode = (flags >> 11) & 0x0f;
    if (opcode != 0) throw DecodeError(2, "unsupported opcode " + std::to_string(opcode));
    m.header.opcode = Opcode::Query;
    m.header.aa = (flags & 0x0400) != 0;
    m.header.tc = (flags & 0x0200) != 0;
    m.header.rd = (flags & 0x0100) != 0;
    m.header.ra = (flags & 0x0080) != 0;
    const std::uint8_t rcode = flags & 0x0f;
    switch (rcode) {
        case 0: m.header.rcode = Rcode::NoError; break;
        case 2: m.header.rcode = Rcode::ServFail; break;
        case 3: m.header.rcode = Rcode::NxDomain; break;
        case 5: m.header.rcode = Rcode::Refused; break;
        default: throw DecodeError(3, "unsupported rcode " + std::to_string(rcode));
    }
    const std::uint16_t qdcount = r.u16();
    if (qdcount != 1)
        throw DecodeError(4, "expected exactly one question, got " + std::to_string(qdcount));
    m.header.ancount = r.u16();
    m.header.nscount = r.u16();
    m.header.arcount = r.u16();

    m.question.name = r.name();
    const std::size_t qt_at = r.offset();
    m.question.rtype = detail::decode_rtype(r.u16(), qt_at, true);
    if (r.u16() != 1) throw DecodeError(qt_at + 2, "unsupported question class (only IN)");

    for (std::uint16_t i = 0; i < m.header.ancount; ++i)
        m.answers.push_back(detail::read_record(r));
    for (std::uint16_t i = 0; i < m.header.nscount; ++i)
        m.authority.push_back(detail::read_record(r));
    for (std::uint16_t i = 0; i < m.header.arcount; ++i)
        m.additional.push_back(detail::read_record(r));

    if (!r.exhausted()) throw DecodeError(r.offset(), "trailing bytes after message");
    return m;
}

inline DnsMessage decode(const std::vector<std::uint8_t>& buf) {
    return decode(std::span<const std::uint8_t>(buf.data(), buf.size()));
}

}  // namespace dnstamper::dns
