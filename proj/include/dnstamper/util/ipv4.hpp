#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dnstamper/util/errors.hpp"

namespace dnstamper {

/// IPv4 address, host byte order. The whole toolkit is v4-only.
class Ipv4Address {
public:
    constexpr Ipv4Address() = default;
    constexpr explicit Ipv4Address(std::uint32_t value) : value_(value) {}
    constexpr Ipv4Address(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
        : value_((std::uint32_t{a} << 24) | (std::uint32_t{b} << 16) | (std::uint32_t{c} << 8) | d) {}

    static Ipv4Address parse(const std::string& text) {
        std::uint32_t value = 0;
        int octets = 0;
        std::size_t i = 0;
        while (i < text.size()) {
            if (octets == 4) throw InputError("bad IPv4 address: " + text);
            std::size_t start = i;
            std::uint32_t octet = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                octet = octet * 10 + static_cast<std::uint32_t>(text[i] - '0');
                if (octet > 255) throw InputError("bad IPv4 address: " + text);
                ++i;
            }
            if (i == start) throw InputError("bad IPv4 address: " + text);
            value = (value << 8) | octet;
            ++octets;
            if (i < text.size()) {
                if (text[i] != '.' || octets == 4) throw InputError("bad IPv4 address: " + text);
                ++i;
                if (i == text.size()) throw InputError("bad IPv4 address: " + text);
            }
        }
        if (octets != 4) throw InputError("bad IPv4 address: " + text);
        return Ipv4Address(value);
    }

    std::string to_string() const {
        return std::to_string((value_ >> 24) & 0xff) + "." + std::to_string((value_ >> 16) & 0xff) +
               "." + std::to_string((value_ >> 8) & 0xff) + "." + std::to_string(value_ & 0xff);
    }

    constexpr std::uint32_t value() const { return value_; }

    auto operator<=>(const Ipv4Address&) const = default;

private:
    std::uint32_t value_ = 0;
};

/// One CIDR block, e.g. 127.0.0.0/8.
struct Ipv4Network {
    Ipv4Address base;
    unsigned prefix_len = 32;

    static Ipv4Network parse(const std::string& text) {
        auto slash = text.find('/');
        if (slash == std::string::npos) return {Ipv4Address::parse(text), 32};
        Ipv4Network net;
        net.base = Ipv4Address::parse(text.substr(0, slash));
        const std::string len = text.substr(slash + 1);
        if (len.empty() || len.size() > 2) throw InputError("bad CIDR: " + text);
        unsigned v = 0;
        for (char c : len) {
            if (c < '0' || c > '9') throw InputError("bad CIDR: " + text);
            v = v * 10 + static_cast<unsigned>(c - '0');
        }
        if (v > 32) throw InputError("bad CIDR: " + text);
        net.prefix_len = v;
        return net;
    }

    bool contains(Ipv4Address addr) const {
        if (prefix_len == 0) return true;
        const std::uint32_t mask = ~std::uint32_t{0} << (32 - prefix_len);
        return (addr.value() & mask) == (base.value() & mask);
    }
};

/// Membership test used to split astrayment from ordinary hijacking: loopback
/// and private ranges are always special, plus any operator-supplied ranges
/// known to be unannounced (the survey used 1.1.1.1 before it was routed).
class SpecialAddressSet {
public:
    SpecialAddressSet() {
        networks_.push_back(Ipv4Network::parse("127.0.0.0/8"));
        networks_.push_back(Ipv4Network::parse("10.0.0.0/8"));
        networks_.push_back(Ipv4Network::parse("172.16.0.0/12"));
        networks_.push_back(Ipv4Network::parse("192.168.0.0/16"));
    }

    void add(const Ipv4Network& net) { networks_.push_back(net); }
    void add(const std::string& cidr) { networks_.push_back(Ipv4Network::parse(cidr)); }

    bool contains(Ipv4Address addr) const {
        for (const auto& net : networks_)
            if (net.contains(addr)) return true;
        return false;
    }

private:
    std::vector<Ipv4Network> networks_;
};

}  // namespace dnstamper
