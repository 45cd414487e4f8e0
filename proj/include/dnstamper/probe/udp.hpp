#pragma once

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "dnstamper/probe/transport.hpp"
#include "dnstamper/util/text.hpp"

namespace dnstamper::probe {

/// A probe target on the real network. `key` is the address the transcript
/// carries; packets go to host:port, which lets a locally served fleet sit
/// behind loopback ports while the records stay keyed by address.
struct UdpTarget {
    Ipv4Address key;
    Ipv4Address host;
    std::uint16_t port = 53;
};

/// Parses "a.b.c.d[:port]". The host must be a literal address: resolving a
/// target's name through some resolver would beg the question the probe asks.
inline UdpTarget parse_udp_target(const std::string& text) {
    UdpTarget t;
    const auto colon = text.find(':');
    t.host = Ipv4Address::parse(colon == std::string::npos ? text : text.substr(0, colon));
    t.key = t.host;
    if (colon != std::string::npos) {
        const auto port = parse_unsigned(text.substr(colon + 1), "port");
        if (port == 0 || port > 65535) throw InputError("port out of range: " + text);
        t.port = static_cast<std::uint16_t>(port);
    }
    return t;
}

/// Sends queries over real UDP sockets, one throwaway socket per exchange.
/// Anything that stops a reply from arriving (silence, ICMP refusal, send
/// failure) is reported as a timeout: from the survey's viewpoint those are
/// all just "the resolver said nothing".
class UdpTransport : public QueryTransport {
public:
    void add_target(const UdpTarget& t) {
        if (targets_.count(t.key))
            throw InputError("duplicate probe target address " + t.key.to_string());
        targets_.emplace(t.key, t);
    }

    std::vector<Ipv4Address> keys() const {
        std::vector<Ipv4Address> out;
        for (const auto& [key, t] : targets_) out.push_back(key);
        return out;
    }

    ExchangeResult exchange(Ipv4Address resolver, const std::vector<std::uint8_t>& query,
                            std::uint64_t timeout_us) override {
        auto it = targets_.find(resolver);
        if (it == targets_.end())
            throw InputError("no probe target at " + resolver.to_string());
        const auto& target = it->second;

        const auto started = std::chrono::steady_clock::now();
        auto elapsed_us = [&] {
            return static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::microseconds>(
                    std::chrono::steady_clock::now() - started)
                    .count());
        };
        auto silence = [&] { return ExchangeResult{false, {}, timeout_us}; };

        const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
        if (fd < 0) return silence();

        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(target.port);
        addr.sin_addr.s_addr = htonl(target.host.value());
        // connect() narrows receives to this peer and surfaces ICMP errors.
        if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
            ::send(fd, query.data(), query.size(), 0) < 0) {
            ::close(fd);
            return silence();
        }

        pollfd pfd{fd, POLLIN, 0};
        const int wait_ms = static_cast<int>(std::max<std::uint64_t>(1, timeout_us / 1000));
        if (::poll(&pfd, 1, wait_ms) <= 0) {
            ::close(fd);
            return silence();
        }
        std::uint8_t buf[4096];
        const ssize_t n = ::recv(fd, buf, sizeof buf, 0);
        ::close(fd);
        if (n <= 0) return silence();

        ExchangeResult out;
        out.replied = true;
        out.reply.assign(buf, buf + n);
        out.elapsed_us = elapsed_us();
        return out;
    }

private:
    std::map<Ipv4Address, UdpTarget> targets_;
};

}  // namespace dnstamper::probe
