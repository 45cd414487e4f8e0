#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dnstamper/util/errors.hpp"

namespace dnstamper {

inline std::string hex_encode(const std::vector<std::uint8_t>& bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

inline std::vector<std::uint8_t> hex_decode(const std::string& hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) throw InputError("hex string has odd length");
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw InputError("bad hex digit in: " + hex);
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return out;
}

inline std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

/// Whitespace-split into tokens. Tabs and spaces both separate.
inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

/// Strip a trailing "# ..." comment, then trim. Returns empty for blank and
/// comment-only lines.
inline std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

/// Calls fn(line_number, content) for every non-blank, non-comment line.
template <typename Fn>
void for_each_data_line_in(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string data = strip_comment(line);
        if (data.empty()) continue;
        fn(lineno, data);
    }
}

template <typename Fn>
void for_each_data_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    for_each_data_line_in(in, std::forward<Fn>(fn));
}

inline unsigned long parse_unsigned(const std::string& s, const std::string& what) {
    if (s.empty()) throw InputError("bad " + what + ": empty");
    unsigned long v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw InputError("bad " + what + ": " + s);
        v = v * 10 + static_cast<unsigned long>(c - '0');
        if (v > 0xffffffffUL) throw InputError("bad " + what + " (too large): " + s);
    }
    return v;
}

}  // namespace dnstamper
