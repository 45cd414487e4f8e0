#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dnstamper/util/errors.hpp"
#include "dnstamper/util/text.hpp"

namespace dnstamper::dns {

/// Fully qualified, case-folded domain name. Always canonical: construction
/// via parse() lowercases and enforces the classic wire limits (label 1..63
/// octets, whole name at most 255 octets in wire form). The root name has
/// zero labels and prints as ".".
class DomainName {
public:
    DomainName() = default;

    /// Canonicalize a textual name. Accepts with or without the trailing dot;
    /// "." yields the root. Throws NameError on empty labels ("a..b") or
    /// length violations.
    static DomainName parse(const std::string& text) {
        if (text.empty()) throw NameError("empty name");
        if (text == ".") return DomainName();
        std::string t = text;
        if (t.back() == '.') t.pop_back();
        if (t.empty()) throw NameError("empty name");
        DomainName name;
        std::string label;
        for (char c : t) {
            if (c == '.') {
                name.push_label_checked(label);
                label.clear();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                throw NameError("whitespace in name: " + text);
            } else {
                label.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            }
        }
        name.push_label_checked(label);
        name.check_total_length();
        return name;
    }

    /// Build from pre-split labels. Lowercases; same limit checks as parse().
    static DomainName from_labels(std::vector<std::string> labels) {
        DomainName name;
        for (auto& l : labels) name.push_label_checked(to_lower(l));
        name.check_total_length();
        return name;
    }

    /// For the wire decoder, which validates lengths itself while reading.
    /// Still lowercases so every in-memory name is canonical.
    static DomainName from_labels_unchecked(std::vector<std::string> labels) {
        DomainName name;
        name.labels_.reserve(labels.size());
        for (auto& l : labels) name.labels_.push_back(to_lower(std::move(l)));
        return name;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    bool is_root() const { return labels_.empty(); }

    /// FQDN text form with trailing dot; root is ".".
    std::string to_string() const {
        if (labels_.empty()) return ".";
        std::string out;
        for (const auto& l : labels_) {
            out += l;
            out += '.';
        }
        return out;
    }

    /// Octets this name occupies uncompressed on the wire (length bytes plus
    /// the terminating zero).
    std::size_t wire_length() const {
        std::size_t n = 1;
        for (const auto& l : labels_) n += 1 + l.size();
        return n;
    }

    /// True when `ancestor` is a suffix of this name. Reflexive, so every
    /// name is a subdomain of itself, and everything is under the root.
    bool is_subdomain_of(const DomainName& ancestor) const {
        if (ancestor.labels_.size() > labels_.size()) return false;
        return std::equal(ancestor.labels_.rbegin(), ancestor.labels_.rend(), labels_.rbegin());
    }

    /// Labels below `ancestor`; caller must ensure the subdomain relation holds.
    std::size_t depth_below(const DomainName& ancestor) const {
        return labels_.size() - ancestor.labels_.size();
    }

    /// Name with the first label removed ("www.x.org." -> "x.org.").
    DomainName parent() const {
        if (labels_.empty()) throw InternalError("root has no parent");
        DomainName p;
        p.labels_.assign(labels_.begin() + 1, labels_.end());
        return p;
    }

    DomainName child(const std::string& label) const {
        std::vector<std::string> ls;
        ls.reserve(labels_.size() + 1);
        ls.push_back(label);
        ls.insert(ls.end(), labels_.begin(), labels_.end());
        return from_labels(std::move(ls));
    }

    auto operator<=>(const DomainName&) const = default;

private:
    void push_label_checked(const std::string& label) {
        if (label.empty()) throw NameError("empty label");
        if (label.size() > 63) throw NameError("label longer than 63 octets: " + label);
        labels_.push_back(label);
    }

    void check_total_length() const {
        if (wire_length() > 255) throw NameError("name longer than 255 octets: " + to_string());
    }

    std::vector<std::string> labels_;
};

}  // namespace dnstamper::dns
