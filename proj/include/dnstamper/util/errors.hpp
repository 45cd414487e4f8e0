#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dnstamper {

/// Anything wrong with user-supplied input: files, CLI values, malformed
/// config. CLI maps this family to exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse failure in a line-oriented input file. Carries file and 1-based line.
class ParseError : public InputError {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : InputError(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Domain name violating length or shape rules.
class NameError : public InputError {
public:
    explicit NameError(const std::string& what) : InputError("bad domain name: " + what) {}
};

/// Message cannot be serialized (oversized name smuggled past construction).
class EncodeError : public std::runtime_error {
public:
    explicit EncodeError(const std::string& what) : std::runtime_error("encode: " + what) {}
};

/// Wire bytes cannot be parsed back into a message. Expected at runtime when
/// probing arbitrary servers; the classifier turns it into a verdict instead
/// of propagating.
class DecodeError : public std::runtime_error {
public:
    DecodeError(std::size_t offset, const std::string& what)
        : std::runtime_error("decode at offset " + std::to_string(offset) + ": " + what),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A bug: invariant broken inside the library. CLI maps this to exit code 2.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error("internal: " + what) {}
};

}  // namespace dnstamper
