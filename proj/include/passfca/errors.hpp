#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace passfca {

/// Malformed input text. `offset` is a byte offset for JSON input and a
/// 1-based line number for line-oriented formats.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset) : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A well-formed record that violates the data contract (missing field,
/// event past the last bin under the reject policy, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what, std::optional<long long> event_id = std::nullopt)
        : std::runtime_error(what), event_id_(event_id)
    {
    }
    std::optional<long long> event_id() const noexcept { return event_id_; }

private:
    std::optional<long long> event_id_;
};

class BinOverflowError : public DataError {
public:
    BinOverflowError(const std::string& what, double event_sec, std::optional<long long> event_id = std::nullopt)
        : DataError(what, event_id), event_sec_(event_sec)
    {
    }
    double event_sec() const noexcept { return event_sec_; }

private:
    double event_sec_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace passfca
