#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaitseg {

/// Base of every error raised by the library. Errors that describe bad input
/// data derive from DataError; the CLI maps those to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class InvalidSeries : public DataError {
public:
    using DataError::DataError;
};

class SeriesTooShort : public DataError {
public:
    SeriesTooShort(std::size_t have, std::size_t need)
        : DataError("SeriesTooShort: have " + std::to_string(have) + " samples, need " +
                    std::to_string(need)),
          have_(have), need_(need) {}
    std::size_t have() const noexcept { return have_; }
    std::size_t need() const noexcept { return need_; }

private:
    std::size_t have_;
    std::size_t need_;
};

class WindowTooLarge : public DataError {
public:
    WindowTooLarge(std::size_t window, std::size_t length)
        : DataError("WindowTooLarge: window of " + std::to_string(window) +
                    " samples exceeds series length " + std::to_string(length)) {}
};

class InvalidCutoff : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class EmptyInput : public DataError {
public:
    explicit EmptyInput(const std::string& what) : DataError("EmptyInput: " + what) {}
};

class ActivityCountMismatch : public DataError {
public:
    ActivityCountMismatch(std::size_t found, std::size_t expected)
        : DataError("ActivityCountMismatch: found " + std::to_string(found) +
                    " activity bouts, expected " + std::to_string(expected)),
          found_(found), expected_(expected) {}
    std::size_t found() const noexcept { return found_; }
    std::size_t expected() const noexcept { return expected_; }

private:
    std::size_t found_;
    std::size_t expected_;
};

class TurnCountMismatch : public DataError {
public:
    explicit TurnCountMismatch(std::size_t found)
        : DataError("TurnCountMismatch: found " + std::to_string(found) + " turns"),
          found_(found) {}
    std::size_t found() const noexcept { return found_; }

private:
    std::size_t found_;
};

class SegmentTooShort : public DataError {
public:
    using DataError::DataError;
};

class ParseError : public DataError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& reason)
        : DataError("ParseError at line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + reason),
          line_(line), column_(column), reason_(reason) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string reason_;
};

class HeaderMismatch : public DataError {
public:
    explicit HeaderMismatch(const std::string& column, const std::string& detail = {})
        : DataError("HeaderMismatch: column '" + column + "'" +
                    (detail.empty() ? std::string{} : " (" + detail + ")")),
          column_(column) {}
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

class DurationMismatch : public DataError {
public:
    DurationMismatch(double kin_s, double emg_s)
        : DataError("DurationMismatch: kinematic duration " + std::to_string(kin_s) +
                    " s vs EMG duration " + std::to_string(emg_s) + " s") {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gaitseg
