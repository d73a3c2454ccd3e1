#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shotr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A CSV row that cannot be interpreted. Carries the 1-based line number.
class MalformedRow : public Error {
public:
    MalformedRow(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Two samples of the same track share a time stamp.
class DuplicateTimestamp : public Error {
public:
    DuplicateTimestamp(const std::string& track_id, double t)
        : Error("track '" + track_id + "' has duplicate time stamp " + std::to_string(t)),
          track_id_(track_id) {}

    const std::string& track_id() const noexcept { return track_id_; }

private:
    std::string track_id_;
};

class NonMonotoneTimes : public Error {
public:
    using Error::Error;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

/// The constrained least-squares KKT block could not be factorized.
class SingularSystem : public Error {
public:
    SingularSystem(std::size_t cell, const std::string& reason)
        : Error("singular reconstruction system in cell " + std::to_string(cell) + ": " + reason),
          cell_(cell) {}

    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

class UnsupportedDegree : public Error {
public:
    using Error::Error;
};

class MissingNeighbor : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

}  // namespace shotr
