#pragma once

#include <stdexcept>
#include <string>

namespace tensortrack {

// Base class for every error thrown by this library. Callers that only want
// the exit-code split (computational vs usage) can catch the two subtrees.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data names a graph that cannot exist: duplicate slots, labels out of
// range, bad header fields.
class MalformedGraphError : public Error {
public:
    explicit MalformedGraphError(const std::string& msg) : Error(msg) {}
};

// Input data describes a graph with edges missing (some slot never used).
class IncompletenessError : public Error {
public:
    explicit IncompletenessError(const std::string& msg) : Error(msg) {}
};

// A requested computation exceeds its configured search-space or memory bound.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& msg) : Error(msg) {}
};

// A coupling flow reaches its Landau pole inside the requested time window.
class PoleCrossingError : public Error {
public:
    explicit PoleCrossingError(const std::string& msg) : Error(msg) {}
};

// An argument violates a documented precondition (rank too small for jackets,
// invalid edge reference, degenerate fit design, ...).
class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

// An invariant that should hold by construction failed (non-integer genus,
// mismatch between two internal routes). Indicates a bug, never user input.
class InternalConsistencyError : public Error {
public:
    explicit InternalConsistencyError(const std::string& msg) : Error(msg) {}
};

} // namespace tensortrack
