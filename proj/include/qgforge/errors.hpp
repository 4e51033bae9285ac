#pragma once

#include <stdexcept>
#include <string>

namespace qgforge {

// Base class for every error the library throws.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad table shape, out-of-range entry, parse failure.
class invalid_input : public error {
public:
    using error::error;
};

// An operation needs an axiom the magma does not satisfy, e.g. left division
// on a magma whose rows are not permutations.
class axiom_error : public error {
public:
    using error::error;
};

// A documented precondition of an operation was not met.
class precondition_error : public error {
public:
    using error::error;
};

// A guaranteed internal invariant failed. Indicates a bug or an input that
// silently violates a construction's hypotheses, never a routine condition.
class consistency_error : public error {
public:
    using error::error;
};

// Input exceeds a documented size ceiling.
class capacity_error : public error {
public:
    using error::error;
};

// A constrained sampler ran out of candidates.
class search_exhausted : public error {
public:
    using error::error;
};

} // namespace qgforge
