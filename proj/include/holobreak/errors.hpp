#pragma once

#include <stdexcept>
#include <string>

namespace holobreak {

struct HoloError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gamma pole or other meromorphic singularity hit at an exact point.
struct PoleError : HoloError {
    using HoloError::HoloError;
};

struct DomainError : HoloError {
    using HoloError::HoloError;
};

// Non-integer power evaluated too close to the negative real axis.
struct BranchError : HoloError {
    using HoloError::HoloError;
};

struct SingularRestriction : HoloError {
    using HoloError::HoloError;
};

struct ParseError : HoloError {
    ParseError(const std::string& what, std::size_t pos)
        : HoloError(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

}  // namespace holobreak
