#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mwg {

// Values are part of the C ABI (see mwg.h); append only.
enum class ErrorCode : int {
    Ok = 0,
    NonPositiveWeight = 1,
    DanglingEndpoint = 2,
    DuplicateId = 3,
    UnknownEdge = 4,
    UnknownVertex = 5,
    OverlappingBlocks = 6,
    LoopContraction = 7,
    LoopAtVertex = 8,
    EmptyVertexSet = 9,
    PartialMap = 10,
    SizeLimitExceeded = 11,
    EmptyGraph = 12,
    NotHermitian = 13,
    ConvergenceFailure = 14,
    NegativeShift = 15,
    NotCombinatorial = 16,
    Disconnected = 17,
    ZeroVector = 18,
    IndexOutOfRange = 19,
    HypothesisNotSatisfied = 20,
    SameVertex = 21,
    MultiEdge = 22,
    NotPendant = 23,
    InvalidStep = 24,
    NotSimple = 25,
    NonzeroPotential = 26,
    NotAHomomorphism = 27,
    AllVerticesVirtualised = 28,
    BracketViolation = 29,
    NotTIndependent = 30,
    IndexCountMismatch = 31,
    CertificateViolation = 32,
    InconsistentWeight = 33,
    ParseError = 34,
    IoError = 35,
    InvalidArgument = 36,
};

std::string_view errorName(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace mwg
