#include "mwg/error.hpp"

namespace mwg {

std::string_view errorName(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Ok: return "OK";
        case ErrorCode::NonPositiveWeight: return "NON_POSITIVE_WEIGHT";
        case ErrorCode::DanglingEndpoint: return "DANGLING_ENDPOINT";
        case ErrorCode::DuplicateId: return "DUPLICATE_ID";
        case ErrorCode::UnknownEdge: return "UNKNOWN_EDGE";
        case ErrorCode::UnknownVertex: return "UNKNOWN_VERTEX";
        case ErrorCode::OverlappingBlocks: return "OVERLAPPING_BLOCKS";
        case ErrorCode::LoopContraction: return "LOOP_CONTRACTION";
        case ErrorCode::LoopAtVertex: return "LOOP_AT_VERTEX";
        case ErrorCode::EmptyVertexSet: return "EMPTY_VERTEX_SET";
        case ErrorCode::PartialMap: return "PARTIAL_MAP";
        case ErrorCode::SizeLimitExceeded: return "SIZE_LIMIT_EXCEEDED";
        case ErrorCode::EmptyGraph: return "EMPTY_GRAPH";
        case ErrorCode::NotHermitian: return "NOT_HERMITIAN";
        case ErrorCode::ConvergenceFailure: return "CONVERGENCE_FAILURE";
        case ErrorCode::NegativeShift: return "NEGATIVE_SHIFT";
        case ErrorCode::NotCombinatorial: return "NOT_COMBINATORIAL";
        case ErrorCode::Disconnected: return "DISCONNECTED";
        case ErrorCode::ZeroVector: return "ZERO_VECTOR";
        case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
        case ErrorCode::HypothesisNotSatisfied: return "HYPOTHESIS_NOT_SATISFIED";
        case ErrorCode::SameVertex: return "SAME_VERTEX";
        case ErrorCode::MultiEdge: return "MULTI_EDGE";
        case ErrorCode::NotPendant: return "NOT_PENDANT";
        case ErrorCode::InvalidStep: return "INVALID_STEP";
        case ErrorCode::NotSimple: return "NOT_SIMPLE";
        case ErrorCode::NonzeroPotential: return "NONZERO_POTENTIAL";
        case ErrorCode::NotAHomomorphism: return "NOT_A_HOMOMORPHISM";
        case ErrorCode::AllVerticesVirtualised: return "ALL_VERTICES_VIRTUALISED";
        case ErrorCode::BracketViolation: return "BRACKET_VIOLATION";
        case ErrorCode::NotTIndependent: return "NOT_T_INDEPENDENT";
        case ErrorCode::IndexCountMismatch: return "INDEX_COUNT_MISMATCH";
        case ErrorCode::CertificateViolation: return "CERTIFICATE_VIOLATION";
        case ErrorCode::InconsistentWeight: return "INCONSISTENT_WEIGHT";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::IoError: return "IO_ERROR";
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    }
    return "UNKNOWN";
}

}  // namespace mwg
