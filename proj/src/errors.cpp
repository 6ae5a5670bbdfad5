#include "sfh/errors.hpp"

namespace sfh {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::InconsistentCellStructure: return "InconsistentCellStructure";
        case ErrorCode::UnbalancedDiagram: return "UnbalancedDiagram";
        case ErrorCode::RegionNotOnBoundary: return "RegionNotOnBoundary";
        case ErrorCode::TranslateConstructionFailed: return "TranslateConstructionFailed";
        case ErrorCode::SubordinateConditionViolated: return "SubordinateConditionViolated";
        case ErrorCode::NotAChainComplex: return "NotAChainComplex";
        case ErrorCode::MalformedDomain: return "MalformedDomain";
        case ErrorCode::TruncationWithoutCertificate: return "TruncationWithoutCertificate";
        case ErrorCode::NotNice: return "NotNice";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
        case ErrorCode::NotTranslateType: return "NotTranslateType";
        case ErrorCode::MarkedSubdiagramInvalid: return "MarkedSubdiagramInvalid";
        case ErrorCode::UncertifiedTriple: return "UncertifiedTriple";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::MarkingNotCycleCertified: return "MarkingNotCycleCertified";
        case ErrorCode::GluingConditionViolated: return "GluingConditionViolated";
        case ErrorCode::StepMismatch: return "StepMismatch";
        case ErrorCode::OddOrNonpositivePointCount: return "OddOrNonpositivePointCount";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

}  // namespace sfh
