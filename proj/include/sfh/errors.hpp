#pragma once

#include <stdexcept>
#include <string>

namespace sfh {

// Every failure category gets its own code so the CLI can map it to a
// distinct exit status and tests can assert on the category, not the text.
enum class ErrorCode {
    MalformedInput = 2,
    InconsistentCellStructure = 3,
    UnbalancedDiagram = 4,
    RegionNotOnBoundary = 5,
    TranslateConstructionFailed = 6,
    SubordinateConditionViolated = 7,
    NotAChainComplex = 8,
    MalformedDomain = 9,
    TruncationWithoutCertificate = 10,
    NotNice = 11,
    NotAdmissible = 12,
    NotTranslateType = 13,
    MarkedSubdiagramInvalid = 14,
    UncertifiedTriple = 15,
    DimensionMismatch = 16,
    MarkingNotCycleCertified = 17,
    GluingConditionViolated = 18,
    StepMismatch = 19,
    OddOrNonpositivePointCount = 20,
    InternalError = 21,
};

const char* error_code_name(ErrorCode c);

class EngineError : public std::runtime_error {
  public:
    EngineError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw EngineError(code, what);
}

}  // namespace sfh
