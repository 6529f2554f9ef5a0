#pragma once

#include <stdexcept>
#include <string>

namespace hmf {

enum class Errc {
    NotFundamentalDiscriminant,
    NarrowClassNumberNotOne,
    NotTotallyPositive,
    ZeroElement,
    FactorizationTooLarge,
    GeneratorSearchExhausted,
    Overflow,
    ReconstructionUnstable,
    CrossCheckFailed,
    GammaPole,
    ZetaArgumentOdd,
    PreconditionViolated,
    WeightMismatch,
    FieldMismatch,
    FitInconsistent,
    NumericCrossCheckFailed,
    SymmetryViolated,
    InsufficientTruncation,
    NotStable,
    FactorizationFailed,
    EigenvalueCheckFailed,
    MissingPrime,
    RegionViolation,
    TailBoundTooLarge,
    NotInSpan,
    GridTooSparse,
    CacheCorrupt,
    ConfigError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace hmf
