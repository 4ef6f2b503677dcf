#pragma once

#include <stdexcept>
#include <string>

namespace liftlab {

enum class ErrorCode {
    DisconnectedInput,
    UnbalancedBipartition,
    SizeMismatch,
    NotRegular,
    NotSymmetric,
    ParityViolation,
    RetryCapExceeded,
    OddFiberWithLoops,
    CompletionFailed,
    MissingBase,
    DepthCapExceeded,
    SizeCapExceeded,
    BaseMismatch,
    LayoutMissing,
    KernelMomentFailure,
    RepairInfeasible,
    SCapExceeded,
    WitnessUnavailable,
    HardConstraintsViolated,
    LoopsForbidden,
    UnknownRow,
    UnknownBuiltin,
    InvalidArgument,
    Overflow,
    IoError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception carrying a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace liftlab
