#include "liftlab/errors.hpp"

namespace liftlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DisconnectedInput: return "DisconnectedInput";
        case ErrorCode::UnbalancedBipartition: return "UnbalancedBipartition";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::NotRegular: return "NotRegular";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::ParityViolation: return "ParityViolation";
        case ErrorCode::RetryCapExceeded: return "RetryCapExceeded";
        case ErrorCode::OddFiberWithLoops: return "OddFiberWithLoops";
        case ErrorCode::CompletionFailed: return "CompletionFailed";
        case ErrorCode::MissingBase: return "MissingBase";
        case ErrorCode::DepthCapExceeded: return "DepthCapExceeded";
        case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorCode::BaseMismatch: return "BaseMismatch";
        case ErrorCode::LayoutMissing: return "LayoutMissing";
        case ErrorCode::KernelMomentFailure: return "KernelMomentFailure";
        case ErrorCode::RepairInfeasible: return "RepairInfeasible";
        case ErrorCode::SCapExceeded: return "SCapExceeded";
        case ErrorCode::WitnessUnavailable: return "WitnessUnavailable";
        case ErrorCode::HardConstraintsViolated: return "HardConstraintsViolated";
        case ErrorCode::LoopsForbidden: return "LoopsForbidden";
        case ErrorCode::UnknownRow: return "UnknownRow";
        case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace liftlab
