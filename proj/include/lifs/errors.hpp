#pragma once

#include <stdexcept>
#include <string>

namespace lifs {

// Every failure the engine can signal deliberately. Callers that need to map
// failures to process exit codes switch on `code()`.
enum class ErrorCode {
    OutOfBounds,
    InvalidSymbol,
    EmptySetDistance,
    NonContractive,
    DomainNotNested,
    NotGlobal,
    NotGlobalizable,
    BudgetExceeded,
    InadmissibleWord,
    AtEndpoint,
    Inconsistent,
    EmptyEndpointSet,
    EmptyIterate,
    SchemaError,
    OpenDomainRejected,
    LipschitzMismatch,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

const char* error_code_name(ErrorCode code);

}  // namespace lifs
