#ifndef HODGEKIT_ERRORS_HPP
#define HODGEKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hodgekit {

/// Domain error codes. The CLI prints the code name verbatim and exits 1.
enum class ErrorCode {
    DimMismatch,
    NotContained,
    NotChainCompatible,
    NotBoundaryClosed,
    AsymmetricWeights,
    DegreeOutOfRange,
    UnknownId,
    NotUnimodular,
    CapExceeded,
    NonIntegerAverage,
    ParabolicEnd,
    OddDimension,
    InvalidSpec,
    NotAnEndModel,
    MissingWeight,
    LogicError,
};

inline const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::NotChainCompatible: return "NotChainCompatible";
    case ErrorCode::NotBoundaryClosed: return "NotBoundaryClosed";
    case ErrorCode::AsymmetricWeights: return "AsymmetricWeights";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NonIntegerAverage: return "NonIntegerAverage";
    case ErrorCode::ParabolicEnd: return "ParabolicEnd";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotAnEndModel: return "NotAnEndModel";
    case ErrorCode::MissingWeight: return "MissingWeight";
    case ErrorCode::LogicError: return "LogicError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Malformed input file: carries the location for the CLI to report (exit 2).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, std::size_t line, const std::string& message)
        : std::runtime_error(message), file_(std::move(file)), line_(line) {}

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

} // namespace hodgekit

#endif // HODGEKIT_ERRORS_HPP
