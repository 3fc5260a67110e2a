#ifndef POLMOD_ERROR_HPP
#define POLMOD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace polmod {

enum class ErrorKind {
    IndexOutOfRange,
    DimensionMismatch,
    NonHomogeneous,
    ZeroPolynomial,
    DegreeMismatch,
    NotSymmetric,
    NonIntegral,
    NegativeCoefficient,
    InvalidArgument,
    Parse,
    UnknownFamily,
    Fixture,
};

// Internal-consistency failures map to CLI exit code 2, everything else to 1.
inline bool is_internal(ErrorKind k) {
    return k == ErrorKind::NotSymmetric || k == ErrorKind::NonIntegral ||
           k == ErrorKind::NegativeCoefficient;
}

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonHomogeneous: return "NonHomogeneous";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::Fixture: return "FixtureError";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg)
        : std::runtime_error(std::string(kind_name(k)) + ": " + msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace polmod

#endif
