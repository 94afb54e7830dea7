#include "gidkit/error.hpp"

namespace gidkit {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidVertex: return "InvalidVertex";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NotAncestral: return "NotAncestral";
        case ErrorKind::NotIdentifiable: return "NotIdentifiable";
        case ErrorKind::NonPositiveInput: return "NonPositiveInput";
        case ErrorKind::ScopeMismatch: return "ScopeMismatch";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::InvalidRealization: return "InvalidRealization";
        case ErrorKind::ConstructionFailed: return "ConstructionFailed";
        case ErrorKind::InternalContradiction: return "InternalContradiction";
        case ErrorKind::Refused: return "Refused";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace gidkit
