#pragma once

#include <stdexcept>
#include <string>

namespace gidkit {

enum class ErrorKind {
    InvalidVertex,
    InvalidArgument,
    NotAncestral,
    NotIdentifiable,
    NonPositiveInput,
    ScopeMismatch,
    TooLarge,
    InvalidRealization,
    ConstructionFailed,
    InternalContradiction,
    Refused,
    ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gidkit
