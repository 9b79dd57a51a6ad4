#pragma once

#include <stdexcept>
#include <string>

namespace iris {

// Contract violations surface as exceptions; expected failures (a decode that
// cannot correct, an eyelid that is not there) are typed return values instead.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

struct GeometryError : Error {
    explicit GeometryError(const std::string& msg) : Error(msg) {}
};

struct NoEdgesError : Error {
    explicit NoEdgesError(const std::string& msg) : Error(msg) {}
};

struct UnwrapError : Error {
    explicit UnwrapError(const std::string& msg) : Error(msg) {}
};

struct DegenerateInputError : Error {
    explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

struct RegistrationError : Error {
    explicit RegistrationError(const std::string& msg) : Error(msg) {}
};

struct IncomparableError : Error {
    explicit IncomparableError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace iris
