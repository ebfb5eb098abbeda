#ifndef ASG_ERRORS_HPP
#define ASG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace asg {

// Error taxonomy mirrors the CLI exit codes:
//   ValidationError -> 1   bad parameter values (k > n, unknown token, ...)
//   IoError         -> 2   unreadable/corrupt/ill-formed files
//   ShapeError      -> 3   dimension or shape mismatch between objects
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

} // namespace asg

#endif // ASG_ERRORS_HPP
