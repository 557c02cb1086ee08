#ifndef COLLINEAR_ERRORS_HPP
#define COLLINEAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace collinear {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (|c| <= 1, n < 2, a digit outside the alphabet, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request would exceed a configured work or memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an iterative numerical method fails to converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File system failures; the message carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace collinear

#endif  // COLLINEAR_ERRORS_HPP
