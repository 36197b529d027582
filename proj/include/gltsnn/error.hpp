#ifndef GLTSNN_ERROR_HPP
#define GLTSNN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gltsnn {

// Precondition violations (bad shapes, out-of-range parameters) are reported
// with std::invalid_argument. The types below cover I/O and persistence.

/// Unreadable or malformed input data (CSV).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model document that cannot be decoded.
class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model document written with an unsupported schema version.
class ModelVersionError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

}  // namespace gltsnn

#endif  // GLTSNN_ERROR_HPP
