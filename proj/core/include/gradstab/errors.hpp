#pragma once

#include <stdexcept>
#include <string>

namespace gradstab {

/// Malformed user input: bad problem files, non-inclusion maps, inhomogeneous
/// matrices, out-of-domain arguments. Maps to exit code 2 in the CLI.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested analysis does not fit in the supplied degree window
/// (truncation shift not found, saturation bound exceeds the window, ...).
/// Maps to exit code 3.
class WindowError : public std::runtime_error {
public:
  explicit WindowError(const std::string& what) : std::runtime_error(what) {}
};

/// A certified identity failed: SNF certificate, filtration containment,
/// exactness of a constructed sequence. These are theorems, so reaching this
/// indicates a bug. Maps to exit code 4.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gradstab
