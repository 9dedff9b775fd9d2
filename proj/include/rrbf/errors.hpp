#pragma once

#include <stdexcept>
#include <string>

namespace rrbf {

// Bad argument values: wrong lengths, out-of-range parameters, NaN inputs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller broke a documented precondition (e.g. non-Hermitian input to a
// Hermitian-only routine).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The channel realization or beam set carries no usable gain.
class DegenerateChannel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace rrbf
