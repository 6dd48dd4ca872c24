#pragma once

#include <stdexcept>
#include <string>

namespace pfc {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse = 2,
  Domain = 3,
  Dimension = 4,
  Budget = 5,
  NotCertified = 6,
  Io = 7,
  Internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace pfc

namespace pfc {

// Raised by exact (rational) evaluation when a value leaves the rationals.
class NotExact : public Error {
 public:
  explicit NotExact(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

}  // namespace pfc
