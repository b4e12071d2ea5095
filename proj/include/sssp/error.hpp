#pragma once

#include <stdexcept>
#include <string>

namespace sssp {

enum class ErrorKind {
  kInvalidArgument,  // domain errors: bad ids, bad parameters
  kParse,
  kRange,
  kIo,
  kFormat,
  kInfeasible,
  kConfig,
  kCapacity,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace sssp
