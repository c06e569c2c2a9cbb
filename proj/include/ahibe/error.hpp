#pragma once

#include <stdexcept>
#include <string>

namespace ahibe {

enum class ErrorKind {
  invalid_argument,  // caller violated a precondition
  malformed,         // structurally invalid encoding or object
  io,
  authentication,    // AEAD tag mismatch
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::invalid_argument, what);
}

}  // namespace ahibe
