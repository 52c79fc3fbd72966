#pragma once

#include <stdexcept>
#include <string>

namespace nnr {

// Computational errors carry a stable machine-readable code next to the
// human message; the CLI maps them to {"error": code, ...} on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace nnr
