#pragma once

#include <stdexcept>
#include <string>

namespace orthoscalar {

/// Library error carrying a stable machine-readable code ("NotATree",
/// "ShapeMismatch", ...) alongside a human-readable detail message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace orthoscalar
