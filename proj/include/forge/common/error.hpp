#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace forge {

// Hard failure with a stable machine-readable code ("alignment", "schema",
// "config", "hash-mismatch", ...). Filter verdicts and validation reports are
// data, not errors; Error is reserved for broken inputs and broken contracts.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace forge
