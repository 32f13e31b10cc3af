#pragma once

#include <stdexcept>
#include <string>

namespace configset {

enum class ErrorCode {
  syntax_error,
  semantic_error,
  kind_mismatch,
  index_out_of_range,
  resource_limit,
  shape_mismatch,
  precondition_failed,
  search_cap_exceeded,
  synthesis_failed,
  io_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace configset
