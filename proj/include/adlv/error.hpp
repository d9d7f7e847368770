#pragma once

#include <stdexcept>
#include <string>

namespace adlv {

// All library failures carry a stable machine-readable code; the CLI prints
// them as "error[Code]: message".
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace adlv
