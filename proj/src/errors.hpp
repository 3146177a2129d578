#pragma once

#include <stdexcept>
#include <string>

#include <imgshare/imgshare.h>

namespace imgshare {

// Core error type; the C boundary maps code() onto the public enum.
class Error : public std::runtime_error {
 public:
  Error(imgshare_status code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  imgshare_status code() const noexcept { return code_; }

 private:
  imgshare_status code_;
};

[[noreturn]] inline void raise(imgshare_status code, const std::string &message) {
  throw Error(code, message);
}

}  // namespace imgshare
