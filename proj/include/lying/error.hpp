#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lying {

struct Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

// Formula mentions an agent or atom the model/signature does not declare.
struct SignatureError : public Error {
  using Error::Error;
};

// Operator or flavor not available on this kind of structure.
struct UnsupportedError : public Error {
  using Error::Error;
};

// Malformed model, action model, or scenario input.
struct InputError : public Error {
  using Error::Error;
};

}  // namespace lying
