// Error taxonomy shared by library and CLI.
//   input_error        -> bad user input (files, flags, malformed expressions); CLI exit 2
//   unsupported_error  -> valid input outside the supported scope (e.g. non-Dynkin
//                         where finiteness is required); CLI exit 2
//   identity_violation -> a mathematical identity the library guarantees failed to
//                         hold; carries a short tag naming the identity; CLI exit 1
// std::logic_error is reserved for internal must-be-impossible states; CLI exit 1.
#pragma once

#include <stdexcept>
#include <string>

namespace arq {

struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

struct unsupported_error : std::runtime_error {
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

struct identity_violation : std::runtime_error {
  identity_violation(std::string tag_, const std::string& what)
      : std::runtime_error("[" + tag_ + "] " + what), tag(std::move(tag_)) {}
  std::string tag;
};

}  // namespace arq
