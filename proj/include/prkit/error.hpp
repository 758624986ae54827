#pragma once

#include <stdexcept>
#include <string>

namespace prkit {

/// Error raised by any stage; `tag` is a stable machine-readable category
/// (e.g. "positive-dimensional", "non-generic coincidence", "fit:exhausted").
class Error : public std::runtime_error {
 public:
  Error(std::string tag, const std::string& what)
      : std::runtime_error(what), tag_(std::move(tag)) {}
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

}  // namespace prkit
