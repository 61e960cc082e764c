#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lwheel {

// Bad arguments: invalid vertex ids, malformed decompositions, wrong flavor.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structure that should hold by construction does not (tampered wheel,
// failed certificate).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// domain() and friends need middle edges, i.e. a special wheel.
class UnsupportedPolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(const std::string& what, std::size_t minimal_m)
      : std::runtime_error(what), minimal_m_(minimal_m) {}

  // Smallest m for which the requested uniform policy can be realised.
  std::size_t minimal_m() const noexcept { return minimal_m_; }

 private:
  std::size_t minimal_m_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace lwheel
