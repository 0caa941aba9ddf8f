#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tits {

/// Arithmetic failure: inverting zero, singular matrix, zero divisor in an extension.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsupported user input (descriptors, element strings, JSON).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A congruence map could not be built with a valid admissibility certificate.
class WHomUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The congruence image outgrew the enumeration cap.
class ImageTooLarge : public std::runtime_error {
 public:
  ImageTooLarge(std::uint64_t partial, std::uint64_t cap)
      : std::runtime_error("image too large for enumeration (reached " + std::to_string(partial) +
                           " elements, cap " + std::to_string(cap) + ")"),
        partial_count(partial),
        cap(cap) {}
  std::uint64_t partial_count;
  std::uint64_t cap;
};

/// An internal consistency check failed; this indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tits
