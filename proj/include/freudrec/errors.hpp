#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freudrec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A weight parameter violates its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A closed-form expression hits a vanishing denominator.
class DegenerateCase : public Error {
 public:
  using Error::Error;
};

/// The forward recurrence left (eps, 1 - eps). `index()` is the first bad n.
class DivergedTrial : public Error {
 public:
  DivergedTrial(std::size_t index, double value)
      : Error("recurrence diverged at n=" + std::to_string(index) +
              " (a_tilde^2=" + std::to_string(value) + ")"),
        index_(index),
        value_(value) {}

  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class LossOfOrthogonality : public Error {
 public:
  using Error::Error;
};

}  // namespace freudrec
