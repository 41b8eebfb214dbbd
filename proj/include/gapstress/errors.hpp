#ifndef GAPSTRESS_ERRORS_HPP
#define GAPSTRESS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gapstress {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A focus of the bipolar map (or another point where a field is undefined).
class SingularPoint : public Error {
 public:
  using Error::Error;
};

/// The bipolar pre-image of the point at infinity, (zeta, theta) = (0, 0).
class PointAtInfinity : public Error {
 public:
  using Error::Error;
};

/// A point outside the closed exterior region |zeta| <= s.
class OutOfRegion : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain on which a series or closed form is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// A series could not reach its tolerance within the term cap.
class TruncationFailure : public Error {
 public:
  TruncationFailure(const std::string& what, double tail_bound, long terms)
      : Error(what + " (tail bound " + std::to_string(tail_bound) + " after " +
              std::to_string(terms) + " terms)"),
        tail_bound_(tail_bound),
        terms_(terms) {}

  double tail_bound() const noexcept { return tail_bound_; }
  long terms() const noexcept { return terms_; }

 private:
  double tail_bound_;
  long terms_;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, double error_estimate)
      : Error(what + " (error estimate " + std::to_string(error_estimate) + ")"),
        error_estimate_(error_estimate) {}

  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

}  // namespace gapstress

#endif  // GAPSTRESS_ERRORS_HPP
