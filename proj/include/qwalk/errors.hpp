#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Parameter outside the admissible domain (phi not in (0,1), z = 0, non-unit lambda^2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A closed-form denominator vanished at the requested phase.
class SingularParameterError : public std::runtime_error {
 public:
  SingularParameterError(const std::string& expression, double phi)
      : std::runtime_error("singular parameter: " + expression + " vanishes at phi = " +
                           std::to_string(phi)),
        expression_(expression),
        phi_(phi) {}

  const std::string& expression() const noexcept { return expression_; }
  double phi() const noexcept { return phi_; }

 private:
  std::string expression_;
  double phi_;
};

// The zero solution (alpha = 0) carries no decay parameter.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One of the theta_s expressions has a vanishing denominator for the given (alpha, beta).
class BranchDegenerateError : public std::runtime_error {
 public:
  BranchDegenerateError(int form, const std::string& what)
      : std::runtime_error(what), form_(form) {}
  int form() const noexcept { return form_; }

 private:
  int form_;
};

class DivergentSeriesError : public std::runtime_error {
 public:
  DivergentSeriesError(const std::string& what, double ratio)
      : std::runtime_error(what), ratio_(ratio) {}
  // |theta_s z| (PLUS side) or |theta_s / z| (MINUS side) at the rejected point.
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

// Weight reached the edge of the truncated lattice; the finite simulation is no longer exact.
class BoundaryLeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowCapError : public std::runtime_error {
 public:
  OverflowCapError(const std::string& what, long cap) : std::runtime_error(what), cap_(cap) {}
  long cap() const noexcept { return cap_; }

 private:
  long cap_;
};

}  // namespace qwalk
