#pragma once

#include <stdexcept>
#include <string>

namespace dklt {

// Argument outside the mathematical domain of an operation (x <= 0, tau = 0 for K_s, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested order beyond the certified accuracy envelope.
class AccuracyEnvelopeExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

// Evaluation point outside the wedge where a series is certified to converge.
class OutsideCertifiedWedge : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonFiniteIntegrand : public std::runtime_error {
 public:
  NonFiniteIntegrand(double abscissa, const std::string& what)
      : std::runtime_error(what), abscissa_(abscissa) {}
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

class TailNotControllable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dklt
