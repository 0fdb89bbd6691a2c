#pragma once

#include <stdexcept>
#include <string>

namespace cqmsc {

// Error taxonomy of the core library. The C API maps each class onto a
// status code; messages are meant to be shown to users as-is.

class invalid_argument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class numerical_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Orbit energy below the potential minimum: no classical orbit exists.
class below_minimum_error : public domain_error {
public:
  using domain_error::domain_error;
};

// Step size collapsed against the 1/q^3 barrier; carries the last good state.
class barrier_stiffness_error : public numerical_error {
public:
  barrier_stiffness_error(const std::string& what, double tau, double q, double p)
      : numerical_error(what), tau_(tau), q_(q), p_(p) {}
  double tau() const noexcept { return tau_; }
  double q() const noexcept { return q_; }
  double p() const noexcept { return p_; }

private:
  double tau_;
  double q_;
  double p_;
};

// Internal: raised by the stepper, translated by callers into the
// state-carrying barrier_stiffness_error.
class step_underflow_error : public numerical_error {
public:
  using numerical_error::numerical_error;
};

// Requested fit window has too few samples in the asymptotic regime.
class regime_not_reached_error : public numerical_error {
public:
  using numerical_error::numerical_error;
};

// Quadrature failed to meet its tolerance; carries the achieved estimate.
class quadrature_error : public numerical_error {
public:
  quadrature_error(const std::string& what, double achieved)
      : numerical_error(what), achieved_(achieved) {}
  double achieved_error() const noexcept { return achieved_; }

private:
  double achieved_;
};

// Evaluation too close to a pole of a closed-form expression.
class pole_error : public domain_error {
public:
  using domain_error::domain_error;
};

}  // namespace cqmsc
