#pragma once

#include <stdexcept>
#include <string>

namespace pcband {

// Base class for every error thrown by the library.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (wrong polarization,
// asymmetric profile on the symmetric path, complex wavenumber where a
// real one is required, ...).
class precondition_error : public error {
public:
  using error::error;
};

// The local wavenumber vanishes (cutoff) inside a region that must be
// integrated through; the coefficient matrices are singular there.
class singularity_error : public error {
public:
  using error::error;
};

// Adaptive quadrature failed to reach the requested tolerance within the
// refinement budget.  Carries the worst remaining error estimate.
class quad_error : public error {
public:
  quad_error(const std::string& what, double worst_estimate)
      : error(what), worst_estimate_(worst_estimate) {}
  double worst_estimate() const { return worst_estimate_; }

private:
  double worst_estimate_;
};

// A numerical verification inside an algorithm failed (ODE Wronskian
// drift, non-monotone extrapolation sequence, real-output residual too
// large, ...).  Distinct from precondition_error: the inputs were legal,
// the computation itself went bad.
class numerical_error : public error {
public:
  using error::error;
};

// Expression parsing failed; `position` is a 0-based offset into the input.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t position)
      : error(what), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace pcband
