#pragma once

#include <stdexcept>
#include <string>

namespace nanotrap {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A physical input outside the domain of the owning model.
///
/// Carries enough structure for the CLI to report which module rejected
/// which parameter and against what bound.
class PreconditionError : public Error {
public:
  PreconditionError(std::string module, std::string parameter, std::string bound)
      : Error(module + ": " + parameter + " violates " + bound),
        module_(std::move(module)),
        parameter_(std::move(parameter)),
        bound_(std::move(bound)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& parameter() const noexcept { return parameter_; }
  const std::string& bound() const noexcept { return bound_; }

private:
  std::string module_;
  std::string parameter_;
  std::string bound_;
};

/// Evaluation point inside the exclusion zone around a wire axis.
class SingularPointError : public Error {
public:
  using Error::Error;
};

/// 3D scattering length sits on the confinement-induced resonance.
class ResonanceError : public Error {
public:
  using Error::Error;
};

/// Barrier too low for a classically forbidden region at one quantum above the floor.
class NoBarrierError : public Error {
public:
  using Error::Error;
};

class BracketError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

}  // namespace nanotrap
