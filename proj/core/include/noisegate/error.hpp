#pragma once

#include <stdexcept>
#include <string>

namespace noisegate
{

/// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated by the caller.
class ContractError : public Error
{
public:
  using Error::Error;
};

class UnsupportedGateError : public Error
{
public:
  explicit UnsupportedGateError( std::string gate )
      : Error( "unsupported gate: " + gate ), gate_( std::move( gate ) ) {}

  const std::string& gate() const noexcept { return gate_; }

private:
  std::string gate_;
};

/// Newton iteration failed to reach tolerance.
class ConvergenceError : public Error
{
public:
  ConvergenceError( const std::string& what, double time, std::string node, double residual )
      : Error( what ), time_( time ), node_( std::move( node ) ), residual_( residual ) {}

  /// Simulation time of the failing step, or a negative value for DC analysis.
  double time() const noexcept { return time_; }
  const std::string& node() const noexcept { return node_; }
  double residual() const noexcept { return residual_; }

private:
  double time_;
  std::string node_;
  double residual_;
};

class NumericalError : public Error
{
public:
  using Error::Error;
};

/// Malformed experiment configuration or command-line usage.
class ConfigError : public Error
{
public:
  using Error::Error;
};

} // namespace noisegate
