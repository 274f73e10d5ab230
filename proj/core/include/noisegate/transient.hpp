#pragma once

#include "noisegate/device_model.hpp"
#include "noisegate/netlist.hpp"
#include "noisegate/waveform.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace noisegate
{

enum class IntegrationMethod
{
  BackwardEuler,
  Trapezoidal
};

struct SimConfig
{
  double t_step = 1e-12;
  double t_stop = 1e-9;
  IntegrationMethod method = IntegrationMethod::Trapezoidal;
  double newton_tol = 1e-6;
  int newton_max_iters = 50;

  void check() const;
};

/// Voltage applied to one input port.
class Stimulus
{
public:
  enum class Kind
  {
    SquareWave,
    PiecewiseLinear,
    Samples
  };

  /// Starts at `low`, rises after `delay`; `rise` applies to both edges.
  static Stimulus square( std::string node, double low, double high, double period, double delay = 0.0,
                          double rise = 0.0, double duty = 0.5 );
  static Stimulus piecewise_linear( std::string node, std::vector<std::pair<double, double>> points );
  static Stimulus constant( std::string node, double volts );
  /// Sample `i` applies at time t0 + i*dt; nearest-sample lookup, clamped at both ends.
  static Stimulus samples( std::string node, Waveform w );

  const std::string& node() const noexcept { return node_; }
  Kind kind() const noexcept { return kind_; }
  double value_at( double t ) const;
  /// Throws ContractError when square-wave levels leave [-0.5 vdd, 1.5 vdd] or parameters are malformed.
  void check( double vdd ) const;

private:
  std::string node_;
  Kind kind_ = Kind::PiecewiseLinear;
  double low_ = 0.0, high_ = 0.0, period_ = 0.0, delay_ = 0.0, rise_ = 0.0, duty_ = 0.5;
  std::vector<std::pair<double, double>> points_;
  Waveform samples_;
};

/// Conductance from every solved node to ground, for Jacobian conditioning.
inline constexpr double gmin = 1e-12;

/// Residual bound for a DC solution, in amperes.
inline constexpr double dc_residual_tol = 1e-9;

/// DC solution by damped Newton from a mid-rail guess. The output and
/// output-complement ports start at 0.45 V and 0.55 V (scaled to vdd) so
/// bistable structures settle deterministically. Falls back to pseudo-transient
/// continuation when plain Newton stalls. Throws ConvergenceError on failure.
std::map<std::string, double> dc_operating_point( const Netlist& n, const DeviceModelParams& p,
                                                  const std::map<std::string, double>& inputs,
                                                  const SimConfig& cfg = {} );

struct SimResult
{
  std::map<std::string, Waveform> nodes;
  Waveform i_vdd; ///< current delivered by the supply
  long newton_iterations = 0;

  const Waveform& at( const std::string& node ) const;
};

/// Fixed-step transient analysis from the DC operating point at t = 0.
/// `probes` restricts which node waveforms are recorded (all nodes when empty);
/// the supply current is always recorded.
SimResult simulate( const Netlist& n, const DeviceModelParams& p, const std::vector<Stimulus>& stimuli,
                    const SimConfig& cfg, const std::vector<std::string>& probes = {} );

} // namespace noisegate
