#pragma once

#include "noisegate/netlist.hpp"

namespace noisegate
{

/// Behavioral long-channel MOSFET parameters.
struct DeviceModelParams
{
  double vdd = 1.0;
  double vth_n = 0.3;
  double vth_p = -0.3;
  double k_n = 200e-6;    ///< A/V^2 for a unit-strength NMOS
  double pmos_ratio = 0.5; ///< k_p / k_n before strength scaling
  double lambda = 0.1;    ///< 1/V
  double temp_c = 25.0;   ///< informational only

  /// Throws ContractError when an invariant does not hold.
  void check() const;
};

/// Drain-to-source current and its partial derivatives.
struct MosfetEval
{
  double id = 0.0;  ///< A, positive from drain to source
  double gm = 0.0;  ///< dId/dVgs
  double gds = 0.0; ///< dId/dVds
};

/// Square-law model with channel-length modulation. The device is
/// symmetric: for v_ds < 0 the roles of drain and source are exchanged.
/// PMOS uses negated voltages, |vth_p| and k_n * pmos_ratio.
MosfetEval mosfet_eval( const DeviceModelParams& p, DeviceKind kind, double strength, double v_gs, double v_ds );

inline double mosfet_current( const DeviceModelParams& p, DeviceKind kind, double strength, double v_gs, double v_ds )
{
  return mosfet_eval( p, kind, strength, v_gs, v_ds ).id;
}

} // namespace noisegate
