#include "noisegate/device_model.hpp"

#include "noisegate/error.hpp"

namespace noisegate
{

void DeviceModelParams::check() const
{
  if ( !( vdd > 0.0 ) )
  {
    throw ContractError( "vdd must be positive" );
  }
  if ( !( vth_n > 0.0 && vth_n < vdd ) )
  {
    throw ContractError( "vth_n must lie in (0, vdd)" );
  }
  if ( !( vth_p < 0.0 && -vth_p < vdd ) )
  {
    throw ContractError( "vth_p must lie in (-vdd, 0)" );
  }
  if ( !( k_n > 0.0 ) || !( pmos_ratio > 0.0 ) )
  {
    throw ContractError( "transconductance parameters must be positive" );
  }
  if ( !( lambda >= 0.0 ) )
  {
    throw ContractError( "lambda must be non-negative" );
  }
}

namespace
{

/// Forward-mode (v_ds >= 0) n-type evaluation.
MosfetEval forward( double k, double vth, double lambda, double v_gs, double v_ds )
{
  const double vov = v_gs - vth;
  if ( vov <= 0.0 )
  {
    return {};
  }
  const double clm = 1.0 + lambda * v_ds;
  if ( v_ds < vov )
  {
    const double core = vov * v_ds - 0.5 * v_ds * v_ds;
    return { k * core * clm, k * v_ds * clm, k * ( ( vov - v_ds ) * clm + core * lambda ) };
  }
  const double core = 0.5 * vov * vov;
  return { k * core * clm, k * vov * clm, k * core * lambda };
}

MosfetEval n_type( double k, double vth, double lambda, double v_gs, double v_ds )
{
  if ( v_ds >= 0.0 )
  {
    return forward( k, vth, lambda, v_gs, v_ds );
  }
  // Source and drain swap: I(vgs, vds) = -F(vgs - vds, -vds).
  const auto r = forward( k, vth, lambda, v_gs - v_ds, -v_ds );
  return { -r.id, -r.gm, r.gm + r.gds };
}

} // namespace

MosfetEval mosfet_eval( const DeviceModelParams& p, DeviceKind kind, double strength, double v_gs, double v_ds )
{
  if ( kind == DeviceKind::NMOS )
  {
    return n_type( p.k_n * strength, p.vth_n, p.lambda, v_gs, v_ds );
  }
  if ( kind == DeviceKind::PMOS )
  {
    // I(vgs, vds) = -N(-vgs, -vds); both derivatives keep their sign.
    const auto r = n_type( p.k_n * p.pmos_ratio * strength, -p.vth_p, p.lambda, -v_gs, -v_ds );
    return { -r.id, r.gm, r.gds };
  }
  throw ContractError( "mosfet_eval called on a non-MOSFET device" );
}

} // namespace noisegate
