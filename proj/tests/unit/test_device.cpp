#include "noisegate/device_model.hpp"
#include "noisegate/error.hpp"

#include <doctest.h>

#include <random>

using namespace noisegate;

namespace
{
DeviceModelParams no_clm()
{
  DeviceModelParams p;
  p.lambda = 0.0;
  return p;
}
} // namespace

TEST_CASE( "square-law oracles" )
{
  auto p = no_clm();
  // (200e-6 / 2) * 0.7^2
  CHECK( mosfet_current( p, DeviceKind::NMOS, 1.0, 1.0, 1.0 ) == doctest::Approx( 49.0e-6 ).epsilon( 1e-12 ) );
  CHECK( mosfet_current( p, DeviceKind::NMOS, 1.0, 0.2, 1.0 ) == 0.0 );
  for ( double vgs : { 0.0, 0.5, 1.0 } )
    CHECK( mosfet_current( p, DeviceKind::NMOS, 1.0, vgs, 0.0 ) == 0.0 );
  // triode: k((vov) vds - vds^2/2) = 200e-6 (0.7*0.2 - 0.02)
  CHECK( mosfet_current( p, DeviceKind::NMOS, 1.0, 1.0, 0.2 ) == doctest::Approx( 24.0e-6 ) );
  // strength scales k
  CHECK( mosfet_current( p, DeviceKind::NMOS, 2.0, 1.0, 1.0 ) == doctest::Approx( 98.0e-6 ) );
}

TEST_CASE( "channel-length modulation" )
{
  DeviceModelParams p; // lambda 0.1
  CHECK( mosfet_current( p, DeviceKind::NMOS, 1.0, 1.0, 1.0 ) == doctest::Approx( 49.0e-6 * 1.1 ) );
}

TEST_CASE( "PMOS mirrors NMOS with pmos_ratio" )
{
  auto p = no_clm();
  // strength 2 * ratio 0.5 gives the unit NMOS k; current flows source to drain
  CHECK( mosfet_current( p, DeviceKind::PMOS, 2.0, -1.0, -1.0 ) == doctest::Approx( -49.0e-6 ) );
  CHECK( mosfet_current( p, DeviceKind::PMOS, 2.0, -0.2, -1.0 ) == 0.0 );
  CHECK( mosfet_current( p, DeviceKind::PMOS, 2.0, 0.5, -1.0 ) == 0.0 );
}

TEST_CASE( "drain/source symmetry" )
{
  DeviceModelParams p;
  // swapping terminals: vgs' = vgs - vds, vds' = -vds
  std::mt19937_64 rng( 3 );
  std::uniform_real_distribution<double> u( -1.2, 1.2 );
  for ( int i = 0; i < 200; ++i )
  {
    double vg = u( rng ), vd = u( rng ), vs = u( rng );
    for ( auto k : { DeviceKind::NMOS, DeviceKind::PMOS } )
    {
      double a = mosfet_current( p, k, 1.0, vg - vs, vd - vs );
      double b = mosfet_current( p, k, 1.0, vg - vd, vs - vd );
      CHECK( a == doctest::Approx( -b ).epsilon( 1e-9 ).scale( 1e-6 ) );
    }
  }
}

TEST_CASE( "continuity at the triode/saturation boundary" )
{
  auto p = no_clm();
  for ( double vgs : { 0.4, 0.7, 1.0, 1.3 } )
  {
    const double b = vgs - p.vth_n, e = 1e-6;
    double lo = mosfet_current( p, DeviceKind::NMOS, 1.0, vgs, b - e );
    double hi = mosfet_current( p, DeviceKind::NMOS, 1.0, vgs, b + e );
    CHECK( std::abs( lo - hi ) < 1e-12 );
    auto l = mosfet_eval( p, DeviceKind::NMOS, 1.0, vgs, b - e );
    auto h = mosfet_eval( p, DeviceKind::NMOS, 1.0, vgs, b + e );
    CHECK( std::abs( l.gds - h.gds ) < 1e-9 );
    CHECK( std::abs( l.gm - h.gm ) < 1e-9 );
  }
}

TEST_CASE( "derivatives match finite differences" )
{
  DeviceModelParams p;
  std::mt19937_64 rng( 11 );
  std::uniform_real_distribution<double> u( -1.0, 1.0 );
  const double h = 1e-7;
  for ( int i = 0; i < 300; ++i )
  {
    double vgs = u( rng ), vds = u( rng );
    for ( auto k : { DeviceKind::NMOS, DeviceKind::PMOS } )
    {
      auto e = mosfet_eval( p, k, 1.5, vgs, vds );
      double gm = ( mosfet_current( p, k, 1.5, vgs + h, vds ) - mosfet_current( p, k, 1.5, vgs - h, vds ) ) / ( 2 * h );
      double gds = ( mosfet_current( p, k, 1.5, vgs, vds + h ) - mosfet_current( p, k, 1.5, vgs, vds - h ) ) / ( 2 * h );
      CHECK( e.gm == doctest::Approx( gm ).scale( 1e-6 ).epsilon( 1e-4 ) );
      CHECK( e.gds == doctest::Approx( gds ).scale( 1e-6 ).epsilon( 1e-4 ) );
    }
  }
}

TEST_CASE( "parameter checks" )
{
  DeviceModelParams p;
  CHECK_NOTHROW( p.check() );
  p.vdd = 0;
  CHECK_THROWS_AS( p.check(), ContractError );
  p = {};
  p.vth_n = 1.5;
  CHECK_THROWS_AS( p.check(), ContractError );
  p = {};
  p.lambda = -0.1;
  CHECK_THROWS_AS( p.check(), ContractError );
}
