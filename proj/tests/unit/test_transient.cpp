#include "noisegate/builders.hpp"
#include "noisegate/error.hpp"
#include "noisegate/transient.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace noisegate;

namespace
{
TruthTable lib( const char* n ) { return *TruthTable::from_library( n ); }

SimConfig fine( double t_stop )
{
  SimConfig c;
  c.t_step = 1e-12;
  c.t_stop = t_stop;
  return c;
}

// first index at or after `from` where w crosses `level`
std::size_t crossing( const Waveform& w, std::size_t from, double level )
{
  for ( std::size_t i = std::max<std::size_t>( from, 1 ); i < w.size(); ++i )
    if ( ( w[i - 1] - level ) * ( w[i] - level ) <= 0.0 && w[i - 1] != w[i] )
      return i;
  return w.size();
}
} // namespace

TEST_CASE( "DC operating points" )
{
  DeviceModelParams p;
  auto inv = build_conventional( lib( "INV" ) );
  CHECK( dc_operating_point( inv, p, { { "x0", 0.0 } } ).at( "out" ) == doctest::Approx( 1.0 ).epsilon( 1e-3 ) );
  CHECK( dc_operating_point( inv, p, { { "x0", 1.0 } } ).at( "out" ) < 1e-3 );

  auto nand = build_conventional( lib( "NAND2" ) );
  const double want[4] = { 1, 1, 1, 0 };
  for ( int r = 0; r < 4; ++r )
  {
    auto op = dc_operating_point( nand, p, { { "x0", double( r >> 1 ) }, { "x1", double( r & 1 ) } } );
    CHECK( std::abs( op.at( "out" ) - want[r] ) < 1e-3 );
  }
}

TEST_CASE( "DC holds every scheme at the truth table" )
{
  DeviceModelParams p;
  for ( const char* g : { "INV", "NAND2", "XOR2" } )
  {
    auto tt = lib( g );
    for ( auto s : all_schemes )
    {
      auto n = build( s, tt );
      for ( std::uint32_t r = 0; r < tt.rows(); ++r )
      {
        std::map<std::string, double> in;
        for ( unsigned i = 0; i < tt.arity(); ++i )
          in["x" + std::to_string( i )] = ( ( r >> ( tt.arity() - 1 - i ) ) & 1u ) ? 1.0 : 0.0;
        CAPTURE( g );
        CAPTURE( to_string( s ) );
        CAPTURE( r );
        double v = dc_operating_point( n, p, in ).at( "out" );
        CHECK( std::abs( v - ( tt( r ) ? 1.0 : 0.0 ) ) < 0.05 );
      }
    }
  }
}

TEST_CASE( "inverter follows a 1 GHz square wave" )
{
  DeviceModelParams p;
  auto inv = build_conventional( lib( "INV" ) );
  auto r = simulate( inv, p, { Stimulus::square( "x0", 0.0, 1.0, 1e-9, 0.0, 10e-12 ) }, fine( 3e-9 ) );
  const auto& out = r.at( "out" );
  REQUIRE( out.size() == 3001 );
  // input edges at 0.5 ns steps; output 50% point trails each by a few tens of ps
  for ( int e = 1; e < 6; ++e )
  {
    const std::size_t edge = std::size_t( e ) * 500;
    std::size_t c = crossing( out, edge, 0.5 );
    CAPTURE( e );
    CHECK( c > edge );
    CHECK( c - edge < 30 );
  }
  // settled levels mid-bit
  CHECK( out[400] < 0.01 );
  CHECK( out[900] > 0.99 );
}

TEST_CASE( "constant inputs leave the circuit at rest" )
{
  DeviceModelParams p;
  auto n = build_dcvs_mrf( lib( "NAND2" ) );
  auto r = simulate( n, p, { Stimulus::constant( "x0", 1.0 ), Stimulus::constant( "x1", 0.0 ) }, fine( 200e-12 ) );
  for ( const auto& [name, w] : r.nodes )
  {
    auto [lo, hi] = std::minmax_element( w.samples.begin(), w.samples.end() );
    CAPTURE( name );
    CHECK( *hi - *lo < 1e-6 );
  }
  CHECK( r.at( "out" )[0] > 0.99 );
}

TEST_CASE( "waveforms stay near the rails and are reproducible" )
{
  DeviceModelParams p;
  auto n = build_cent_mrf( lib( "XOR2" ) );
  std::vector<Stimulus> st = { Stimulus::square( "x0", 0.0, 1.0, 1e-9, 0.0, 20e-12 ),
                               Stimulus::square( "x1", 0.0, 1.0, 2e-9, 0.0, 20e-12 ) };
  auto a = simulate( n, p, st, fine( 4e-9 ) );
  auto b = simulate( n, p, st, fine( 4e-9 ) );
  for ( const auto& [name, w] : a.nodes )
  {
    for ( double v : w.samples )
    {
      REQUIRE( v > -0.2 );
      REQUIRE( v < 1.2 );
    }
    CHECK( w.samples == b.at( name ).samples );
  }
  CHECK( a.i_vdd.samples == b.i_vdd.samples );
}

TEST_CASE( "probes restrict recorded nodes" )
{
  DeviceModelParams p;
  auto n = build_cent_mrf( lib( "NAND2" ) );
  auto r = simulate( n, p, { Stimulus::constant( "x0", 1.0 ), Stimulus::constant( "x1", 1.0 ) }, fine( 20e-12 ),
                     { "out" } );
  CHECK( r.nodes.size() == 1 );
  CHECK_NOTHROW( r.at( "out" ) );
  CHECK_THROWS( r.at( "f" ) );
  CHECK( r.i_vdd.size() == r.at( "out" ).size() );
}

TEST_CASE( "contract violations" )
{
  DeviceModelParams p;
  auto n = build_conventional( lib( "NAND2" ) );
  CHECK_THROWS_AS( simulate( n, p, { Stimulus::constant( "x0", 1.0 ) }, fine( 1e-11 ) ), ContractError );
  CHECK_THROWS_AS( simulate( n, p, { Stimulus::constant( "x0", 1.0 ), Stimulus::constant( "nope", 1.0 ) },
                             fine( 1e-11 ) ),
                   ContractError );
  SimConfig bad = fine( 1e-11 );
  bad.t_step = 0;
  CHECK_THROWS_AS( bad.check(), ContractError );
  CHECK_THROWS_AS( Stimulus::square( "x0", 0.0, 3.0, 1e-9 ).check( 1.0 ), ContractError );
}

TEST_CASE( "sample stimulus uses nearest-sample lookup" )
{
  Waveform w{ "x", 0.0, 1e-10, { 0.0, 1.0, 0.25 } };
  auto s = Stimulus::samples( "x0", w );
  CHECK( s.value_at( -1.0 ) == 0.0 );
  CHECK( s.value_at( 0.96e-10 ) == 1.0 );
  CHECK( s.value_at( 2e-10 ) == 0.25 );
  CHECK( s.value_at( 1.0 ) == 0.25 );
}
