#include "noisegate/error.hpp"
#include "noisegate/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace noisegate;

namespace
{
Waveform filled( std::size_t n, double v, double dt = 1e-12 )
{
  return { "w", 0.0, dt, std::vector<double>( n, v ) };
}
} // namespace

TEST_CASE( "logic distribution with add-one smoothing" )
{
  auto d = logic_distribution( filled( 998, 1.0 ), 0.5 );
  CHECK( d.count1 == 998 );
  CHECK( d.count0 == 0 );
  CHECK( d.p1 == doctest::Approx( 999.0 / 1000.0 ) );
  CHECK( d.p0 == doctest::Approx( 1.0 / 1000.0 ) );

  Waveform sq{ "sq", 0.0, 1e-12, {} };
  for ( int i = 0; i < 1000; ++i )
    sq.samples.push_back( ( i / 10 ) % 2 ? 1.0 : 0.0 );
  CHECK( logic_distribution( sq, 0.5 ).p1 == doctest::Approx( 0.5 ) );

  // NAND2 output over the four input corners, 100 samples each
  Waveform nand{ "n", 0.0, 1e-12, {} };
  for ( int r = 0; r < 4; ++r )
    for ( int i = 0; i < 100; ++i )
      nand.samples.push_back( r == 3 ? 0.0 : 1.0 );
  CHECK( logic_distribution( nand, 0.5 ).p1 == doctest::Approx( 301.0 / 402.0 ) );
}

TEST_CASE( "bit-midpoint sampling" )
{
  // 4 bits of 10 samples: 1 0 1 1, with a glitch at the start of each bit
  Waveform w{ "w", 0.0, 0.1e-9, {} };
  const int bits[4] = { 1, 0, 1, 1 };
  for ( int b : bits )
    for ( int i = 0; i < 10; ++i )
      w.samples.push_back( i == 0 ? 1.0 - b : double( b ) );
  auto d = logic_distribution( w, 0.5, Sampling::bit_midpoints( 1e-9 ) );
  CHECK( d.count1 == 3 );
  CHECK( d.count0 == 1 );
  CHECK_THROWS_AS( logic_distribution( w, 0.5, Sampling::bit_midpoints( 0.1e-9 ) ), ContractError );
}

TEST_CASE( "logic distribution contract" )
{
  CHECK_THROWS_AS( logic_distribution( filled( 10, 1.0 ), 0.0 ), ContractError );
  CHECK_THROWS_AS( logic_distribution( filled( 10, 1.0 ), 1.0 ), ContractError );
  CHECK_THROWS_AS( logic_distribution( Waveform{}, 0.5 ), ContractError );
}

TEST_CASE( "KLD oracles" )
{
  LogicDistribution ideal{ 0.5, 0.5 };
  LogicDistribution real{ 0.75, 0.25 };
  // 0.5 log2(2/3) + 0.5 log2(2)
  CHECK( kld( ideal, real ) == doctest::Approx( 0.2075187496 ) );
  CHECK( kld( ideal, ideal ) == 0.0 );
  LogicDistribution near{ 0.5 + 1e-6, 0.5 - 1e-6 };
  CHECK( kld( ideal, near ) < 1e-11 );
  CHECK_THROWS_AS( kld( ideal, LogicDistribution{ 1.0, 0.0 } ), ContractError );
}

TEST_CASE( "KLD is non-negative and zero only on identity" )
{
  std::mt19937_64 rng( 5 );
  std::uniform_real_distribution<double> u( 0.001, 0.999 );
  for ( int i = 0; i < 1000; ++i )
  {
    double a = u( rng ), b = u( rng );
    double k = kld( { a, 1 - a }, { b, 1 - b } );
    CHECK( k >= 0.0 );
    if ( std::abs( a - b ) > 1e-3 )
      CHECK( k > 0.0 );
  }
}

TEST_CASE( "bit error rate" )
{
  // inverter output sampled at 0.75 of each 1 ns bit, 10 ps samples
  std::vector<bool> expected = { true, false, false, true, true };
  Waveform w{ "out", 0.0, 10e-12, {} };
  for ( bool b : expected )
    for ( int i = 0; i < 100; ++i )
      w.samples.push_back( b ? 1.0 : 0.0 );
  CHECK( bit_error_rate( w, expected, 1e-9, 0.5 ) == 0.0 );
  std::vector<bool> wrong;
  for ( bool b : expected )
    wrong.push_back( !b );
  CHECK( bit_error_rate( w, wrong, 1e-9, 0.5 ) == 1.0 );
  auto one_off = expected;
  one_off[2] = true;
  CHECK( bit_error_rate( w, one_off, 1e-9, 0.5 ) == doctest::Approx( 0.2 ) );
}

TEST_CASE( "average power" )
{
  CHECK( average_power( filled( 100, 0.0 ), 1.0 ) == 0.0 );
  CHECK( average_power( filled( 100, 0.5e-6 ), 1.0 ) == doctest::Approx( 0.5e-6 ) );
  CHECK( average_power( filled( 100, -0.5e-6 ), 1.2 ) == doctest::Approx( 0.6e-6 ) );
  // first 10% ignored
  auto w = filled( 100, 1e-6 );
  for ( int i = 0; i < 10; ++i )
    w.samples[i] = 1.0;
  CHECK( average_power( w, 1.0 ) == doctest::Approx( 1e-6 ) );
}

TEST_CASE( "report CSV round trip" )
{
  KldReport a{ "NAND2", SchemeKind::DcvsMrf, 3.5, 7, 0.0123456789012345, 0.031, 2.5e-6, "" };
  KldReport b{ "XOR2", SchemeKind::Conventional, std::numeric_limits<double>::infinity(), 1, 0.0, 0.0, 1e-7, "" };
  KldReport c{ "INV", SchemeKind::CentMrf, 1.0, 2, 0.0, 0.0, 0.0, "newton failed at t=1e-9" };
  std::string text = kld_report_csv_header() + "\n" + to_csv_row( a ) + "\n" + to_csv_row( b ) + "\n" +
                     to_csv_row( c ) + "\n";
  auto rows = parse_kld_csv( text );
  REQUIRE( rows.size() == 3 );
  CHECK( rows[0].gate == "NAND2" );
  CHECK( rows[0].scheme == SchemeKind::DcvsMrf );
  CHECK( rows[0].kld_bits == doctest::Approx( a.kld_bits ).epsilon( 1e-11 ) );
  CHECK( std::isinf( rows[1].snr_db ) );
  CHECK( rows[2].error == c.error );
  CHECK( to_csv_row( rows[0] ) == to_csv_row( a ) );
}

TEST_CASE( "waveform CSV round trip" )
{
  Waveform a{ "a", 1e-9, 1e-12, { 0.0, 0.1, 0.2 } };
  Waveform b{ "b", 1e-9, 1e-12, { 1.0, 0.123456789012345678, -0.5 } };
  std::stringstream s;
  write_csv( s, { &a, &b } );
  auto back = read_csv( s );
  REQUIRE( back.size() == 2 );
  CHECK( back[1].name == "b" );
  CHECK( back[1].samples == b.samples );
  CHECK( back[0].dt == doctest::Approx( 1e-12 ) );
  CHECK( back[0].t0 == doctest::Approx( 1e-9 ) );
}
