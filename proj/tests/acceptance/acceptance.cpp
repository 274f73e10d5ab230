// acceptance checks, one PASS/FAIL line per criterion
//
//   noisegate_acceptance                      everything, sweeps included
//   noisegate_acceptance --sweep DIR --workers N
//                                             run the full grid once, write DIR/sweep.csv
//   noisegate_acceptance --criterion N [--dir DIR] [--dir2 DIR]
//                                             3, 4 and 5 read DIR/sweep.csv; 8 compares DIR and DIR2
//
// exit status is 0 only when every requested criterion passes.

#include "noisegate/builders.hpp"
#include "noisegate/energy.hpp"
#include "noisegate/experiment.hpp"
#include "noisegate/metrics.hpp"
#include "noisegate/noise.hpp"
#include "noisegate/transient.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ng = noisegate;
using ng::SchemeKind;

namespace
{

using clk = std::chrono::steady_clock;

double seconds_since( clk::time_point t0 )
{
  return std::chrono::duration<double>( clk::now() - t0 ).count();
}

bool report( int n, bool ok, const std::string& what )
{
  fmt::print( "{} criterion {}: {}\n", ok ? "PASS" : "FAIL", n, what );
  std::fflush( stdout );
  return ok;
}

void note( const std::string& s ) { fmt::print( "      {}\n", s ); }

std::string slurp( const std::filesystem::path& p )
{
  std::ifstream f( p, std::ios::binary );
  if ( !f )
    throw std::runtime_error( "cannot read " + p.string() );
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

ng::TruthTable lib( const std::string& g ) { return *ng::TruthTable::from_library( g ); }

// the criterion-3 grid, every other setting at its default
ng::ExperimentConfig grid()
{
  ng::ExperimentConfig c;
  c.gates = { "INV", "NAND2", "XOR2" };
  c.snr_db_grid = { 1.0, 2.0, 3.5, 5.0, 7.0, 10.0 };
  c.seeds = ng::ExperimentConfig::default_seeds();
  c.bit_count = 1000;
  return c;
}

// ---- sweep-based criteria ------------------------------------------------

struct Curves
{
  std::map<std::tuple<std::string, SchemeKind, double>, std::pair<double, int>> kld;
  std::map<std::tuple<std::string, SchemeKind>, double> ber_1db_seed1;
  int errors = 0;
  std::size_t rows = 0;
};

Curves load_curves( const std::filesystem::path& csv )
{
  Curves c;
  for ( const auto& r : ng::parse_kld_csv( slurp( csv ) ) )
  {
    ++c.rows;
    if ( !r.error.empty() )
    {
      ++c.errors;
      continue;
    }
    auto& acc = c.kld[{ r.gate, r.scheme, r.snr_db }];
    acc.first += r.kld_bits;
    acc.second += 1;
    if ( r.snr_db == 1.0 && r.seed == 1 )
      c.ber_1db_seed1[{ r.gate, r.scheme }] = r.bit_error_rate;
  }
  return c;
}

double mean_kld( const Curves& c, const std::string& g, SchemeKind s, double snr )
{
  auto it = c.kld.find( { g, s, snr } );
  if ( it == c.kld.end() || it->second.second == 0 )
    return NAN;
  return it->second.first / it->second.second;
}

bool check_rows( const Curves& c )
{
  const auto g = grid();
  const std::size_t want = g.gates.size() * 3 * g.snr_db_grid.size() * g.seeds.size();
  if ( c.rows != want || c.errors != 0 )
  {
    note( fmt::format( "sweep has {} rows ({} expected), {} failed", c.rows, want, c.errors ) );
    return false;
  }
  return true;
}

bool criterion3( const std::filesystem::path& dir )
{
  auto c = load_curves( dir / "sweep.csv" );
  bool ok = check_rows( c );
  int bad = 0, total = 0;
  for ( const auto& gate : grid().gates )
    for ( double snr : grid().snr_db_grid )
    {
      double co = mean_kld( c, gate, SchemeKind::Conventional, snr );
      double ce = mean_kld( c, gate, SchemeKind::CentMrf, snr );
      double dc = mean_kld( c, gate, SchemeKind::DcvsMrf, snr );
      ++total;
      if ( !( dc < ce && ce < co ) )
      {
        ++bad;
        note( fmt::format( "{} @ {} dB: Conventional {:.3g}  CentMrf {:.3g}  DcvsMrf {:.3g}", gate, snr, co, ce, dc ) );
      }
    }
  ok = ok && bad == 0;
  return report( 3, ok, fmt::format( "KLD ordering DcvsMrf < CentMrf < Conventional at {}/{} grid points", total - bad,
                                     total ) );
}

bool criterion4( const std::filesystem::path& dir )
{
  auto c = load_curves( dir / "sweep.csv" );
  bool ok = check_rows( c );
  double sum = 0;
  int n = 0;
  for ( const auto& gate : grid().gates )
    for ( double snr : grid().snr_db_grid )
    {
      double ce = mean_kld( c, gate, SchemeKind::CentMrf, snr );
      double dc = mean_kld( c, gate, SchemeKind::DcvsMrf, snr );
      if ( !( ce > 0.0 ) )
        continue;
      sum += 1.0 - dc / ce;
      ++n;
    }
  const double red = n ? sum / n : 0.0;
  ok = ok && n > 0 && red >= 0.5;
  return report( 4, ok, fmt::format( "mean KLD reduction DcvsMrf vs CentMrf {:.1f}% over {} points (need >= 50%)",
                                     100 * red, n ) );
}

bool criterion5( const std::filesystem::path& dir )
{
  auto c = load_curves( dir / "sweep.csv" );
  bool ok = check_rows( c );
  std::string detail;
  for ( const auto& gate : grid().gates )
  {
    auto d = c.ber_1db_seed1.find( { gate, SchemeKind::DcvsMrf } );
    auto v = c.ber_1db_seed1.find( { gate, SchemeKind::Conventional } );
    if ( d == c.ber_1db_seed1.end() || v == c.ber_1db_seed1.end() )
    {
      ok = false;
      continue;
    }
    const bool g_ok = d->second < 0.05 && v->second > 0.10;
    ok = ok && g_ok;
    detail += fmt::format( "{}{} dcvs {:.3f} conv {:.3f}{}", detail.empty() ? "" : ", ", gate, d->second, v->second,
                           g_ok ? "" : " (x)" );
  }
  return report( 5, ok, "BER at 1 dB, seed 1 (dcvs < 0.05, conv > 0.10): " + detail );
}

bool criterion8( const std::filesystem::path& a, const std::filesystem::path& b )
{
  const auto x = slurp( a / "sweep.csv" ), y = slurp( b / "sweep.csv" );
  const bool ok = !x.empty() && x == y;
  return report( 8, ok, fmt::format( "sweep.csv byte-identical across worker counts ({} vs {} bytes)", x.size(),
                                     y.size() ) );
}

void run_sweep_to( const std::filesystem::path& dir, unsigned workers )
{
  auto cfg = grid();
  cfg.output_dir = dir.string();
  auto t0 = clk::now();
  auto r = ng::run_sweep( cfg, workers );
  std::filesystem::create_directories( dir );
  std::ofstream( dir / "sweep.csv", std::ios::binary ) << ng::sweep_csv( r );
  fmt::print( "sweep: {} rows, {} workers, {:.1f} s, {} errors\n", r.rows.size(), workers, seconds_since( t0 ),
              r.errors );
}

// ---- standalone criteria -------------------------------------------------

bool criterion1()
{
  auto t0 = clk::now();
  auto rows = ng::run_count( ng::ExperimentConfig{}, false );
  const double dt = seconds_since( t0 );
  std::map<std::pair<std::string, SchemeKind>, std::size_t> want = {
    { { "INV", SchemeKind::CentMrf }, 12 },  { { "NAND2", SchemeKind::CentMrf }, 14 },
    { { "XOR2", SchemeKind::CentMrf }, 22 }, { { "INV", SchemeKind::DcvsMrf }, 16 },
    { { "NAND2", SchemeKind::DcvsMrf }, 18 }, { { "XOR2", SchemeKind::DcvsMrf }, 26 } };
  int matched = 0;
  for ( const auto& r : rows )
  {
    auto it = want.find( { r.gate, r.scheme } );
    if ( it == want.end() )
      continue;
    if ( it->second == r.transistors )
      ++matched;
    else
      note( fmt::format( "{} {}: {} transistors, {} expected", r.gate, ng::to_string( r.scheme ), r.transistors,
                         it->second ) );
  }
  return report( 1, matched == 6 && dt < 1.0,
                 fmt::format( "transistor counts {}/6 cells match, {:.3f} s", matched, dt ) );
}

bool criterion2()
{
  auto t0 = clk::now();
  int assignments = 0, bad = 0;
  for ( const auto& g : ng::library_gate_names() )
  {
    auto tt = lib( g );
    if ( !ng::check_equivalence( tt ) )
    {
      ++bad;
      note( g + ": energy forms disagree" );
    }
    const auto forms = { ng::EnergyFunction::sum_of_minterms( tt ), ng::EnergyFunction::factored( tt ),
                         ng::EnergyFunction::general_form( tt ) };
    const unsigned vars = tt.arity() + 1;
    for ( std::uint32_t b = 0; b < ( 1u << vars ); ++b )
    {
      ng::State s{ b, vars };
      const int want = tt( s.input_row() ) == s.output() ? -1 : 0;
      for ( const auto& f : forms )
      {
        ++assignments;
        if ( f.evaluate( s ) != want )
          ++bad;
      }
    }
  }
  const double dt = seconds_since( t0 );
  return report( 2, bad == 0 && dt < 1.0,
                 fmt::format( "energy forms agree on {} evaluations, {} mismatches, {:.3f} s", assignments, bad, dt ) );
}

bool criterion6()
{
  auto rows = ng::run_count( grid(), true );
  std::map<std::string, std::map<SchemeKind, double>> p;
  for ( const auto& r : rows )
    p[r.gate][r.scheme] = r.avg_power_w;
  bool ok = true;
  std::string detail;
  for ( const auto& g : grid().gates )
  {
    const double ce = p[g][SchemeKind::CentMrf], dc = p[g][SchemeKind::DcvsMrf];
    const double ratio = dc / ce;
    ok = ok && std::abs( ratio - 1.0 ) <= 0.2;
    detail += fmt::format( "{}{} {:.3f}/{:.3f} uW = {:.2f}x", detail.empty() ? "" : ", ", g, dc * 1e6, ce * 1e6, ratio );
  }
  return report( 6, ok, "DcvsMrf/CentMrf power within 20%: " + detail );
}

bool awgn_roundtrip( std::string& detail )
{
  ng::Waveform w{ "x", 0.0, 80e-12, {} };
  auto bits = ng::input_bits( 1, 1, 20000 )[0];
  for ( bool b : bits )
    for ( int i = 0; i < 12; ++i )
      w.samples.push_back( b ? 1.0 : 0.0 );
  double worst = 0;
  for ( double snr : { 1.0, 2.0, 3.5, 5.0, 7.0, 10.0 } )
    for ( std::uint64_t seed = 1; seed <= 5; ++seed )
    {
      auto n = ng::add_awgn( w, { snr, ng::noise_seed( seed, 0 ) } );
      worst = std::max( worst, std::abs( ng::measured_snr_db( w, n ) - snr ) );
    }
  detail += fmt::format( "awgn worst {:.3f} dB", worst );
  return worst <= 0.3;
}

bool kld_properties( std::string& detail )
{
  ng::SplitMix64 r( 2024 );
  int bad = 0;
  for ( int i = 0; i < 1000; ++i )
  {
    const double a = std::clamp( r.uniform(), 1e-9, 1 - 1e-9 ), b = std::clamp( r.uniform(), 1e-9, 1 - 1e-9 );
    ng::LogicDistribution d{ a, 1 - a }, e{ b, 1 - b };
    if ( ng::kld( d, d ) != 0.0 || ng::kld( d, e ) < 0.0 || ng::kld( e, d ) < 0.0 )
      ++bad;
  }
  detail += fmt::format( ", kld {} violations in 1000", bad );
  return bad == 0;
}

bool step_refinement( std::string& detail )
{
  ng::DeviceModelParams p;
  double worst = 0;
  for ( auto s : ng::all_schemes )
  {
    auto n = ng::build( s, lib( "NAND2" ) );
    std::vector<ng::Stimulus> st = { ng::Stimulus::square( "x0", 0.0, 1.0, 1e-9, 0.1e-9, 50e-12 ),
                                     ng::Stimulus::square( "x1", 0.0, 1.0, 2e-9, 0.3e-9, 50e-12 ) };
    ng::SimConfig a{ 1e-12, 4e-9, ng::IntegrationMethod::Trapezoidal, 1e-6, 50 };
    ng::SimConfig b = a;
    b.t_step = 0.5e-12;
    auto ra = ng::simulate( n, p, st, a, { "out" } );
    auto rb = ng::simulate( n, p, st, b, { "out" } );
    const auto &wa = ra.at( "out" ), &wb = rb.at( "out" );
    for ( std::size_t i = 0; i < wa.size() && 2 * i < wb.size(); ++i )
      worst = std::max( worst, std::abs( wa[i] - wb[2 * i] ) );
  }
  detail += fmt::format( ", halved-step drift {:.3f} mV", worst * 1e3 );
  return worst < 1e-3;
}

bool noiseless_truth_tables( std::string& detail )
{
  ng::DeviceModelParams p;
  const double hold = 10e-9;
  int pairs = 0, bad = 0, bad_pairs = 0;
  for ( const auto& g : ng::library_gate_names() )
  {
    auto tt = lib( g );
    for ( auto s : ng::all_schemes )
    {
      ++pairs;
      auto n = ng::build( s, tt );
      // visit every row in Gray-code order so each transition flips one input,
      // then the reverse order, so each corner is reached from two directions
      std::vector<std::uint32_t> seq;
      for ( std::uint32_t i = 0; i < tt.rows(); ++i )
        seq.push_back( i ^ ( i >> 1 ) );
      for ( std::size_t i = tt.rows(); i-- > 0; )
        seq.push_back( seq[i] );
      std::vector<ng::Stimulus> st;
      for ( unsigned k = 0; k < tt.arity(); ++k )
      {
        std::vector<std::pair<double, double>> pts;
        for ( std::size_t j = 0; j < seq.size(); ++j )
        {
          const double v = ( ( seq[j] >> ( tt.arity() - 1 - k ) ) & 1u ) ? 1.0 : 0.0;
          pts.emplace_back( j * hold, v );
          pts.emplace_back( ( j + 1 ) * hold - 20e-12, v );
        }
        st.push_back( ng::Stimulus::piecewise_linear( "x" + std::to_string( k ), pts ) );
      }
      ng::SimConfig c{ 10e-12, seq.size() * hold, ng::IntegrationMethod::BackwardEuler, 1e-6, 50 };
      auto r = ng::simulate( n, p, st, c, { "out" } );
      const auto& out = r.at( "out" );
      const int before = bad;
      for ( std::size_t j = 0; j < seq.size(); ++j )
      {
        const std::size_t i = std::size_t( ( ( j + 0.9 ) * hold ) / c.t_step );
        const double want = tt( seq[j] ) ? 1.0 : 0.0;
        if ( std::abs( out[i] - want ) > 0.1 )
        {
          ++bad;
          note( fmt::format( "{} {} row {}: out {:.3f}", g, ng::to_string( s ), seq[j], out[i] ) );
        }
      }
      bad_pairs += bad > before;
    }
  }
  detail += fmt::format( ", truth tables {}/{} pairs clean", pairs - bad_pairs, pairs );
  return bad == 0;
}

bool criterion7()
{
  std::string d;
  bool ok = awgn_roundtrip( d );
  ok = kld_properties( d ) && ok;
  ok = step_refinement( d ) && ok;
  ok = noiseless_truth_tables( d ) && ok;
  return report( 7, ok, "numerical soundness: " + d );
}

int usage()
{
  fmt::print( stderr, "usage: noisegate_acceptance [--criterion N] [--dir DIR] [--dir2 DIR] "
                      "[--sweep DIR --workers N]\n" );
  return 2;
}

} // namespace

int main( int argc, char** argv )
{
  int criterion = 0;
  std::string dir, dir2, sweep_dir;
  unsigned workers = 0;
  for ( int i = 1; i < argc; ++i )
  {
    auto arg = [&]() -> std::string {
      if ( i + 1 >= argc )
        throw std::runtime_error( std::string( "missing value for " ) + argv[i] );
      return argv[++i];
    };
    if ( !std::strcmp( argv[i], "--criterion" ) )
      criterion = std::stoi( arg() );
    else if ( !std::strcmp( argv[i], "--dir" ) )
      dir = arg();
    else if ( !std::strcmp( argv[i], "--dir2" ) )
      dir2 = arg();
    else if ( !std::strcmp( argv[i], "--sweep" ) )
      sweep_dir = arg();
    else if ( !std::strcmp( argv[i], "--workers" ) )
      workers = unsigned( std::stoul( arg() ) );
    else
      return usage();
  }

  try
  {
    if ( !sweep_dir.empty() )
    {
      run_sweep_to( sweep_dir, workers ? workers : ng::default_workers() );
      return 0;
    }
    switch ( criterion )
    {
    case 1: return criterion1() ? 0 : 1;
    case 2: return criterion2() ? 0 : 1;
    case 3: return criterion3( dir ) ? 0 : 1;
    case 4: return criterion4( dir ) ? 0 : 1;
    case 5: return criterion5( dir ) ? 0 : 1;
    case 6: return criterion6() ? 0 : 1;
    case 7: return criterion7() ? 0 : 1;
    case 8: return criterion8( dir, dir2 ) ? 0 : 1;
    case 0: break;
    default: return usage();
    }

    // everything in one process
    const auto tmp = std::filesystem::temp_directory_path() / "noisegate_acceptance";
    const auto a = tmp / "w1", b = tmp / "wn";
    run_sweep_to( a, 1 );
    run_sweep_to( b, std::max( 2u, ng::default_workers() ) );
    bool ok = criterion1();
    ok = criterion2() && ok;
    ok = criterion3( a ) && ok;
    ok = criterion4( a ) && ok;
    ok = criterion5( a ) && ok;
    ok = criterion6() && ok;
    ok = criterion7() && ok;
    ok = criterion8( a, b ) && ok;
    return ok ? 0 : 1;
  }
  catch ( const std::exception& e )
  {
    fmt::print( stderr, "error: {}\n", e.what() );
    return 1;
  }
}
