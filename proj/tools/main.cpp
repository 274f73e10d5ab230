// noisegate: sweep / compare / count / energy-check
//
// exit codes: 0 ok, 1 runtime or convergence failure, 2 usage or config error

#include "noisegate/error.hpp"
#include "noisegate/experiment.hpp"
#include "noisegate/energy.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace ng = noisegate;

namespace
{

std::string slurp( const std::string& path )
{
  std::ifstream f( path, std::ios::binary );
  if ( !f )
  {
    throw ng::ConfigError( "cannot read config " + path );
  }
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

ng::ExperimentConfig load( const std::string& path, const std::string& out_dir )
{
  ng::ExperimentConfig cfg;
  if ( !path.empty() )
  {
    cfg = ng::parse_config( slurp( path ) );
  }
  if ( !out_dir.empty() )
  {
    cfg.output_dir = out_dir;
  }
  return cfg;
}

double parse_snr( const std::string& s )
{
  if ( s == "inf" || s == "+inf" )
  {
    return std::numeric_limits<double>::infinity();
  }
  std::size_t used = 0;
  double v = 0.0;
  try
  {
    v = std::stod( s, &used );
  }
  catch ( const std::exception& )
  {
    used = 0;
  }
  if ( used != s.size() || !std::isfinite( v ) )
  {
    throw ng::ConfigError( "--snr expects a number of dB or 'inf', got '" + s + "'" );
  }
  return v;
}

void write_text( const std::string& dir, const std::string& name, const std::string& body )
{
  std::filesystem::create_directories( dir );
  std::ofstream( std::filesystem::path( dir ) / name, std::ios::binary ) << body;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "noise-tolerant gate synthesis and noise-immunity experiments" };
  app.require_subcommand( 1 );

  std::string config_path, out_dir;
  unsigned workers = 0;
  bool quiet = false;
  auto* sweep = app.add_subcommand( "sweep", "KLD/BER sweep over gates, schemes, SNRs and seeds" );
  sweep->add_option( "--config", config_path, "JSON experiment config" )->required();
  sweep->add_option( "--output-dir", out_dir, "overrides output_dir" );
  sweep->add_option( "--workers", workers, "worker threads (default: NOISEGATE_WORKERS or all cores)" );
  sweep->add_flag( "-q,--quiet", quiet, "no per-point log lines" );

  std::string gate, snr_text = "3.5";
  std::uint64_t seed = 1;
  int bits = 0;
  auto* compare = app.add_subcommand( "compare", "waveforms of every scheme for one gate at one SNR" );
  compare->add_option( "--gate", gate, "library gate, e.g. NAND2" )->required();
  compare->add_option( "--snr", snr_text, "input SNR in dB, or inf" )->capture_default_str();
  compare->add_option( "--seed", seed, "bit-stream and noise seed" )->capture_default_str();
  compare->add_option( "--bits", bits, "bits to simulate (default: config bit_count)" );
  compare->add_option( "--config", config_path, "JSON experiment config" );
  compare->add_option( "--output-dir", out_dir, "overrides output_dir" );

  bool power = false;
  auto* count = app.add_subcommand( "count", "transistor counts per gate and scheme" );
  count->add_flag( "--power", power, "also simulate average power on a noiseless bit stream" );
  count->add_option( "--config", config_path, "JSON experiment config" );
  count->add_option( "--output-dir", out_dir, "overrides output_dir" );

  std::string energy_gate;
  bool all = false;
  auto* energy = app.add_subcommand( "energy-check", "energy-function equivalence over every assignment" );
  auto* g_opt = energy->add_option( "--gate", energy_gate, "library gate or truth-table bits" );
  auto* a_opt = energy->add_flag( "--all", all, "every library gate" );
  g_opt->excludes( a_opt );
  a_opt->excludes( g_opt );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::CallForHelp& e )
  {
    return app.exit( e );
  }
  catch ( const CLI::CallForAllHelp& e )
  {
    return app.exit( e );
  }
  catch ( const CLI::ParseError& e )
  {
    app.exit( e );
    return 2;
  }

  try
  {
    if ( *sweep )
    {
      auto cfg = load( config_path, out_dir );
      std::function<void( const ng::KldReport& )> log;
      if ( !quiet )
      {
        log = []( const ng::KldReport& r ) {
          std::cerr << fmt::format( "{} {} snr={} seed={} kld={:.4g} ber={:.4f}{}\n", r.gate, ng::to_string( r.scheme ),
                                    ng::snr_label( r.snr_db ), r.seed, r.kld_bits, r.bit_error_rate,
                                    r.error.empty() ? "" : " error: " + r.error );
        };
      }
      auto res = ng::run_sweep( cfg, workers, log );
      for ( const auto& p : ng::write_sweep_outputs( res, cfg ) )
      {
        std::cerr << "wrote " << p << "\n";
      }
      std::cout << ng::summary_text( res );
      return res.errors == 0 ? 0 : 1;
    }
    if ( *compare )
    {
      auto cfg = load( config_path, out_dir );
      if ( bits > 0 )
        cfg.bit_count = bits;
      const double snr = parse_snr( snr_text );
      auto res = ng::run_compare( gate, snr, seed, cfg );
      std::cout << fmt::format( "{} at {} dB, seed {}, {} bits\n", res.gate, ng::snr_label( snr ), seed, cfg.bit_count );
      for ( const auto& run : res.runs )
      {
        std::cout << fmt::format( "  {:<12} ber {:.4f}  kld {:.4g}  power {:.4f} uW\n", ng::to_string( run.report.scheme ),
                                  run.report.bit_error_rate, run.report.kld_bits, run.report.avg_power_w * 1e6 );
      }
      for ( const auto& p : ng::write_compare_outputs( res, cfg ) )
      {
        std::cerr << "wrote " << p << "\n";
      }
      return 0;
    }
    if ( *count )
    {
      auto cfg = load( config_path, out_dir );
      auto rows = ng::run_count( cfg, power );
      std::cout << ng::counts_table( rows );
      write_text( cfg.output_dir, "counts.csv", ng::counts_csv( rows ) );
      std::cerr << "wrote " << ( std::filesystem::path( cfg.output_dir ) / "counts.csv" ).string() << "\n";
      return 0;
    }
    if ( *energy )
    {
      std::vector<ng::TruthTable> tables;
      if ( all || energy_gate.empty() )
      {
        for ( const auto& n : ng::library_gate_names() )
          tables.push_back( *ng::TruthTable::from_library( n ) );
      }
      else
      {
        try
        {
          tables.push_back( ng::TruthTable::parse( energy_gate ) );
        }
        catch ( const ng::ContractError& e )
        {
          throw ng::ConfigError( e.what() );
        }
      }
      bool ok = true;
      for ( const auto& tt : tables )
      {
        auto c = ng::run_energy_check( tt );
        std::cout << c.report << "\n";
        ok = ok && c.equivalent;
      }
      return ok ? 0 : 1;
    }
  }
  catch ( const ng::ConfigError& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch ( const ng::UnsupportedGateError& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
