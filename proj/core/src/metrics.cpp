#include "noisegate/metrics.hpp"

#include "noisegate/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <sstream>

namespace noisegate
{

LogicDistribution LogicDistribution::from_counts( std::size_t zeros, std::size_t ones )
{
  const auto total = static_cast<double>( zeros + ones + 2 );
  LogicDistribution d;
  d.count0 = zeros;
  d.count1 = ones;
  d.p0 = static_cast<double>( zeros + 1 ) / total;
  d.p1 = static_cast<double>( ones + 1 ) / total;
  return d;
}

LogicDistribution logic_distribution( const Waveform& w, double threshold, const Sampling& sampling, double vdd )
{
  if ( !( threshold > 0.0 && threshold < vdd ) )
  {
    throw ContractError( "logic threshold must lie in (0, vdd)" );
  }
  if ( w.empty() )
  {
    throw ContractError( "logic_distribution over an empty waveform" );
  }
  std::size_t ones = 0;
  std::size_t total = 0;
  if ( sampling.mode == Sampling::Mode::EverySample )
  {
    for ( double v : w.samples )
    {
      ones += v > threshold ? 1u : 0u;
    }
    total = w.size();
  }
  else
  {
    if ( !( sampling.period >= 2.0 * w.dt ) )
    {
      throw ContractError( "bit period must span at least two samples" );
    }
    for ( std::size_t bit = 0;; ++bit )
    {
      const double t = ( static_cast<double>( bit ) + sampling.offset ) * sampling.period;
      const auto i = static_cast<std::size_t>( std::llround( t / w.dt ) );
      if ( i >= w.size() )
      {
        break;
      }
      ones += w[i] > threshold ? 1u : 0u;
      ++total;
    }
  }
  if ( total == 0 )
  {
    throw ContractError( "logic_distribution selected no samples" );
  }
  return LogicDistribution::from_counts( total - ones, ones );
}

double kld( const LogicDistribution& ideal, const LogicDistribution& real )
{
  if ( !( ideal.p0 > 0.0 && ideal.p1 > 0.0 && real.p0 > 0.0 && real.p1 > 0.0 ) )
  {
    throw ContractError( "kld needs strictly positive probabilities" );
  }
  return ideal.p0 * std::log2( ideal.p0 / real.p0 ) + ideal.p1 * std::log2( ideal.p1 / real.p1 );
}

double bit_error_rate( const Waveform& w, const std::vector<bool>& expected, double period, double threshold,
                       double settle, double t_start )
{
  if ( expected.empty() || !( period > 0.0 ) )
  {
    throw ContractError( "bit_error_rate needs a positive period and at least one bit" );
  }
  std::size_t errors = 0;
  for ( std::size_t bit = 0; bit < expected.size(); ++bit )
  {
    const double t = t_start + ( static_cast<double>( bit ) + settle ) * period;
    const double pos = std::round( ( t - w.t0 ) / w.dt );
    if ( pos < 0.0 || pos >= static_cast<double>( w.size() ) )
    {
      throw ContractError( fmt::format( "waveform '{}' ends before bit {} is sampled", w.name, bit ) );
    }
    const bool seen = w[static_cast<std::size_t>( pos )] > threshold;
    errors += seen != expected[bit] ? 1u : 0u;
  }
  return static_cast<double>( errors ) / static_cast<double>( expected.size() );
}

double average_power( const Waveform& i_vdd, double vdd )
{
  if ( i_vdd.empty() )
  {
    return 0.0;
  }
  const std::size_t skip = i_vdd.size() / 10;
  double sum = 0.0;
  for ( std::size_t i = skip; i < i_vdd.size(); ++i )
  {
    sum += std::abs( i_vdd[i] );
  }
  return vdd * sum / static_cast<double>( i_vdd.size() - skip );
}

std::string kld_report_csv_header() { return "gate,scheme,snr_db,seed,kld_bits,ber,avg_power_w,error"; }

namespace
{

std::string number( double v )
{
  if ( std::isinf( v ) )
  {
    return v > 0 ? "inf" : "-inf";
  }
  return fmt::format( "{:.12g}", v );
}

double parse_double( const std::string& s )
{
  if ( s == "inf" )
  {
    return std::numeric_limits<double>::infinity();
  }
  if ( s == "-inf" )
  {
    return -std::numeric_limits<double>::infinity();
  }
  return std::stod( s );
}

} // namespace

std::string to_csv_row( const KldReport& r )
{
  std::string err = r.error;
  for ( auto& c : err )
  {
    if ( c == ',' || c == '\n' || c == '\r' )
    {
      c = ';';
    }
  }
  return fmt::format( "{},{},{},{},{},{},{},{}", r.gate, to_string( r.scheme ), number( r.snr_db ), r.seed,
                      number( r.kld_bits ), number( r.bit_error_rate ), number( r.avg_power_w ), err );
}

std::vector<KldReport> parse_kld_csv( const std::string& text )
{
  std::istringstream in( text );
  std::string line;
  if ( !std::getline( in, line ) || line != kld_report_csv_header() )
  {
    throw ContractError( "KLD CSV header mismatch" );
  }
  std::vector<KldReport> rows;
  while ( std::getline( in, line ) )
  {
    if ( line.empty() )
    {
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row( line );
    for ( std::string cell; std::getline( row, cell, ',' ); )
    {
      cells.push_back( cell );
    }
    if ( !line.empty() && line.back() == ',' )
    {
      cells.emplace_back();
    }
    if ( cells.size() != 8 )
    {
      throw ContractError( "KLD CSV row needs 8 cells: " + line );
    }
    KldReport r;
    r.gate = cells[0];
    r.scheme = parse_scheme( cells[1] );
    r.snr_db = parse_double( cells[2] );
    r.seed = std::stoull( cells[3] );
    r.kld_bits = parse_double( cells[4] );
    r.bit_error_rate = parse_double( cells[5] );
    r.avg_power_w = parse_double( cells[6] );
    r.error = cells[7];
    rows.push_back( std::move( r ) );
  }
  return rows;
}

} // namespace noisegate
