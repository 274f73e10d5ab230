#include "noisegate/waveform.hpp"

#include "noisegate/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace noisegate
{

void Waveform::check() const
{
  if ( !( dt > 0.0 ) )
  {
    throw ContractError( "waveform '" + name + "' needs dt > 0" );
  }
  if ( samples.empty() )
  {
    throw ContractError( "waveform '" + name + "' is empty" );
  }
  for ( double v : samples )
  {
    if ( !std::isfinite( v ) )
    {
      throw ContractError( "waveform '" + name + "' contains a non-finite sample" );
    }
  }
}

void write_csv( std::ostream& out, const std::vector<const Waveform*>& columns )
{
  if ( columns.empty() )
  {
    throw ContractError( "write_csv needs at least one column" );
  }
  const auto& ref = *columns.front();
  for ( const auto* w : columns )
  {
    if ( w->size() != ref.size() || w->dt != ref.dt || w->t0 != ref.t0 )
    {
      throw ContractError( "write_csv columns must share their time base; '" + w->name + "' differs" );
    }
  }
  std::string line = "time";
  for ( const auto* w : columns )
  {
    line += ',';
    line += w->name;
  }
  out << line << '\n';
  fmt::memory_buffer buf;
  for ( std::size_t i = 0; i < ref.size(); ++i )
  {
    buf.clear();
    fmt::format_to( std::back_inserter( buf ), "{:.17g}", ref.time_at( i ) );
    for ( const auto* w : columns )
    {
      fmt::format_to( std::back_inserter( buf ), ",{:.17g}", w->samples[i] );
    }
    buf.push_back( '\n' );
    out.write( buf.data(), static_cast<std::streamsize>( buf.size() ) );
  }
}

std::vector<Waveform> read_csv( std::istream& in )
{
  std::string line;
  if ( !std::getline( in, line ) )
  {
    throw ContractError( "waveform CSV is empty" );
  }
  std::vector<Waveform> cols;
  {
    std::istringstream header( line );
    std::string name;
    std::getline( header, name, ',' );
    if ( name != "time" )
    {
      throw ContractError( "waveform CSV must start with a time column" );
    }
    while ( std::getline( header, name, ',' ) )
    {
      cols.push_back( Waveform{ name, 0.0, 0.0, {} } );
    }
  }
  std::vector<double> times;
  while ( std::getline( in, line ) )
  {
    if ( line.empty() )
    {
      continue;
    }
    std::istringstream row( line );
    std::string cell;
    std::getline( row, cell, ',' );
    times.push_back( std::stod( cell ) );
    for ( auto& c : cols )
    {
      if ( !std::getline( row, cell, ',' ) )
      {
        throw ContractError( "waveform CSV row has too few cells" );
      }
      c.samples.push_back( std::stod( cell ) );
    }
  }
  if ( times.empty() )
  {
    throw ContractError( "waveform CSV has no rows" );
  }
  const double t0 = times.front();
  const double dt = times.size() > 1 ? ( times.back() - t0 ) / static_cast<double>( times.size() - 1 ) : 1.0;
  for ( auto& c : cols )
  {
    c.t0 = t0;
    c.dt = dt;
  }
  return cols;
}

} // namespace noisegate
