#include "noisegate/noise.hpp"

#include "noisegate/error.hpp"

#include <cmath>
#include <numbers>

namespace noisegate
{

double GaussianSource::next()
{
  if ( has_spare_ )
  {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt( -2.0 * std::log( rng_.uniform() ) );
  const double angle = 2.0 * std::numbers::pi * rng_.uniform();
  spare_ = radius * std::sin( angle );
  has_spare_ = true;
  return radius * std::cos( angle );
}

double signal_power( const Waveform& w, double midpoint )
{
  if ( w.empty() )
  {
    throw ContractError( "signal power of an empty waveform" );
  }
  double sum = 0.0;
  for ( double v : w.samples )
  {
    sum += ( v - midpoint ) * ( v - midpoint );
  }
  return sum / static_cast<double>( w.size() );
}

Waveform add_awgn( const Waveform& w, const NoiseSpec& spec, double midpoint )
{
  if ( w.empty() )
  {
    throw ContractError( "add_awgn needs a non-empty waveform" );
  }
  if ( std::isnan( spec.snr_db ) )
  {
    throw ContractError( "add_awgn needs a numeric SNR" );
  }
  if ( std::isinf( spec.snr_db ) && spec.snr_db > 0.0 )
  {
    return w;
  }
  const double sigma = std::sqrt( signal_power( w, midpoint ) / std::pow( 10.0, spec.snr_db / 10.0 ) );
  GaussianSource gauss( spec.seed );
  Waveform out = w;
  for ( auto& v : out.samples )
  {
    v += sigma * gauss.next();
  }
  return out;
}

double measured_snr_db( const Waveform& clean, const Waveform& noisy, double midpoint )
{
  if ( clean.size() != noisy.size() || clean.empty() )
  {
    throw ContractError( "measured_snr_db needs equal-length non-empty waveforms" );
  }
  double noise = 0.0;
  for ( std::size_t i = 0; i < clean.size(); ++i )
  {
    const double e = noisy[i] - clean[i];
    noise += e * e;
  }
  noise /= static_cast<double>( clean.size() );
  return 10.0 * std::log10( signal_power( clean, midpoint ) / noise );
}

} // namespace noisegate
