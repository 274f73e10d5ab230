#pragma once

#include "noisegate/waveform.hpp"

#include <cstdint>
#include <limits>

namespace noisegate
{

/// splitmix64 generator. Each call to next() advances the state by the
/// golden-ratio increment 0x9E3779B97F4A7C15 and returns the state mixed by
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   z =  z ^ (z >> 31)
/// This sequence is part of the reproducibility contract for bit streams and noise.
class SplitMix64
{
public:
  explicit SplitMix64( std::uint64_t seed ) noexcept : state_( seed ) {}

  std::uint64_t next() noexcept
  {
    std::uint64_t z = ( state_ += 0x9E3779B97F4A7C15ull );
    z = ( z ^ ( z >> 30 ) ) * 0xBF58476D1CE4E5B9ull;
    z = ( z ^ ( z >> 27 ) ) * 0x94D049BB133111EBull;
    return z ^ ( z >> 31 );
  }

  /// Uniform in (0, 1].
  double uniform() noexcept { return ( static_cast<double>( next() >> 11 ) + 1.0 ) * 0x1.0p-53; }

  bool bit() noexcept { return ( next() >> 63 ) != 0u; }

private:
  std::uint64_t state_;
};

/// Standard normal deviates by the Box-Muller transform over SplitMix64 uniforms.
class GaussianSource
{
public:
  explicit GaussianSource( std::uint64_t seed ) noexcept : rng_( seed ) {}
  double next();

private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct NoiseSpec
{
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

/// Mean square of `w` about `midpoint`.
double signal_power( const Waveform& w, double midpoint );

/// Adds white Gaussian noise of variance signal_power(w, midpoint) / 10^(snr_db/10).
/// An infinite SNR returns `w` unchanged. Deterministic in spec.seed.
Waveform add_awgn( const Waveform& w, const NoiseSpec& spec, double midpoint = 0.5 );

/// SNR realised by a noisy copy of `clean`, in dB.
double measured_snr_db( const Waveform& clean, const Waveform& noisy, double midpoint = 0.5 );

} // namespace noisegate
