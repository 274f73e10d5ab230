#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noisegate
{

/// Uniformly sampled time series of a node voltage or branch current.
struct Waveform
{
  std::string name;
  double t0 = 0.0;
  double dt = 1e-12;
  std::vector<double> samples;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  double time_at( std::size_t i ) const { return t0 + dt * static_cast<double>( i ); }
  double operator[]( std::size_t i ) const { return samples[i]; }
  double duration() const { return dt * static_cast<double>( samples.size() ); }

  /// Throws ContractError when dt <= 0, the series is empty, or a sample is not finite.
  void check() const;
};

/// Writes `time,<col1>,...` rows at full double precision. All columns must
/// share t0, dt and length.
void write_csv( std::ostream& out, const std::vector<const Waveform*>& columns );

/// Reads a file produced by write_csv(). The time column is consumed to recover t0 and dt.
std::vector<Waveform> read_csv( std::istream& in );

} // namespace noisegate
