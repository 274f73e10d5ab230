#pragma once

#include "noisegate/builders.hpp"
#include "noisegate/waveform.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace noisegate
{

/// Two-class logic-level distribution after add-one smoothing.
struct LogicDistribution
{
  double p0 = 0.5;
  double p1 = 0.5;
  std::size_t count0 = 0;
  std::size_t count1 = 0;

  std::size_t sample_count() const noexcept { return count0 + count1; }

  /// Laplace-smoothed probabilities from raw class counts.
  static LogicDistribution from_counts( std::size_t zeros, std::size_t ones );
};

/// Which samples of a waveform are classified.
struct Sampling
{
  enum class Mode
  {
    EverySample,
    BitMidpoints
  };

  Mode mode = Mode::EverySample;
  double period = 0.0;
  double offset = 0.5; ///< fraction of the period at which each bit is sampled

  static Sampling every_sample() { return {}; }
  static Sampling bit_midpoints( double period, double offset = 0.5 ) { return { Mode::BitMidpoints, period, offset }; }
};

/// Throws ContractError when the threshold is outside (0, vdd), the selection
/// is empty, or a bit period spans fewer than two samples.
LogicDistribution logic_distribution( const Waveform& w, double threshold, const Sampling& sampling = {},
                                      double vdd = 1.0 );

/// Two-class Kullback-Leibler distance in bits:
///   ideal.p0 * log2(ideal.p0 / real.p0) + ideal.p1 * log2(ideal.p1 / real.p1).
/// Both distributions must be strictly positive.
double kld( const LogicDistribution& ideal, const LogicDistribution& real );

/// Fraction of bits whose thresholded value at `t_start + (i + settle) * period`
/// differs from `expected[i]`.
double bit_error_rate( const Waveform& w, const std::vector<bool>& expected, double period, double threshold,
                       double settle = 0.75, double t_start = 0.0 );

/// vdd times the mean supply-current magnitude, ignoring the first 10% of samples.
double average_power( const Waveform& i_vdd, double vdd );

/// Noise-immunity metrics of one (gate, scheme, SNR, seed) point.
struct KldReport
{
  std::string gate;
  SchemeKind scheme = SchemeKind::Conventional;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  double kld_bits = 0.0;
  double bit_error_rate = 0.0;
  double avg_power_w = 0.0;
  std::string error; ///< empty when the point completed
};

/// `gate,scheme,snr_db,seed,kld_bits,ber,avg_power_w,error`
std::string kld_report_csv_header();
/// Numbers carry 12 significant digits; an infinite SNR prints as "inf".
std::string to_csv_row( const KldReport& r );
/// Parses a file written with kld_report_csv_header() / to_csv_row().
std::vector<KldReport> parse_kld_csv( const std::string& text );

} // namespace noisegate
