#pragma once

#include "noisegate/builders.hpp"
#include "noisegate/device_model.hpp"
#include "noisegate/metrics.hpp"
#include "noisegate/transient.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace noisegate
{

/// One experiment matrix. JSON keys mirror the field names; see parse_config().
struct ExperimentConfig
{
  std::vector<std::string> gates = { "INV", "NAND2", "XOR2" };
  std::vector<SchemeKind> schemes = { all_schemes.begin(), all_schemes.end() };
  std::vector<double> snr_db_grid = { 1.0, 2.0, 3.5, 5.0, 7.0, 10.0 };
  std::vector<std::uint64_t> seeds = default_seeds();
  int bit_count = 1000;
  double bit_period = 1e-9;
  DeviceModelParams model;
  /// t_stop is derived from bit_count * bit_period. The 80 ps step doubles as
  /// the noise sample interval, coarse enough that a static gate follows
  /// each noise sample.
  SimConfig sim = { 80e-12, 1e-9, IntegrationMethod::BackwardEuler, 1e-6, 50 };
  BuildOptions build;
  double threshold = 0.5; ///< fraction of vdd
  double settle = 0.75;   ///< fraction of the bit period at which bits are read
  Sampling::Mode kld_sampling = Sampling::Mode::BitMidpoints;
  std::string output_dir = "noisegate_out";

  static std::vector<std::uint64_t> default_seeds();
  /// Throws ConfigError when an invariant does not hold.
  void check() const;
  SimConfig sim_config() const;
  Sampling sampling() const;
  double threshold_volts() const { return threshold * model.vdd; }
};

/// Keys not listed in ExperimentConfig are rejected. Throws ConfigError.
ExperimentConfig parse_config( const std::string& json_text, ExperimentConfig base = {} );
std::string to_json( const ExperimentConfig& cfg );

/// Input bit streams: SplitMix64(seed), one bit per call taken from the top
/// bit, interleaved input by input within each bit slot. Result is [input][bit].
std::vector<std::vector<bool>> input_bits( std::uint64_t seed, unsigned inputs, int bit_count );
/// Noise seed of input `index`: the first SplitMix64 output for seed ^ ((index + 1) * 0xD1B54A32D192ED03).
/// Independent of SNR, so every grid point of a seed shares one Gaussian sequence.
std::uint64_t noise_seed( std::uint64_t seed, unsigned index );
/// Rail-to-rail sampled waveform at cfg.sim.t_step covering every bit.
Waveform bit_waveform( const std::vector<bool>& bits, const ExperimentConfig& cfg, std::string name );
/// Expected gate output per bit slot.
std::vector<bool> expected_bits( const TruthTable& tt, const std::vector<std::vector<bool>>& inputs );

struct PointRun
{
  KldReport report;
  SimResult clean;
  SimResult noisy;
  std::vector<Waveform> noisy_inputs;
};

/// Noiseless and noisy simulation of one (gate, scheme, snr, seed) point.
/// Throws on simulation failure; run_sweep() turns that into an error row.
PointRun run_point( const std::string& gate, SchemeKind scheme, double snr_db, std::uint64_t seed,
                    const ExperimentConfig& cfg );

struct CurvePoint
{
  std::string gate;
  SchemeKind scheme;
  double snr_db;
  double mean_kld;
  double mean_ber;
  std::size_t samples; ///< rows without error
};

struct SweepResult
{
  std::vector<KldReport> rows; ///< sorted by (gate, scheme, snr, seed)
  std::vector<CurvePoint> curves;
  /// Mean over (gate, snr) of 1 - K_dcvs / K_cent, skipping points where K_cent is 0.
  double mean_reduction = 0.0;
  std::size_t reduction_points = 0;
  std::size_t errors = 0;
  const CurvePoint* curve( const std::string& gate, SchemeKind scheme, double snr_db ) const;
};

/// Worker count from NOISEGATE_WORKERS, else one per hardware thread.
unsigned default_workers();

/// Every grid point on a bounded pool. Output ordering never depends on `workers`.
SweepResult run_sweep( const ExperimentConfig& cfg, unsigned workers = 0,
                       const std::function<void( const KldReport& )>& on_point = {} );

std::string sweep_csv( const SweepResult& r );
std::string summary_text( const SweepResult& r );
/// Writes sweep.csv and kld_<gate>.svg under cfg.output_dir. Returns paths written.
std::vector<std::string> write_sweep_outputs( const SweepResult& r, const ExperimentConfig& cfg );

struct CompareResult
{
  std::string gate;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  std::vector<PointRun> runs; ///< one per cfg.schemes entry
};

CompareResult run_compare( const std::string& gate, double snr_db, std::uint64_t seed, const ExperimentConfig& cfg );
/// Writes compare_<gate>_<snr>.csv/.svg. Returns paths written.
std::vector<std::string> write_compare_outputs( const CompareResult& r, const ExperimentConfig& cfg );

struct CountRow
{
  std::string gate;
  SchemeKind scheme;
  std::size_t transistors;
  double avg_power_w; ///< negative when not simulated
};

/// With `power`, each netlist is simulated on the noiseless bit stream of the
/// first configured seed; every scheme of a gate sees the same stimulus.
std::vector<CountRow> run_count( const ExperimentConfig& cfg, bool power );
std::string counts_csv( const std::vector<CountRow>& rows );
std::string counts_table( const std::vector<CountRow>& rows );

struct EnergyCheck
{
  std::string gate;
  bool equivalent = false;
  std::string report;
};

EnergyCheck run_energy_check( const TruthTable& tt );

// svg.cpp
std::string kld_plot_svg( const SweepResult& r, const std::string& gate );
std::string compare_plot_svg( const CompareResult& r, const ExperimentConfig& cfg );

/// Filename-safe rendering of an SNR value: 3.5 -> "3.5", inf -> "inf".
std::string snr_label( double snr_db );

} // namespace noisegate
