#include "noisegate/experiment.hpp"

#include "noisegate/energy.hpp"
#include "noisegate/error.hpp"
#include "noisegate/noise.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace noisegate
{

namespace
{

using nlohmann::json;

const char* method_name( IntegrationMethod m )
{
  return m == IntegrationMethod::BackwardEuler ? "backward_euler" : "trapezoidal";
}

const char* sampling_name( Sampling::Mode m )
{
  return m == Sampling::Mode::EverySample ? "every_sample" : "bit_midpoints";
}

TruthTable gate_table( const std::string& gate )
{
  auto tt = TruthTable::from_library( gate );
  if ( !tt )
  {
    throw ConfigError( "unknown gate: " + gate );
  }
  return *tt;
}

// json numbers, or "inf" for the noiseless point
double snr_value( const json& j )
{
  if ( j.is_number() )
  {
    return j.get<double>();
  }
  if ( j.is_string() )
  {
    auto s = j.get<std::string>();
    if ( s == "inf" || s == "+inf" || s == "Infinity" )
    {
      return std::numeric_limits<double>::infinity();
    }
  }
  throw ConfigError( "snr_db_grid entries must be numbers or \"inf\"" );
}

template <class T>
void take( const json& obj, const char* key, T& dst )
{
  if ( auto it = obj.find( key ); it != obj.end() )
  {
    try
    {
      dst = it->get<T>();
    }
    catch ( const json::exception& e )
    {
      throw ConfigError( fmt::format( "bad value for '{}': {}", key, e.what() ) );
    }
  }
}

void reject_unknown( const json& obj, std::initializer_list<const char*> known, const char* where )
{
  for ( auto it = obj.begin(); it != obj.end(); ++it )
  {
    if ( std::none_of( known.begin(), known.end(), [&]( const char* k ) { return it.key() == k; } ) )
    {
      throw ConfigError( fmt::format( "unknown key '{}' in {}", it.key(), where ) );
    }
  }
}

std::vector<Stimulus> stimuli_for( const std::vector<Waveform>& inputs )
{
  std::vector<Stimulus> s;
  for ( unsigned j = 0; j < inputs.size(); ++j )
  {
    s.push_back( Stimulus::samples( "x" + std::to_string( j ), inputs[j] ) );
  }
  return s;
}

struct Prepared
{
  TruthTable tt;
  Netlist net;
  std::vector<std::vector<bool>> bits;
  std::vector<Waveform> clean_inputs;
  std::vector<bool> expected;
};

Prepared prepare( const std::string& gate, SchemeKind scheme, std::uint64_t seed, const ExperimentConfig& cfg )
{
  auto tt = gate_table( gate );
  Prepared p{ tt, build( scheme, tt, cfg.build ), input_bits( seed, tt.arity(), cfg.bit_count ), {}, {} };
  for ( unsigned j = 0; j < tt.arity(); ++j )
  {
    p.clean_inputs.push_back( bit_waveform( p.bits[j], cfg, "x" + std::to_string( j ) ) );
  }
  p.expected = expected_bits( tt, p.bits );
  return p;
}

SimResult simulate_clean( const Prepared& p, const ExperimentConfig& cfg, const std::vector<std::string>& probes )
{
  return simulate( p.net, cfg.model, stimuli_for( p.clean_inputs ), cfg.sim_config(), probes );
}

// noisy half of a point, reusing a noiseless run
PointRun finish_point( const Prepared& p, SchemeKind scheme, double snr_db, std::uint64_t seed, SimResult clean,
                       const ExperimentConfig& cfg, const std::vector<std::string>& probes )
{
  PointRun run;
  const double mid = 0.5 * cfg.model.vdd;
  for ( unsigned j = 0; j < p.clean_inputs.size(); ++j )
  {
    run.noisy_inputs.push_back( add_awgn( p.clean_inputs[j], NoiseSpec{ snr_db, noise_seed( seed, j ) }, mid ) );
  }
  run.noisy = simulate( p.net, cfg.model, stimuli_for( run.noisy_inputs ), cfg.sim_config(), probes );
  run.clean = std::move( clean );

  const auto out = p.net.output();
  const auto& si = run.clean.at( out );
  const auto& sr = run.noisy.at( out );
  const double th = cfg.threshold_volts();
  KldReport& r = run.report;
  r.gate = p.tt.name();
  r.scheme = scheme;
  r.snr_db = snr_db;
  r.seed = seed;
  r.kld_bits = kld( logic_distribution( si, th, cfg.sampling(), cfg.model.vdd ),
                    logic_distribution( sr, th, cfg.sampling(), cfg.model.vdd ) );
  r.bit_error_rate = bit_error_rate( sr, p.expected, cfg.bit_period, th, cfg.settle );
  r.avg_power_w = average_power( run.noisy.i_vdd, cfg.model.vdd );
  return run;
}

KldReport error_row( const std::string& gate, SchemeKind scheme, double snr, std::uint64_t seed, const std::string& what )
{
  KldReport r;
  r.gate = gate;
  r.scheme = scheme;
  r.snr_db = snr;
  r.seed = seed;
  r.error = what.empty() ? "error" : what;
  return r;
}

void write_file( const std::filesystem::path& path, const std::string& text )
{
  std::ofstream f( path, std::ios::binary );
  if ( !f )
  {
    throw Error( "cannot write " + path.string() );
  }
  f << text;
}

} // namespace

std::vector<std::uint64_t> ExperimentConfig::default_seeds()
{
  std::vector<std::uint64_t> s( 20 );
  std::iota( s.begin(), s.end(), std::uint64_t{ 1 } );
  return s;
}

void ExperimentConfig::check() const
{
  if ( gates.empty() || schemes.empty() || snr_db_grid.empty() || seeds.empty() )
  {
    throw ConfigError( "gates, schemes, snr_db_grid and seeds must be non-empty" );
  }
  for ( const auto& g : gates )
  {
    gate_table( g );
  }
  if ( std::set<std::string>( gates.begin(), gates.end() ).size() != gates.size() )
  {
    throw ConfigError( "duplicate gate in config" );
  }
  for ( double s : snr_db_grid )
  {
    if ( std::isnan( s ) || s == -std::numeric_limits<double>::infinity() )
    {
      throw ConfigError( "snr_db_grid entries must be finite or +inf" );
    }
  }
  if ( bit_count < 10 )
  {
    throw ConfigError( "bit_count must be at least 10" );
  }
  if ( !( bit_period > 0.0 ) || !std::isfinite( bit_period ) )
  {
    throw ConfigError( "bit_period must be positive" );
  }
  if ( !( threshold > 0.0 && threshold < 1.0 ) )
  {
    throw ConfigError( "threshold is a fraction of vdd in (0, 1)" );
  }
  if ( !( settle >= 0.0 && settle < 1.0 ) )
  {
    throw ConfigError( "settle must lie in [0, 1)" );
  }
  try
  {
    model.check();
    sim_config().check();
  }
  catch ( const ContractError& e )
  {
    throw ConfigError( e.what() );
  }
  if ( bit_period < 2.0 * sim.t_step )
  {
    throw ConfigError( "bit_period must span at least two time steps" );
  }
}

SimConfig ExperimentConfig::sim_config() const
{
  SimConfig s = sim;
  s.t_stop = bit_count * bit_period;
  return s;
}

Sampling ExperimentConfig::sampling() const
{
  if ( kld_sampling == Sampling::Mode::EverySample )
  {
    return Sampling::every_sample();
  }
  return Sampling::bit_midpoints( bit_period, settle );
}

ExperimentConfig parse_config( const std::string& json_text, ExperimentConfig cfg )
{
  json j;
  try
  {
    j = json::parse( json_text );
  }
  catch ( const json::parse_error& e )
  {
    throw ConfigError( std::string( "config is not valid JSON: " ) + e.what() );
  }
  if ( !j.is_object() )
  {
    throw ConfigError( "config must be a JSON object" );
  }
  reject_unknown( j,
                  { "gates", "schemes", "snr_db_grid", "seeds", "bit_count", "bit_period", "model", "sim", "build",
                    "threshold", "settle", "kld_sampling", "output_dir" },
                  "config" );

  take( j, "gates", cfg.gates );
  if ( auto it = j.find( "schemes" ); it != j.end() )
  {
    cfg.schemes.clear();
    for ( const auto& s : *it )
    {
      try
      {
        cfg.schemes.push_back( parse_scheme( s.get<std::string>() ) );
      }
      catch ( const std::exception& e )
      {
        throw ConfigError( std::string( "bad scheme: " ) + e.what() );
      }
    }
  }
  if ( auto it = j.find( "snr_db_grid" ); it != j.end() )
  {
    if ( !it->is_array() )
    {
      throw ConfigError( "snr_db_grid must be an array" );
    }
    cfg.snr_db_grid.clear();
    for ( const auto& v : *it )
    {
      cfg.snr_db_grid.push_back( snr_value( v ) );
    }
  }
  take( j, "seeds", cfg.seeds );
  take( j, "bit_count", cfg.bit_count );
  take( j, "bit_period", cfg.bit_period );
  take( j, "threshold", cfg.threshold );
  take( j, "settle", cfg.settle );
  take( j, "output_dir", cfg.output_dir );
  if ( auto it = j.find( "kld_sampling" ); it != j.end() )
  {
    auto s = it->get<std::string>();
    if ( s == "every_sample" )
      cfg.kld_sampling = Sampling::Mode::EverySample;
    else if ( s == "bit_midpoints" )
      cfg.kld_sampling = Sampling::Mode::BitMidpoints;
    else
      throw ConfigError( "kld_sampling must be every_sample or bit_midpoints" );
  }
  if ( auto it = j.find( "model" ); it != j.end() )
  {
    reject_unknown( *it, { "vdd", "vth_n", "vth_p", "k_n", "pmos_ratio", "lambda", "temp_c" }, "model" );
    take( *it, "vdd", cfg.model.vdd );
    take( *it, "vth_n", cfg.model.vth_n );
    take( *it, "vth_p", cfg.model.vth_p );
    take( *it, "k_n", cfg.model.k_n );
    take( *it, "pmos_ratio", cfg.model.pmos_ratio );
    take( *it, "lambda", cfg.model.lambda );
    take( *it, "temp_c", cfg.model.temp_c );
  }
  if ( auto it = j.find( "sim" ); it != j.end() )
  {
    reject_unknown( *it, { "t_step", "method", "newton_tol", "newton_max_iters" }, "sim" );
    take( *it, "t_step", cfg.sim.t_step );
    take( *it, "newton_tol", cfg.sim.newton_tol );
    take( *it, "newton_max_iters", cfg.sim.newton_max_iters );
    if ( auto m = it->find( "method" ); m != it->end() )
    {
      auto s = m->get<std::string>();
      if ( s == "backward_euler" )
        cfg.sim.method = IntegrationMethod::BackwardEuler;
      else if ( s == "trapezoidal" )
        cfg.sim.method = IntegrationMethod::Trapezoidal;
      else
        throw ConfigError( "sim.method must be backward_euler or trapezoidal" );
    }
  }
  if ( auto it = j.find( "build" ); it != j.end() )
  {
    reject_unknown( *it, { "nmos_unit", "pmos_unit", "keeper_strength", "dcvs_pulldown", "dcvs_load", "node_capacitance" },
                    "build" );
    take( *it, "nmos_unit", cfg.build.nmos_unit );
    take( *it, "pmos_unit", cfg.build.pmos_unit );
    take( *it, "keeper_strength", cfg.build.keeper_strength );
    take( *it, "dcvs_pulldown", cfg.build.dcvs_pulldown );
    take( *it, "dcvs_load", cfg.build.dcvs_load );
    take( *it, "node_capacitance", cfg.build.node_capacitance );
  }
  cfg.check();
  return cfg;
}

std::string to_json( const ExperimentConfig& cfg )
{
  json j;
  j["gates"] = cfg.gates;
  j["schemes"] = json::array();
  for ( auto s : cfg.schemes )
  {
    j["schemes"].push_back( std::string( to_string( s ) ) );
  }
  j["snr_db_grid"] = json::array();
  for ( double s : cfg.snr_db_grid )
  {
    if ( std::isinf( s ) )
      j["snr_db_grid"].push_back( "inf" );
    else
      j["snr_db_grid"].push_back( s );
  }
  j["seeds"] = cfg.seeds;
  j["bit_count"] = cfg.bit_count;
  j["bit_period"] = cfg.bit_period;
  j["threshold"] = cfg.threshold;
  j["settle"] = cfg.settle;
  j["kld_sampling"] = sampling_name( cfg.kld_sampling );
  j["output_dir"] = cfg.output_dir;
  j["model"] = { { "vdd", cfg.model.vdd },       { "vth_n", cfg.model.vth_n },
                 { "vth_p", cfg.model.vth_p },   { "k_n", cfg.model.k_n },
                 { "pmos_ratio", cfg.model.pmos_ratio }, { "lambda", cfg.model.lambda },
                 { "temp_c", cfg.model.temp_c } };
  j["sim"] = { { "t_step", cfg.sim.t_step },
               { "method", method_name( cfg.sim.method ) },
               { "newton_tol", cfg.sim.newton_tol },
               { "newton_max_iters", cfg.sim.newton_max_iters } };
  j["build"] = { { "nmos_unit", cfg.build.nmos_unit },
                 { "pmos_unit", cfg.build.pmos_unit },
                 { "keeper_strength", cfg.build.keeper_strength },
                 { "dcvs_pulldown", cfg.build.dcvs_pulldown },
                 { "dcvs_load", cfg.build.dcvs_load },
                 { "node_capacitance", cfg.build.node_capacitance } };
  return j.dump( 2 ) + "\n";
}

std::vector<std::vector<bool>> input_bits( std::uint64_t seed, unsigned inputs, int bit_count )
{
  SplitMix64 rng( seed );
  std::vector<std::vector<bool>> bits( inputs, std::vector<bool>( static_cast<std::size_t>( bit_count ) ) );
  for ( int b = 0; b < bit_count; ++b )
  {
    for ( unsigned j = 0; j < inputs; ++j )
    {
      bits[j][b] = rng.bit();
    }
  }
  return bits;
}

std::uint64_t noise_seed( std::uint64_t seed, unsigned index )
{
  return SplitMix64( seed ^ ( ( index + 1ull ) * 0xD1B54A32D192ED03ull ) ).next();
}

Waveform bit_waveform( const std::vector<bool>& bits, const ExperimentConfig& cfg, std::string name )
{
  const auto sim = cfg.sim_config();
  const auto n = static_cast<std::size_t>( std::llround( sim.t_stop / sim.t_step ) ) + 1;
  Waveform w{ std::move( name ), 0.0, sim.t_step, std::vector<double>( n ) };
  for ( std::size_t k = 0; k < n; ++k )
  {
    // small bias keeps samples that land exactly on an edge in the new bit
    auto b = static_cast<std::size_t>( std::floor( w.time_at( k ) / cfg.bit_period + 1e-9 ) );
    b = std::min( b, bits.size() - 1 );
    w.samples[k] = bits[b] ? cfg.model.vdd : 0.0;
  }
  return w;
}

std::vector<bool> expected_bits( const TruthTable& tt, const std::vector<std::vector<bool>>& inputs )
{
  const std::size_t n = inputs.empty() ? 0 : inputs[0].size();
  std::vector<bool> out( n );
  for ( std::size_t b = 0; b < n; ++b )
  {
    std::uint32_t row = 0;
    for ( const auto& in : inputs )
    {
      row = ( row << 1u ) | ( in[b] ? 1u : 0u );
    }
    out[b] = tt( row );
  }
  return out;
}

PointRun run_point( const std::string& gate, SchemeKind scheme, double snr_db, std::uint64_t seed,
                    const ExperimentConfig& cfg )
{
  cfg.check();
  auto p = prepare( gate, scheme, seed, cfg );
  auto clean = simulate_clean( p, cfg, {} );
  return finish_point( p, scheme, snr_db, seed, std::move( clean ), cfg, {} );
}

const CurvePoint* SweepResult::curve( const std::string& gate, SchemeKind scheme, double snr_db ) const
{
  for ( const auto& c : curves )
  {
    if ( c.gate == gate && c.scheme == scheme && c.snr_db == snr_db )
    {
      return &c;
    }
  }
  return nullptr;
}

unsigned default_workers()
{
  if ( const char* env = std::getenv( "NOISEGATE_WORKERS" ) )
  {
    char* end = nullptr;
    long v = std::strtol( env, &end, 10 );
    if ( end != env && *end == '\0' && v > 0 )
    {
      return static_cast<unsigned>( v );
    }
    throw ConfigError( fmt::format( "NOISEGATE_WORKERS must be a positive integer, got '{}'", env ) );
  }
  return std::max( 1u, std::thread::hardware_concurrency() );
}

SweepResult run_sweep( const ExperimentConfig& cfg, unsigned workers, const std::function<void( const KldReport& )>& on_point )
{
  cfg.check();
  if ( workers == 0 )
  {
    workers = default_workers();
  }

  // one job = one noiseless run shared by every SNR of (gate, scheme, seed)
  struct Job
  {
    std::size_t gate, scheme;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for ( std::size_t g = 0; g < cfg.gates.size(); ++g )
    for ( std::size_t s = 0; s < cfg.schemes.size(); ++s )
      for ( auto seed : cfg.seeds )
        jobs.push_back( { g, s, seed } );

  const std::vector<std::string> probes;
  std::vector<std::vector<KldReport>> slots( jobs.size() );
  std::atomic<std::size_t> next{ 0 };
  std::mutex log_mu;

  auto worker = [&] {
    for ( std::size_t i; ( i = next.fetch_add( 1 ) ) < jobs.size(); )
    {
      const auto& job = jobs[i];
      const auto& gate = cfg.gates[job.gate];
      const auto scheme = cfg.schemes[job.scheme];
      auto& out = slots[i];
      try
      {
        auto p = prepare( gate, scheme, job.seed, cfg );
        auto netp = std::vector<std::string>{ p.net.output() };
        auto clean = simulate_clean( p, cfg, netp );
        for ( double snr : cfg.snr_db_grid )
        {
          try
          {
            out.push_back( finish_point( p, scheme, snr, job.seed, clean, cfg, netp ).report );
          }
          catch ( const std::exception& e )
          {
            out.push_back( error_row( gate, scheme, snr, job.seed, e.what() ) );
          }
        }
      }
      catch ( const std::exception& e )
      {
        for ( double snr : cfg.snr_db_grid )
        {
          out.push_back( error_row( gate, scheme, snr, job.seed, e.what() ) );
        }
      }
      if ( on_point )
      {
        std::lock_guard lk( log_mu );
        for ( const auto& r : out )
        {
          on_point( r );
        }
      }
    }
  };

  workers = std::min<unsigned>( workers, static_cast<unsigned>( jobs.size() ) );
  {
    std::vector<std::jthread> pool;
    for ( unsigned w = 1; w < workers; ++w )
    {
      pool.emplace_back( worker );
    }
    worker();
  }

  SweepResult res;
  for ( auto& s : slots )
  {
    for ( auto& r : s )
    {
      res.rows.push_back( std::move( r ) );
    }
  }

  std::map<std::string, std::size_t> gate_rank;
  for ( std::size_t g = 0; g < cfg.gates.size(); ++g )
  {
    gate_rank[gate_table( cfg.gates[g] ).name()] = g;
  }
  auto key = [&]( const KldReport& r ) {
    return std::make_tuple( gate_rank[r.gate], static_cast<int>( r.scheme ), r.snr_db, r.seed );
  };
  std::sort( res.rows.begin(), res.rows.end(), [&]( const auto& a, const auto& b ) { return key( a ) < key( b ); } );

  // per-curve means; rows are grouped by (gate, scheme, snr) after the sort
  for ( std::size_t i = 0; i < res.rows.size(); )
  {
    std::size_t j = i;
    CurvePoint c{ res.rows[i].gate, res.rows[i].scheme, res.rows[i].snr_db, 0.0, 0.0, 0 };
    for ( ; j < res.rows.size() && res.rows[j].gate == c.gate && res.rows[j].scheme == c.scheme &&
            res.rows[j].snr_db == c.snr_db;
          ++j )
    {
      if ( !res.rows[j].error.empty() )
      {
        ++res.errors;
        continue;
      }
      c.mean_kld += res.rows[j].kld_bits;
      c.mean_ber += res.rows[j].bit_error_rate;
      ++c.samples;
    }
    if ( c.samples > 0 )
    {
      c.mean_kld /= static_cast<double>( c.samples );
      c.mean_ber /= static_cast<double>( c.samples );
    }
    res.curves.push_back( c );
    i = j;
  }

  double acc = 0.0;
  for ( const auto& c : res.curves )
  {
    if ( c.scheme != SchemeKind::CentMrf || c.samples == 0 || !( c.mean_kld > 0.0 ) )
    {
      continue;
    }
    const auto* d = res.curve( c.gate, SchemeKind::DcvsMrf, c.snr_db );
    if ( d && d->samples > 0 )
    {
      acc += 1.0 - d->mean_kld / c.mean_kld;
      ++res.reduction_points;
    }
  }
  res.mean_reduction = res.reduction_points ? acc / static_cast<double>( res.reduction_points ) : 0.0;
  return res;
}

std::string sweep_csv( const SweepResult& r )
{
  std::string s = kld_report_csv_header() + "\n";
  for ( const auto& row : r.rows )
  {
    s += to_csv_row( row ) + "\n";
  }
  return s;
}

std::string summary_text( const SweepResult& r )
{
  std::string s = fmt::format( "{:<6} {:<12} {:>6} {:>12} {:>8} {:>5}\n", "gate", "scheme", "snr", "mean_kld", "ber", "n" );
  for ( const auto& c : r.curves )
  {
    s += fmt::format( "{:<6} {:<12} {:>6} {:>12.4g} {:>8.4f} {:>5}\n", c.gate, to_string( c.scheme ), snr_label( c.snr_db ),
                      c.mean_kld, c.mean_ber, c.samples );
  }
  if ( r.reduction_points > 0 )
  {
    s += fmt::format( "mean KLD reduction DcvsMrf vs CentMrf: {:.1f}% over {} points\n", 100.0 * r.mean_reduction,
                      r.reduction_points );
  }
  else
  {
    s += "mean KLD reduction DcvsMrf vs CentMrf: n/a\n";
  }
  if ( r.errors > 0 )
  {
    s += fmt::format( "{} grid points failed; see the error column\n", r.errors );
  }
  return s;
}

std::vector<std::string> write_sweep_outputs( const SweepResult& r, const ExperimentConfig& cfg )
{
  namespace fs = std::filesystem;
  fs::create_directories( cfg.output_dir );
  std::vector<std::string> written;
  auto csv = fs::path( cfg.output_dir ) / "sweep.csv";
  write_file( csv, sweep_csv( r ) );
  written.push_back( csv.string() );
  for ( const auto& g : cfg.gates )
  {
    auto name = gate_table( g ).name();
    auto svg = fs::path( cfg.output_dir ) / ( "kld_" + name + ".svg" );
    write_file( svg, kld_plot_svg( r, name ) );
    written.push_back( svg.string() );
  }
  return written;
}

CompareResult run_compare( const std::string& gate, double snr_db, std::uint64_t seed, const ExperimentConfig& cfg )
{
  cfg.check();
  CompareResult res{ gate_table( gate ).name(), snr_db, seed, {} };
  for ( auto scheme : cfg.schemes )
  {
    auto p = prepare( gate, scheme, seed, cfg );
    auto clean = simulate_clean( p, cfg, { p.net.output() } );
    res.runs.push_back( finish_point( p, scheme, snr_db, seed, std::move( clean ), cfg, { p.net.output() } ) );
  }
  return res;
}

std::vector<std::string> write_compare_outputs( const CompareResult& r, const ExperimentConfig& cfg )
{
  namespace fs = std::filesystem;
  fs::create_directories( cfg.output_dir );
  const auto stem = fs::path( cfg.output_dir ) / fmt::format( "compare_{}_{}", r.gate, snr_label( r.snr_db ) );

  std::vector<Waveform> cols;
  if ( !r.runs.empty() )
  {
    for ( const auto& w : r.runs.front().noisy_inputs )
    {
      cols.push_back( w );
      cols.back().name = w.name + "_noisy";
    }
  }
  for ( const auto& run : r.runs )
  {
    cols.push_back( run.noisy.nodes.begin()->second );
    cols.back().name = fmt::format( "out_{}", to_string( run.report.scheme ) );
  }
  // input samples run one sample past the last simulated step
  std::size_t n = std::numeric_limits<std::size_t>::max();
  for ( const auto& c : cols )
  {
    n = std::min( n, c.size() );
  }
  std::vector<const Waveform*> ptrs;
  for ( auto& c : cols )
  {
    c.samples.resize( n );
    ptrs.push_back( &c );
  }
  std::ostringstream csv;
  write_csv( csv, ptrs );
  write_file( stem.string() + ".csv", csv.str() );
  write_file( stem.string() + ".svg", compare_plot_svg( r, cfg ) );
  return { stem.string() + ".csv", stem.string() + ".svg" };
}

std::vector<CountRow> run_count( const ExperimentConfig& cfg, bool power )
{
  cfg.check();
  std::vector<CountRow> rows;
  for ( const auto& g : cfg.gates )
  {
    for ( auto scheme : cfg.schemes )
    {
      auto p = prepare( g, scheme, cfg.seeds.front(), cfg );
      CountRow row{ p.tt.name(), scheme, transistor_count( p.net ), -1.0 };
      if ( power )
      {
        row.avg_power_w = average_power( simulate_clean( p, cfg, { p.net.output() } ).i_vdd, cfg.model.vdd );
      }
      rows.push_back( row );
    }
  }
  return rows;
}

std::string counts_csv( const std::vector<CountRow>& rows )
{
  const bool power = std::any_of( rows.begin(), rows.end(), []( const auto& r ) { return r.avg_power_w >= 0.0; } );
  std::string s = power ? "gate,scheme,transistors,avg_power_w\n" : "gate,scheme,transistors\n";
  for ( const auto& r : rows )
  {
    s += fmt::format( "{},{},{}", r.gate, to_string( r.scheme ), r.transistors );
    s += power ? fmt::format( ",{:.12g}\n", r.avg_power_w ) : "\n";
  }
  return s;
}

std::string counts_table( const std::vector<CountRow>& rows )
{
  const bool power = std::any_of( rows.begin(), rows.end(), []( const auto& r ) { return r.avg_power_w >= 0.0; } );
  std::string s = fmt::format( "{:<6} {:<12} {:>11}", "gate", "scheme", "transistors" );
  s += power ? fmt::format( " {:>12}\n", "power_uW" ) : "\n";
  for ( const auto& r : rows )
  {
    s += fmt::format( "{:<6} {:<12} {:>11}", r.gate, to_string( r.scheme ), r.transistors );
    s += power ? fmt::format( " {:>12.4f}\n", r.avg_power_w * 1e6 ) : "\n";
  }
  return s;
}

EnergyCheck run_energy_check( const TruthTable& tt )
{
  EnergyCheck c{ tt.name().empty() ? tt.bits() : tt.name(), check_equivalence( tt ), {} };
  const auto k = tt.arity();
  const auto sm = EnergyFunction::sum_of_minterms( tt );
  const auto fa = EnergyFunction::factored( tt );
  const auto ge = EnergyFunction::general_form( tt );
  const auto mt = valid_minterms( tt );

  std::string& s = c.report;
  s += fmt::format( "gate {} (truth table {})\n", c.gate, tt.bits() );
  s += "valid minterms:";
  for ( const auto& t : mt.terms )
  {
    s += " " + t.to_string();
  }
  s += "\n";
  s += fmt::format( "  sum of minterms: {}\n  factored:        {}\n  general form:    {}\n", sm.expression(),
                    fa.expression(), ge.expression() );
  std::string head;
  for ( unsigned i = 0; i < k; ++i )
  {
    head += fmt::format( "{:>4}", fmt::format( "x{}", i ) );
  }
  s += fmt::format( "{}{:>5} | U_sum U_fac U_gen | valid\n", head, "out" );
  for ( std::uint32_t b = 0; b < ( 1u << ( k + 1 ) ); ++b )
  {
    State st{ b, k + 1 };
    std::string row;
    for ( unsigned i = 0; i < k; ++i )
    {
      row += fmt::format( "{:>4}", st.var( i ) ? 1 : 0 );
    }
    s += fmt::format( "{}{:>5} | {:>5} {:>5} {:>5} | {}\n", row, st.output() ? 1 : 0, sm.evaluate( st ), fa.evaluate( st ),
                      ge.evaluate( st ), mt.contains( st ) ? "yes" : "no" );
  }
  s += c.equivalent ? "equivalent: yes\n" : "equivalent: NO\n";
  return c;
}

std::string snr_label( double snr_db )
{
  if ( std::isinf( snr_db ) )
  {
    return snr_db > 0 ? "inf" : "-inf";
  }
  return fmt::format( "{}", snr_db );
}

} // namespace noisegate
