#include "noisegate/builders.hpp"
#include "noisegate/device_model.hpp"
#include "noisegate/energy.hpp"
#include "noisegate/experiment.hpp"
#include "noisegate/metrics.hpp"
#include "noisegate/noise.hpp"
#include "noisegate/transient.hpp"

#include <benchmark/benchmark.h>

namespace ng = noisegate;

namespace
{

ng::TruthTable lib( const char* n ) { return *ng::TruthTable::from_library( n ); }

void BM_mosfet_eval( benchmark::State& st )
{
  ng::DeviceModelParams p;
  double v = 0.0;
  for ( auto _ : st )
  {
    v += 1e-9;
    benchmark::DoNotOptimize( ng::mosfet_eval( p, ng::DeviceKind::NMOS, 1.0, 0.7 + v, 0.3 ) );
  }
}
BENCHMARK( BM_mosfet_eval );

void BM_build( benchmark::State& st )
{
  const auto tt = lib( "XOR2" );
  const auto scheme = ng::all_schemes[std::size_t( st.range( 0 ) )];
  for ( auto _ : st )
    benchmark::DoNotOptimize( ng::build( scheme, tt ) );
}
BENCHMARK( BM_build )->DenseRange( 0, 2 );

void BM_energy_equivalence( benchmark::State& st )
{
  const auto tables = ng::all_truth_tables( 3 );
  for ( auto _ : st )
    for ( const auto& t : tables )
      benchmark::DoNotOptimize( ng::check_equivalence( t ) );
}
BENCHMARK( BM_energy_equivalence );

// one bit period of a gate at the sweep step, so 12-13 Newton solves
void BM_transient_bit( benchmark::State& st )
{
  ng::DeviceModelParams p;
  const auto n = ng::build( ng::all_schemes[std::size_t( st.range( 0 ) )], lib( "NAND2" ) );
  std::vector<ng::Stimulus> in = { ng::Stimulus::square( "x0", 0.0, 1.0, 1e-9 ),
                                   ng::Stimulus::constant( "x1", 1.0 ) };
  ng::SimConfig c{ 80e-12, 1e-9, ng::IntegrationMethod::BackwardEuler, 1e-6, 50 };
  for ( auto _ : st )
    benchmark::DoNotOptimize( ng::simulate( n, p, in, c, { "out" } ) );
}
BENCHMARK( BM_transient_bit )->DenseRange( 0, 2 )->Unit( benchmark::kMicrosecond );

void BM_add_awgn( benchmark::State& st )
{
  ng::Waveform w{ "x", 0.0, 80e-12, std::vector<double>( std::size_t( st.range( 0 ) ), 1.0 ) };
  for ( auto _ : st )
    benchmark::DoNotOptimize( ng::add_awgn( w, { 3.5, 1 } ) );
  st.SetItemsProcessed( st.iterations() * st.range( 0 ) );
}
BENCHMARK( BM_add_awgn )->Arg( 12500 )->Arg( 1 << 20 );

void BM_kld_midpoints( benchmark::State& st )
{
  ng::Waveform w{ "x", 0.0, 80e-12, {} };
  auto bits = ng::input_bits( 1, 1, 1000 )[0];
  for ( std::size_t i = 0; i < 12500; ++i )
    w.samples.push_back( bits[i * 2 / 25] ? 1.0 : 0.0 );
  const auto ideal = ng::logic_distribution( w, 0.5, ng::Sampling::bit_midpoints( 1e-9, 0.75 ) );
  for ( auto _ : st )
    benchmark::DoNotOptimize(
        ng::kld( ideal, ng::logic_distribution( w, 0.5, ng::Sampling::bit_midpoints( 1e-9, 0.75 ) ) ) );
}
BENCHMARK( BM_kld_midpoints );

void BM_sweep_point( benchmark::State& st )
{
  ng::ExperimentConfig c;
  c.bit_count = 100;
  for ( auto _ : st )
    benchmark::DoNotOptimize( ng::run_point( "NAND2", ng::SchemeKind::DcvsMrf, 1.0, 1, c ) );
}
BENCHMARK( BM_sweep_point )->Unit( benchmark::kMillisecond );

} // namespace

BENCHMARK_MAIN();
