#include "noisegate/transient.hpp"

#include "noisegate/error.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace noisegate
{

void SimConfig::check() const
{
  if ( !( t_step > 0.0 ) || !( t_step <= t_stop ) )
  {
    throw ContractError( "simulation needs 0 < t_step <= t_stop" );
  }
  if ( !( newton_tol > 0.0 ) || newton_max_iters < 1 )
  {
    throw ContractError( "simulation needs newton_tol > 0 and newton_max_iters >= 1" );
  }
}

Stimulus Stimulus::square( std::string node, double low, double high, double period, double delay, double rise,
                           double duty )
{
  Stimulus s;
  s.node_ = std::move( node );
  s.kind_ = Kind::SquareWave;
  s.low_ = low;
  s.high_ = high;
  s.period_ = period;
  s.delay_ = delay;
  s.rise_ = rise;
  s.duty_ = duty;
  return s;
}

Stimulus Stimulus::piecewise_linear( std::string node, std::vector<std::pair<double, double>> points )
{
  Stimulus s;
  s.node_ = std::move( node );
  s.kind_ = Kind::PiecewiseLinear;
  s.points_ = std::move( points );
  return s;
}

Stimulus Stimulus::constant( std::string node, double volts )
{
  return piecewise_linear( std::move( node ), { { 0.0, volts } } );
}

Stimulus Stimulus::samples( std::string node, Waveform w )
{
  Stimulus s;
  s.node_ = std::move( node );
  s.kind_ = Kind::Samples;
  s.samples_ = std::move( w );
  return s;
}

double Stimulus::value_at( double t ) const
{
  switch ( kind_ )
  {
  case Kind::SquareWave:
  {
    if ( t < delay_ )
    {
      return low_;
    }
    const double phase = std::fmod( t - delay_, period_ );
    const double high_end = duty_ * period_;
    if ( rise_ > 0.0 && phase < rise_ )
    {
      return low_ + ( high_ - low_ ) * phase / rise_;
    }
    if ( phase < high_end )
    {
      return high_;
    }
    if ( rise_ > 0.0 && phase < high_end + rise_ )
    {
      return high_ + ( low_ - high_ ) * ( phase - high_end ) / rise_;
    }
    return low_;
  }
  case Kind::PiecewiseLinear:
  {
    if ( t <= points_.front().first )
    {
      return points_.front().second;
    }
    for ( std::size_t i = 1; i < points_.size(); ++i )
    {
      if ( t <= points_[i].first )
      {
        const auto& [t0, v0] = points_[i - 1];
        const auto& [t1, v1] = points_[i];
        return t1 > t0 ? v0 + ( v1 - v0 ) * ( t - t0 ) / ( t1 - t0 ) : v1;
      }
    }
    return points_.back().second;
  }
  case Kind::Samples:
  {
    const double pos = std::round( ( t - samples_.t0 ) / samples_.dt );
    if ( pos <= 0.0 )
    {
      return samples_.samples.front();
    }
    const auto i = static_cast<std::size_t>( pos );
    return i >= samples_.size() ? samples_.samples.back() : samples_.samples[i];
  }
  }
  return 0.0;
}

void Stimulus::check( double vdd ) const
{
  switch ( kind_ )
  {
  case Kind::SquareWave:
    if ( !( period_ > 0.0 ) || !( duty_ > 0.0 && duty_ < 1.0 ) || rise_ < 0.0 || rise_ > duty_ * period_ ||
         rise_ > ( 1.0 - duty_ ) * period_ )
    {
      throw ContractError( "square wave on '" + node_ + "' has malformed timing" );
    }
    for ( double level : { low_, high_ } )
    {
      if ( level < -0.5 * vdd || level > 1.5 * vdd )
      {
        throw ContractError( "square wave on '" + node_ + "' has a level outside [-0.5 vdd, 1.5 vdd]" );
      }
    }
    break;
  case Kind::PiecewiseLinear:
    if ( points_.empty() )
    {
      throw ContractError( "piecewise-linear stimulus on '" + node_ + "' has no points" );
    }
    for ( std::size_t i = 1; i < points_.size(); ++i )
    {
      if ( points_[i].first < points_[i - 1].first )
      {
        throw ContractError( "piecewise-linear stimulus on '" + node_ + "' has decreasing time" );
      }
    }
    break;
  case Kind::Samples:
    samples_.check();
    break;
  }
}

const Waveform& SimResult::at( const std::string& node ) const
{
  const auto it = nodes.find( node );
  if ( it == nodes.end() )
  {
    throw ContractError( "no waveform recorded for node '" + node + "'" );
  }
  return it->second;
}

namespace
{

struct Mos
{
  int d, g, s;
  DeviceKind kind;
  double strength;
};

struct Cap
{
  int a, b;
  double c;
};

/// Netlist flattened to integer node indices. Solved nodes occupy
/// [0, unknowns); supplies and stimulus-driven nodes follow.
class Circuit
{
public:
  Circuit( const Netlist& n, const DeviceModelParams& p ) : params( p )
  {
    std::set<std::string> fixed{ std::string( vdd_node ), std::string( gnd_node ) };
    for ( const auto& in : n.inputs() )
    {
      fixed.insert( in );
    }
    for ( const auto& d : n.devices )
    {
      if ( d.kind == DeviceKind::VoltageSource )
      {
        if ( d.terminals.at( 1 ) != gnd_node )
        {
          throw ContractError( "voltage source '" + d.id + "' must be referenced to GND" );
        }
        fixed.insert( d.terminals.at( 0 ) );
      }
    }
    for ( const auto& node : n.nodes )
    {
      if ( !fixed.contains( node ) )
      {
        names.push_back( node );
      }
    }
    unknowns = static_cast<int>( names.size() );
    for ( const auto& node : n.nodes )
    {
      if ( fixed.contains( node ) )
      {
        names.push_back( node );
      }
    }
    for ( int i = 0; i < static_cast<int>( names.size() ); ++i )
    {
      index_of.emplace( names[static_cast<std::size_t>( i )], i );
    }
    vdd_index = index_of.at( std::string( vdd_node ) );
    gnd_index = index_of.at( std::string( gnd_node ) );

    for ( const auto& d : n.devices )
    {
      switch ( d.kind )
      {
      case DeviceKind::NMOS:
      case DeviceKind::PMOS:
        mos.push_back( { index( d.drain() ), index( d.gate() ), index( d.source() ), d.kind, d.strength } );
        break;
      case DeviceKind::Capacitor:
        caps.push_back( { index( d.terminals[0] ), index( d.terminals[1] ), d.value } );
        break;
      case DeviceKind::VoltageSource:
        sources.emplace_back( index( d.terminals[0] ), d.source_ref == "supply" ? p.vdd : d.value );
        break;
      }
    }
  }

  int index( const std::string& node ) const { return index_of.at( node ); }
  std::size_t total() const { return names.size(); }

  /// Static device currents into each solved node plus the Jacobian.
  void assemble_static( const std::vector<double>& v, Eigen::MatrixXd& jac, Eigen::VectorXd& f ) const
  {
    jac.setZero();
    f.setZero();
    const int n = unknowns;
    for ( const auto& m : mos )
    {
      const double vs = v[static_cast<std::size_t>( m.s )];
      const auto e = mosfet_eval( params, m.kind, m.strength, v[static_cast<std::size_t>( m.g )] - vs,
                                  v[static_cast<std::size_t>( m.d )] - vs );
      const double gs = e.gm + e.gds;
      if ( m.d < n )
      {
        f[m.d] -= e.id;
        jac( m.d, m.d ) -= e.gds;
        if ( m.g < n )
          jac( m.d, m.g ) -= e.gm;
        if ( m.s < n )
          jac( m.d, m.s ) += gs;
      }
      if ( m.s < n )
      {
        f[m.s] += e.id;
        jac( m.s, m.s ) -= gs;
        if ( m.g < n )
          jac( m.s, m.g ) += e.gm;
        if ( m.d < n )
          jac( m.s, m.d ) += e.gds;
      }
    }
    for ( int i = 0; i < n; ++i )
    {
      f[i] -= gmin * v[static_cast<std::size_t>( i )];
      jac( i, i ) -= gmin;
    }
  }

  /// Current delivered by the supply for static devices at `v`.
  double supply_current( const std::vector<double>& v ) const
  {
    double drawn = 0.0;
    for ( const auto& m : mos )
    {
      if ( m.d != vdd_index && m.s != vdd_index )
      {
        continue;
      }
      const double vs = v[static_cast<std::size_t>( m.s )];
      const double id = mosfet_eval( params, m.kind, m.strength, v[static_cast<std::size_t>( m.g )] - vs,
                                     v[static_cast<std::size_t>( m.d )] - vs )
                            .id;
      drawn += ( m.d == vdd_index ? id : 0.0 ) - ( m.s == vdd_index ? id : 0.0 );
    }
    return drawn;
  }

  DeviceModelParams params;
  std::vector<std::string> names;
  std::map<std::string, int> index_of;
  int unknowns = 0;
  int vdd_index = -1;
  int gnd_index = -1;
  std::vector<Mos> mos;
  std::vector<Cap> caps;
  std::vector<std::pair<int, double>> sources;
};

using Inputs = std::vector<std::pair<int, double>>;

void apply_fixed( const Circuit& c, const Inputs& inputs, std::vector<double>& v )
{
  v[static_cast<std::size_t>( c.vdd_index )] = c.params.vdd;
  v[static_cast<std::size_t>( c.gnd_index )] = 0.0;
  for ( const auto& [i, volts] : c.sources )
  {
    v[static_cast<std::size_t>( i )] = volts;
  }
  for ( const auto& [i, volts] : inputs )
  {
    v[static_cast<std::size_t>( i )] = volts;
  }
}

int worst_node( const Eigen::VectorXd& f )
{
  int worst = 0;
  f.cwiseAbs().maxCoeff( &worst );
  return worst;
}

/// Plain damped Newton on the static equations; returns false on stall.
bool dc_newton( const Circuit& c, std::vector<double>& v, int max_iters, double tol, double& residual, int& worst )
{
  const int n = c.unknowns;
  Eigen::MatrixXd jac( n, n );
  Eigen::VectorXd f( n );
  Eigen::PartialPivLU<Eigen::MatrixXd> lu( n );
  constexpr double step_limit = 0.2;
  for ( int it = 0; it < max_iters; ++it )
  {
    c.assemble_static( v, jac, f );
    residual = f.cwiseAbs().maxCoeff();
    worst = worst_node( f );
    lu.compute( jac );
    const Eigen::VectorXd dx = lu.solve( -f );
    if ( !dx.allFinite() )
    {
      return false;
    }
    double largest = 0.0;
    for ( int i = 0; i < n; ++i )
    {
      const double step = std::clamp( dx[i], -step_limit, step_limit );
      v[static_cast<std::size_t>( i )] += step;
      largest = std::max( largest, std::abs( dx[i] ) );
    }
    if ( largest < tol && residual < dc_residual_tol )
    {
      return true;
    }
  }
  c.assemble_static( v, jac, f );
  residual = f.cwiseAbs().maxCoeff();
  worst = worst_node( f );
  return residual < dc_residual_tol;
}

/// Backward-Euler relaxation with a growing pseudo time step.
bool dc_pseudo_transient( const Circuit& c, std::vector<double>& v, double tol )
{
  const int n = c.unknowns;
  Eigen::MatrixXd jac( n, n );
  Eigen::VectorXd f( n );
  Eigen::PartialPivLU<Eigen::MatrixXd> lu( n );
  constexpr double pseudo_c = 1e-15;
  double h = 1e-13;
  for ( int step = 0; step < 4000 && h < 1e-3; ++step )
  {
    const std::vector<double> prev = v;
    bool converged = false;
    for ( int it = 0; it < 50; ++it )
    {
      c.assemble_static( v, jac, f );
      for ( int i = 0; i < n; ++i )
      {
        f[i] -= pseudo_c / h * ( v[static_cast<std::size_t>( i )] - prev[static_cast<std::size_t>( i )] );
        jac( i, i ) -= pseudo_c / h;
      }
      lu.compute( jac );
      const Eigen::VectorXd dx = lu.solve( -f );
      if ( !dx.allFinite() )
      {
        break;
      }
      double largest = 0.0;
      for ( int i = 0; i < n; ++i )
      {
        v[static_cast<std::size_t>( i )] += std::clamp( dx[i], -0.2, 0.2 );
        largest = std::max( largest, std::abs( dx[i] ) );
      }
      if ( largest < tol )
      {
        converged = true;
        break;
      }
    }
    if ( !converged )
    {
      v = prev;
      h *= 0.25;
      if ( h < 1e-18 )
      {
        return false;
      }
      continue;
    }
    double moved = 0.0;
    for ( int i = 0; i < n; ++i )
    {
      moved = std::max( moved, std::abs( v[static_cast<std::size_t>( i )] - prev[static_cast<std::size_t>( i )] ) );
    }
    if ( moved < tol * 1e-3 )
    {
      break;
    }
    h *= 2.0;
  }
  return true;
}

Inputs resolve_inputs( const Circuit& c, const Netlist& n, const std::map<std::string, double>& inputs )
{
  Inputs out;
  for ( const auto& in : n.inputs() )
  {
    const auto it = inputs.find( in );
    if ( it == inputs.end() )
    {
      throw ContractError( "input port '" + in + "' has no value" );
    }
    out.emplace_back( c.index( in ), it->second );
  }
  return out;
}

void require_valid( const Netlist& n )
{
  const auto diags = validate( n );
  if ( !diags.empty() )
  {
    throw ContractError( fmt::format( "netlist '{}' is invalid: {} ({})", n.name, diags.front().message,
                                      to_string( diags.front().kind ) ) );
  }
}

std::vector<double> solve_dc( const Circuit& c, const Netlist& n, const Inputs& inputs, const SimConfig& cfg )
{
  std::vector<double> v( c.total(), 0.5 * c.params.vdd );
  const auto seed = [&]( const std::optional<std::string>& node, double fraction ) {
    if ( node )
    {
      const int i = c.index( *node );
      if ( i < c.unknowns )
      {
        v[static_cast<std::size_t>( i )] = fraction * c.params.vdd;
      }
    }
  };
  const auto outs = n.ports_with_role( PortRole::Output );
  seed( outs.empty() ? std::nullopt : std::optional<std::string>( outs.front() ), 0.45 );
  seed( n.output_complement(), 0.55 );
  apply_fixed( c, inputs, v );

  if ( c.unknowns == 0 )
  {
    return v;
  }
  double residual = 0.0;
  int worst = 0;
  const std::vector<double> guess = v;
  if ( dc_newton( c, v, cfg.newton_max_iters * 10, cfg.newton_tol, residual, worst ) )
  {
    return v;
  }
  v = guess;
  if ( dc_pseudo_transient( c, v, cfg.newton_tol ) &&
       dc_newton( c, v, cfg.newton_max_iters * 10, cfg.newton_tol, residual, worst ) )
  {
    return v;
  }
  throw ConvergenceError( fmt::format( "DC operating point did not converge; worst residual {:.3g} A at node '{}'",
                                       residual, c.names[static_cast<std::size_t>( worst )] ),
                          -1.0, c.names[static_cast<std::size_t>( worst )], residual );
}


constexpr int max_substep_depth = 6;

/// One implicit integration step of the full circuit, with capacitor history.
class Stepper
{
public:
  Stepper( const Circuit& c, bool trapezoidal, const SimConfig& cfg )
      : c_( c ), trapezoidal_( trapezoidal ), cfg_( cfg ), jac_( c.unknowns, c.unknowns ), f_( c.unknowns ),
        lu_( c.unknowns ), cap_current_( c.caps.size(), 0.0 )
  {
  }

  struct Snapshot
  {
    std::vector<double> v;
    std::vector<double> cap_current;
  };

  Snapshot checkpoint( const std::vector<double>& v ) const { return { v, cap_current_ }; }
  void restore( const Snapshot& s, std::vector<double>& v )
  {
    v = s.v;
    cap_current_ = s.cap_current;
  }

  /// Advances from `start` by `h`. On entry the fixed nodes of `v` hold their
  /// end-of-step values and the solved nodes an initial guess.
  bool advance( const std::vector<double>& start, std::vector<double>& v, double h, long& iterations )
  {
    const int n = c_.unknowns;
    const double alpha = ( trapezoidal_ ? 2.0 : 1.0 ) / h;
    if ( n == 0 )
    {
      update_caps( start, v, alpha );
      return true;
    }
    bool converged = false;
    for ( int it = 0; it < cfg_.newton_max_iters && !converged; ++it )
    {
      c_.assemble_static( v, jac_, f_ );
      for ( std::size_t k = 0; k < c_.caps.size(); ++k )
      {
        const auto& cap = c_.caps[k];
        const auto a = static_cast<std::size_t>( cap.a );
        const auto b = static_cast<std::size_t>( cap.b );
        const double g = alpha * cap.c;
        const double i_a = g * ( ( v[b] - v[a] ) - ( start[b] - start[a] ) ) - ( trapezoidal_ ? cap_current_[k] : 0.0 );
        if ( cap.a < n )
        {
          f_[cap.a] += i_a;
          jac_( cap.a, cap.a ) -= g;
          if ( cap.b < n )
            jac_( cap.a, cap.b ) += g;
        }
        if ( cap.b < n )
        {
          f_[cap.b] -= i_a;
          jac_( cap.b, cap.b ) -= g;
          if ( cap.a < n )
            jac_( cap.b, cap.a ) += g;
        }
      }
      ++iterations;
      lu_.compute( jac_ );
      dx_ = lu_.solve( -f_ );
      if ( !dx_.allFinite() )
      {
        return false;
      }
      double largest = 0.0;
      for ( int i = 0; i < n; ++i )
      {
        v[static_cast<std::size_t>( i )] += std::clamp( dx_[i], -newton_step_limit, newton_step_limit );
        largest = std::max( largest, std::abs( dx_[i] ) );
      }
      converged = largest < cfg_.newton_tol;
    }
    if ( converged )
    {
      update_caps( start, v, alpha );
    }
    return converged;
  }

  double cap_supply() const { return cap_supply_; }
  int worst_node() const { return c_.unknowns == 0 ? 0 : noisegate::worst_node( f_ ); }
  double worst_residual() const { return c_.unknowns == 0 ? 0.0 : f_.cwiseAbs().maxCoeff(); }

private:
  void update_caps( const std::vector<double>& start, const std::vector<double>& v, double alpha )
  {
    cap_supply_ = 0.0;
    for ( std::size_t k = 0; k < c_.caps.size(); ++k )
    {
      const auto& cap = c_.caps[k];
      const auto a = static_cast<std::size_t>( cap.a );
      const auto b = static_cast<std::size_t>( cap.b );
      cap_current_[k] =
          alpha * cap.c * ( ( v[b] - v[a] ) - ( start[b] - start[a] ) ) - ( trapezoidal_ ? cap_current_[k] : 0.0 );
      if ( cap.a == c_.vdd_index )
        cap_supply_ -= cap_current_[k];
      if ( cap.b == c_.vdd_index )
        cap_supply_ += cap_current_[k];
    }
  }

  static constexpr double newton_step_limit = 0.5;

  const Circuit& c_;
  bool trapezoidal_;
  SimConfig cfg_;
  Eigen::MatrixXd jac_;
  Eigen::VectorXd f_;
  Eigen::VectorXd dx_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  std::vector<double> cap_current_;
  double cap_supply_ = 0.0;
};

} // namespace

std::map<std::string, double> dc_operating_point( const Netlist& n, const DeviceModelParams& p,
                                                  const std::map<std::string, double>& inputs, const SimConfig& cfg )
{
  p.check();
  require_valid( n );
  const Circuit c( n, p );
  const auto v = solve_dc( c, n, resolve_inputs( c, n, inputs ), cfg );
  std::map<std::string, double> out;
  for ( std::size_t i = 0; i < c.total(); ++i )
  {
    out.emplace( c.names[i], v[i] );
  }
  return out;
}

SimResult simulate( const Netlist& n, const DeviceModelParams& p, const std::vector<Stimulus>& stimuli,
                    const SimConfig& cfg, const std::vector<std::string>& probes )
{
  p.check();
  cfg.check();
  require_valid( n );
  const Circuit c( n, p );

  const auto input_ports = n.inputs();
  std::vector<std::pair<int, const Stimulus*>> drive;
  for ( const auto& port : input_ports )
  {
    const Stimulus* found = nullptr;
    for ( const auto& s : stimuli )
    {
      if ( s.node() == port )
      {
        if ( found )
        {
          throw ContractError( "input port '" + port + "' has more than one stimulus" );
        }
        found = &s;
      }
    }
    if ( !found )
    {
      throw ContractError( "input port '" + port + "' has no stimulus" );
    }
    found->check( p.vdd );
    drive.emplace_back( c.index( port ), found );
  }
  for ( const auto& s : stimuli )
  {
    if ( std::find( input_ports.begin(), input_ports.end(), s.node() ) == input_ports.end() )
    {
      throw ContractError( "stimulus targets '" + s.node() + "', which is not an input port" );
    }
  }

  const auto steps = static_cast<std::size_t>( std::llround( cfg.t_stop / cfg.t_step ) );
  const double h = cfg.t_step;

  Inputs inputs;
  for ( const auto& [i, s] : drive )
  {
    inputs.emplace_back( i, s->value_at( 0.0 ) );
  }
  std::vector<double> v = solve_dc( c, n, inputs, cfg );

  std::vector<int> probe_index;
  SimResult result;
  const auto add_probe = [&]( const std::string& node ) {
    probe_index.push_back( c.index( node ) );
    auto& w = result.nodes[node];
    w.name = node;
    w.t0 = 0.0;
    w.dt = h;
    w.samples.reserve( steps + 1 );
  };
  if ( probes.empty() )
  {
    for ( const auto& node : n.nodes )
    {
      add_probe( node );
    }
  }
  else
  {
    for ( const auto& node : probes )
    {
      if ( !n.has_node( node ) )
      {
        throw ContractError( "probe '" + node + "' is not a node of '" + n.name + "'" );
      }
      add_probe( node );
    }
  }
  std::vector<Waveform*> probe_wave;
  for ( int i : probe_index )
  {
    probe_wave.push_back( &result.nodes.at( c.names[static_cast<std::size_t>( i )] ) );
  }
  result.i_vdd = Waveform{ "i_vdd", 0.0, h, {} };
  result.i_vdd.samples.reserve( steps + 1 );

  const bool trapezoidal = cfg.method == IntegrationMethod::Trapezoidal;

  const auto record = [&]( double extra_supply ) {
    for ( std::size_t k = 0; k < probe_index.size(); ++k )
    {
      probe_wave[k]->samples.push_back( v[static_cast<std::size_t>( probe_index[k] )] );
    }
    result.i_vdd.samples.push_back( c.supply_current( v ) + extra_supply );
  };
  record( 0.0 );

  Stepper stepper( c, trapezoidal, cfg );
  std::vector<double> target_inputs( drive.size() );
  std::vector<double> start_inputs( drive.size() );
  std::vector<double> start( v );
  for ( std::size_t step = 1; step <= steps; ++step )
  {
    const double t = h * static_cast<double>( step );
    for ( std::size_t k = 0; k < drive.size(); ++k )
    {
      target_inputs[k] = drive[k].second->value_at( t );
    }
    // A step that fails to converge is retried as 2, 4, ... equal sub-steps
    // with linearly interpolated inputs; the output grid stays uniform.
    int depth = 0;
    for ( ;; ++depth )
    {
      const auto snapshot = stepper.checkpoint( v );
      const int pieces = 1 << depth;
      bool ok = true;
      for ( std::size_t k = 0; k < drive.size(); ++k )
      {
        start_inputs[k] = v[static_cast<std::size_t>( drive[k].first )];
      }
      for ( int piece = 1; piece <= pieces && ok; ++piece )
      {
        start = v;
        const double frac = static_cast<double>( piece ) / pieces;
        for ( std::size_t k = 0; k < drive.size(); ++k )
        {
          v[static_cast<std::size_t>( drive[k].first )] =
              start_inputs[k] + frac * ( target_inputs[k] - start_inputs[k] );
        }
        ok = stepper.advance( start, v, h / pieces, result.newton_iterations );
      }
      if ( ok )
      {
        break;
      }
      stepper.restore( snapshot, v );
      if ( depth == max_substep_depth )
      {
        const int worst = stepper.worst_node();
        throw ConvergenceError( fmt::format( "transient Newton did not converge at t = {:.6g} s (node '{}')", t,
                                             c.names[static_cast<std::size_t>( worst )] ),
                                t, c.names[static_cast<std::size_t>( worst )], stepper.worst_residual() );
      }
    }
    for ( int i = 0; i < c.unknowns; ++i )
    {
      if ( !std::isfinite( v[static_cast<std::size_t>( i )] ) )
      {
        throw NumericalError( fmt::format( "non-finite node voltage at t = {:.6g} s", t ) );
      }
    }
    const double cap_supply = stepper.cap_supply();
    record( cap_supply );
  }
  return result;
}

} // namespace noisegate
