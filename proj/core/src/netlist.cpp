#include "noisegate/netlist.hpp"

#include "noisegate/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace noisegate
{

std::string_view to_string( DeviceKind kind )
{
  switch ( kind )
  {
  case DeviceKind::NMOS: return "NMOS";
  case DeviceKind::PMOS: return "PMOS";
  case DeviceKind::Capacitor: return "Capacitor";
  case DeviceKind::VoltageSource: return "VoltageSource";
  }
  return "?";
}

std::string_view to_string( PortRole role )
{
  switch ( role )
  {
  case PortRole::Input: return "input";
  case PortRole::Output: return "output";
  case PortRole::OutputComplement: return "output_complement";
  case PortRole::Supply: return "supply";
  }
  return "?";
}

std::string_view to_string( DiagnosticKind kind )
{
  switch ( kind )
  {
  case DiagnosticKind::DanglingReference: return "dangling-reference";
  case DiagnosticKind::TerminalCount: return "terminal-count";
  case DiagnosticKind::NonPositiveStrength: return "non-positive-strength";
  case DiagnosticKind::FloatingGate: return "floating-gate";
  case DiagnosticKind::UnreachableNode: return "unreachable-node";
  case DiagnosticKind::DrivenInput: return "driven-input";
  case DiagnosticKind::PortCount: return "port-count";
  case DiagnosticKind::DuplicateName: return "duplicate-name";
  }
  return "?";
}

bool Netlist::has_node( std::string_view node ) const
{
  return std::find( nodes.begin(), nodes.end(), node ) != nodes.end();
}

std::vector<std::string> Netlist::ports_with_role( PortRole role ) const
{
  std::vector<std::string> out;
  for ( const auto& p : ports )
  {
    if ( p.role == role )
    {
      out.push_back( p.node );
    }
  }
  return out;
}

std::string Netlist::output() const
{
  const auto outs = ports_with_role( PortRole::Output );
  if ( outs.size() != 1 )
  {
    throw ContractError( "netlist '" + name + "' has " + std::to_string( outs.size() ) + " output ports" );
  }
  return outs.front();
}

std::optional<std::string> Netlist::output_complement() const
{
  const auto outs = ports_with_role( PortRole::OutputComplement );
  if ( outs.empty() )
  {
    return std::nullopt;
  }
  return outs.front();
}

const Device* Netlist::find_device( std::string_view id ) const
{
  const auto it = std::find_if( devices.begin(), devices.end(), [id]( const Device& d ) { return d.id == id; } );
  return it == devices.end() ? nullptr : &*it;
}

std::size_t transistor_count( const Netlist& n )
{
  return static_cast<std::size_t>(
      std::count_if( n.devices.begin(), n.devices.end(), []( const Device& d ) { return d.is_mosfet(); } ) );
}

std::vector<Diagnostic> validate( const Netlist& n )
{
  std::vector<Diagnostic> diags;
  const auto report = [&diags]( DiagnosticKind kind, std::string subject, std::string message ) {
    diags.push_back( { kind, std::move( subject ), std::move( message ) } );
  };

  const std::set<std::string> declared( n.nodes.begin(), n.nodes.end() );
  if ( declared.size() != n.nodes.size() )
  {
    report( DiagnosticKind::DuplicateName, n.name, "node declared more than once" );
  }
  {
    std::set<std::string> ids;
    for ( const auto& d : n.devices )
    {
      if ( !ids.insert( d.id ).second )
      {
        report( DiagnosticKind::DuplicateName, d.id, "device id used more than once" );
      }
    }
  }

  std::map<std::string, PortRole> port_roles;
  for ( const auto& p : n.ports )
  {
    if ( !declared.contains( p.node ) )
    {
      report( DiagnosticKind::DanglingReference, p.node, "port references undeclared node" );
    }
    port_roles.emplace( p.node, p.role );
  }
  const auto output_count = n.ports_with_role( PortRole::Output ).size();
  if ( output_count != 1 )
  {
    report( DiagnosticKind::PortCount, n.name, fmt::format( "expected exactly one output port, found {}", output_count ) );
  }
  const auto complement_count = n.ports_with_role( PortRole::OutputComplement ).size();
  if ( complement_count > 1 )
  {
    report( DiagnosticKind::PortCount, n.name,
            fmt::format( "expected at most one output_complement port, found {}", complement_count ) );
  }

  // nodes driven by something other than a MOSFET gate
  std::set<std::string> driven;
  for ( const auto& [node, role] : port_roles )
  {
    if ( role != PortRole::Output && role != PortRole::OutputComplement )
    {
      driven.insert( node );
    }
  }
  driven.insert( std::string( vdd_node ) );
  driven.insert( std::string( gnd_node ) );

  for ( const auto& d : n.devices )
  {
    const std::size_t expected = d.is_mosfet() ? 3u : 2u;
    if ( d.terminals.size() != expected )
    {
      report( DiagnosticKind::TerminalCount, d.id,
              fmt::format( "{} needs {} terminals, has {}", to_string( d.kind ), expected, d.terminals.size() ) );
      continue;
    }
    for ( const auto& t : d.terminals )
    {
      if ( !declared.contains( t ) )
      {
        report( DiagnosticKind::DanglingReference, d.id, "terminal references undeclared node '" + t + "'" );
      }
    }
    if ( d.is_mosfet() && !( d.strength > 0.0 ) )
    {
      report( DiagnosticKind::NonPositiveStrength, d.id, "MOSFET strength must be positive" );
    }
    if ( d.is_mosfet() )
    {
      driven.insert( d.drain() );
      driven.insert( d.source() );
    }
    else if ( d.kind == DeviceKind::VoltageSource )
    {
      driven.insert( d.terminals.begin(), d.terminals.end() );
    }

    const auto touches_input = [&]( const std::string& node ) {
      const auto it = port_roles.find( node );
      return it != port_roles.end() && it->second == PortRole::Input;
    };
    const bool channel_on_input = d.is_mosfet() ? ( touches_input( d.drain() ) || touches_input( d.source() ) )
                                                : std::any_of( d.terminals.begin(), d.terminals.end(), touches_input );
    if ( channel_on_input )
    {
      report( DiagnosticKind::DrivenInput, d.id, "input port must be driven only by its external stimulus" );
    }
  }

  std::set<std::string> floating_reported;
  for ( const auto& d : n.devices )
  {
    if ( !d.is_mosfet() || d.terminals.size() != 3 )
    {
      continue;
    }
    const auto& g = d.gate();
    if ( declared.contains( g ) && !driven.contains( g ) && floating_reported.insert( g ).second )
    {
      report( DiagnosticKind::FloatingGate, g, "gate node '" + g + "' has no driver" );
    }
  }

  // reachability from ports and supplies through device terminals
  std::map<std::string, std::vector<std::string>> adjacency;
  for ( const auto& d : n.devices )
  {
    for ( const auto& a : d.terminals )
    {
      for ( const auto& b : d.terminals )
      {
        if ( a != b )
        {
          adjacency[a].push_back( b );
        }
      }
    }
  }
  std::set<std::string> seen;
  std::vector<std::string> stack;
  for ( const auto& p : n.ports )
  {
    stack.push_back( p.node );
  }
  stack.emplace_back( vdd_node );
  stack.emplace_back( gnd_node );
  while ( !stack.empty() )
  {
    auto node = std::move( stack.back() );
    stack.pop_back();
    if ( !seen.insert( node ).second )
    {
      continue;
    }
    for ( const auto& next : adjacency[node] )
    {
      stack.push_back( next );
    }
  }
  for ( const auto& node : n.nodes )
  {
    if ( !seen.contains( node ) )
    {
      report( DiagnosticKind::UnreachableNode, node, "node '" + node + "' is not connected to any port or supply" );
    }
  }
  return diags;
}

std::string serialize( const Netlist& n )
{
  std::string out = fmt::format( "* netlist {}\n.nodes", n.name );
  for ( const auto& node : n.nodes )
  {
    out += ' ';
    out += node;
  }
  out += "\n.ports";
  for ( const auto& p : n.ports )
  {
    out += fmt::format( " {}={}", p.node, to_string( p.role ) );
  }
  out += '\n';
  for ( const auto& d : n.devices )
  {
    switch ( d.kind )
    {
    case DeviceKind::NMOS:
    case DeviceKind::PMOS:
      out += fmt::format( "M{} {} {} {} {} strength={}\n", d.id, d.drain(), d.gate(), d.source(), to_string( d.kind ),
                          d.strength );
      break;
    case DeviceKind::Capacitor:
      out += fmt::format( "C{} {} {} {}\n", d.id, d.terminals.at( 0 ), d.terminals.at( 1 ), d.value );
      break;
    case DeviceKind::VoltageSource:
      out += fmt::format( "V{} {} {} {} {}\n", d.id, d.terminals.at( 0 ), d.terminals.at( 1 ), d.value,
                          d.source_ref.empty() ? "dc" : d.source_ref );
      break;
    }
  }
  out += ".end\n";
  return out;
}

namespace
{

std::vector<std::string> split_ws( const std::string& line )
{
  std::istringstream in( line );
  std::vector<std::string> tokens;
  for ( std::string t; in >> t; )
  {
    tokens.push_back( t );
  }
  return tokens;
}

PortRole parse_role( const std::string& s )
{
  for ( auto role : { PortRole::Input, PortRole::Output, PortRole::OutputComplement, PortRole::Supply } )
  {
    if ( s == to_string( role ) )
    {
      return role;
    }
  }
  throw ContractError( "unknown port role '" + s + "'" );
}

double parse_number( const std::string& s )
{
  try
  {
    std::size_t used = 0;
    const double v = std::stod( s, &used );
    if ( used == s.size() )
    {
      return v;
    }
  }
  catch ( const std::exception& )
  {
  }
  throw ContractError( "malformed number '" + s + "'" );
}

} // namespace

Netlist parse_netlist( std::string_view text )
{
  Netlist n;
  std::istringstream in{ std::string( text ) };
  std::size_t line_no = 0;
  for ( std::string line; std::getline( in, line ); )
  {
    ++line_no;
    const auto tok = split_ws( line );
    if ( tok.empty() )
    {
      continue;
    }
    const auto fail = [&]( const std::string& why ) {
      return ContractError( fmt::format( "netlist line {}: {}", line_no, why ) );
    };
    const auto& head = tok.front();
    if ( head == "*" )
    {
      if ( tok.size() >= 3 && tok[1] == "netlist" )
      {
        n.name = tok[2];
      }
    }
    else if ( head == ".nodes" )
    {
      n.nodes.insert( n.nodes.end(), tok.begin() + 1, tok.end() );
    }
    else if ( head == ".ports" )
    {
      for ( auto it = tok.begin() + 1; it != tok.end(); ++it )
      {
        const auto eq = it->find( '=' );
        if ( eq == std::string::npos )
        {
          throw fail( "port entry needs node=role" );
        }
        n.ports.push_back( { it->substr( 0, eq ), parse_role( it->substr( eq + 1 ) ) } );
      }
    }
    else if ( head == ".end" )
    {
      break;
    }
    else if ( head[0] == 'M' )
    {
      if ( tok.size() != 6 || tok[5].rfind( "strength=", 0 ) != 0 )
      {
        throw fail( "MOSFET line needs: M<id> drain gate source NMOS|PMOS strength=<x>" );
      }
      Device d;
      d.id = head.substr( 1 );
      if ( tok[4] == "NMOS" )
      {
        d.kind = DeviceKind::NMOS;
      }
      else if ( tok[4] == "PMOS" )
      {
        d.kind = DeviceKind::PMOS;
      }
      else
      {
        throw fail( "unknown MOSFET type '" + tok[4] + "'" );
      }
      d.terminals = { tok[1], tok[2], tok[3] };
      d.strength = parse_number( tok[5].substr( 9 ) );
      n.devices.push_back( std::move( d ) );
    }
    else if ( head[0] == 'C' )
    {
      if ( tok.size() != 4 )
      {
        throw fail( "capacitor line needs: C<id> n1 n2 farads" );
      }
      Device d;
      d.id = head.substr( 1 );
      d.kind = DeviceKind::Capacitor;
      d.terminals = { tok[1], tok[2] };
      d.value = parse_number( tok[3] );
      n.devices.push_back( std::move( d ) );
    }
    else if ( head[0] == 'V' )
    {
      if ( tok.size() != 5 )
      {
        throw fail( "source line needs: V<id> n+ n- volts ref" );
      }
      Device d;
      d.id = head.substr( 1 );
      d.kind = DeviceKind::VoltageSource;
      d.terminals = { tok[1], tok[2] };
      d.value = parse_number( tok[3] );
      d.source_ref = tok[4];
      n.devices.push_back( std::move( d ) );
    }
    else
    {
      throw fail( "unrecognized line '" + line + "'" );
    }
  }
  return n;
}

} // namespace noisegate
