#include "noisegate/builders.hpp"

#include "noisegate/error.hpp"

#include <algorithm>
#include <cctype>

namespace noisegate
{

std::string_view to_string( SchemeKind scheme )
{
  switch ( scheme )
  {
  case SchemeKind::Conventional: return "Conventional";
  case SchemeKind::CentMrf: return "CentMrf";
  case SchemeKind::DcvsMrf: return "DcvsMrf";
  }
  return "?";
}

SchemeKind parse_scheme( std::string_view text )
{
  std::string key;
  for ( char c : text )
  {
    if ( c != '_' && c != '-' )
    {
      key.push_back( static_cast<char>( std::tolower( static_cast<unsigned char>( c ) ) ) );
    }
  }
  if ( key == "conventional" )
  {
    return SchemeKind::Conventional;
  }
  if ( key == "centmrf" )
  {
    return SchemeKind::CentMrf;
  }
  if ( key == "dcvsmrf" || key == "proposed" )
  {
    return SchemeKind::DcvsMrf;
  }
  throw ContractError( "unknown scheme '" + std::string( text ) + "'" );
}

namespace
{

class Writer
{
public:
  Writer( std::string name, const BuildOptions& opt ) : opt_( opt )
  {
    net_.name = std::move( name );
    net_.nodes = { std::string( vdd_node ), std::string( gnd_node ) };
    net_.ports = { { std::string( vdd_node ), PortRole::Supply }, { std::string( gnd_node ), PortRole::Supply } };
  }

  const BuildOptions& opt() const { return opt_; }

  void input( const std::string& node )
  {
    declare( node );
    net_.ports.push_back( { node, PortRole::Input } );
  }

  void port( const std::string& node, PortRole role )
  {
    declare( node );
    net_.ports.push_back( { node, role } );
  }

  void nmos( const std::string& id, const std::string& d, const std::string& g, const std::string& s, double strength )
  {
    mos( id, DeviceKind::NMOS, d, g, s, strength );
  }

  void pmos( const std::string& id, const std::string& d, const std::string& g, const std::string& s, double strength )
  {
    mos( id, DeviceKind::PMOS, d, g, s, strength );
  }

  void inverter( const std::string& prefix, const std::string& in, const std::string& out, double scale = 1.0 )
  {
    pmos( prefix + "p", out, in, std::string( vdd_node ), opt_.pmos_unit * scale );
    nmos( prefix + "n", out, in, std::string( gnd_node ), opt_.nmos_unit * scale );
  }

  /// Adds the lumped load to every declared node that is not a supply or input.
  Netlist finish()
  {
    const auto inputs = net_.inputs();
    for ( const auto& node : net_.nodes )
    {
      if ( node == vdd_node || node == gnd_node || std::find( inputs.begin(), inputs.end(), node ) != inputs.end() )
      {
        continue;
      }
      Device c;
      c.id = "load_" + node;
      c.kind = DeviceKind::Capacitor;
      c.terminals = { node, std::string( gnd_node ) };
      c.value = opt_.node_capacitance;
      net_.devices.push_back( std::move( c ) );
    }
    return std::move( net_ );
  }

private:
  void declare( const std::string& node )
  {
    if ( !net_.has_node( node ) )
    {
      net_.nodes.push_back( node );
    }
  }

  void mos( const std::string& id, DeviceKind kind, const std::string& d, const std::string& g, const std::string& s,
            double strength )
  {
    declare( d );
    declare( g );
    declare( s );
    Device dev;
    dev.id = id;
    dev.kind = kind;
    dev.terminals = { d, g, s };
    dev.strength = strength;
    net_.devices.push_back( std::move( dev ) );
  }

  BuildOptions opt_;
  Netlist net_;
};

const std::string vdd{ vdd_node };
const std::string gnd{ gnd_node };

void nand2( Writer& w, const std::string& p, const std::string& a, const std::string& b, const std::string& out )
{
  const auto& o = w.opt();
  w.pmos( p + "pa", out, a, vdd, o.pmos_unit );
  w.pmos( p + "pb", out, b, vdd, o.pmos_unit );
  w.nmos( p + "na", out, a, p + "s", 2.0 * o.nmos_unit );
  w.nmos( p + "nb", p + "s", b, gnd, 2.0 * o.nmos_unit );
}

void nor2( Writer& w, const std::string& p, const std::string& a, const std::string& b, const std::string& out )
{
  const auto& o = w.opt();
  w.pmos( p + "pa", p + "s", a, vdd, 2.0 * o.pmos_unit );
  w.pmos( p + "pb", out, b, p + "s", 2.0 * o.pmos_unit );
  w.nmos( p + "na", out, a, gnd, o.nmos_unit );
  w.nmos( p + "nb", out, b, gnd, o.nmos_unit );
}

/// Complementary XOR/XNOR network with local input inverters: 12 transistors.
void xor2( Writer& w, const std::string& p, const std::string& a, const std::string& b, const std::string& out,
           bool inverted )
{
  const auto& o = w.opt();
  const std::string ab = p + "ab";
  const std::string bb = p + "bb";
  w.inverter( p + "ia_", a, ab );
  w.inverter( p + "ib_", b, bb );
  const double sp = 2.0 * o.pmos_unit;
  const double sn = 2.0 * o.nmos_unit;
  // XOR pulls up on a·~b and ~a·b, pulls down on a·b and ~a·~b; XNOR swaps the
  // polarity of the second input in both networks.
  const std::string& b_hi = inverted ? bb : b;
  const std::string& b_lo = inverted ? b : bb;
  w.pmos( p + "pu0", p + "u0", ab, vdd, sp );
  w.pmos( p + "pu1", out, b_hi, p + "u0", sp );
  w.pmos( p + "pu2", p + "u1", a, vdd, sp );
  w.pmos( p + "pu3", out, b_lo, p + "u1", sp );
  w.nmos( p + "pd0", out, a, p + "d0", sn );
  w.nmos( p + "pd1", p + "d0", inverted ? bb : b, gnd, sn );
  w.nmos( p + "pd2", out, ab, p + "d1", sn );
  w.nmos( p + "pd3", p + "d1", inverted ? b : bb, gnd, sn );
}

std::string gate_name( const TruthTable& tt )
{
  if ( auto name = library_name_of( tt ) )
  {
    return *name;
  }
  return tt.name().empty() ? tt.bits() : tt.name();
}

std::vector<std::string> input_nodes( const TruthTable& tt )
{
  std::vector<std::string> in;
  for ( unsigned i = 0; i < tt.arity(); ++i )
  {
    in.push_back( "x" + std::to_string( i ) );
  }
  return in;
}

/// C_function stage driving `out`.
void c_function( Writer& w, const TruthTable& tt, const std::string& out )
{
  const auto name = gate_name( tt );
  const auto in = input_nodes( tt );
  for ( const auto& node : in )
  {
    w.input( node );
  }
  const std::string p = "c_";
  if ( name == "INV" )
  {
    w.inverter( p, in[0], out );
  }
  else if ( name == "NAND2" )
  {
    nand2( w, p, in[0], in[1], out );
  }
  else if ( name == "NOR2" )
  {
    nor2( w, p, in[0], in[1], out );
  }
  else if ( name == "AND2" )
  {
    nand2( w, p, in[0], in[1], p + "nand" );
    w.inverter( p + "o_", p + "nand", out );
  }
  else if ( name == "OR2" )
  {
    nor2( w, p, in[0], in[1], p + "nor" );
    w.inverter( p + "o_", p + "nor", out );
  }
  else if ( name == "XOR2" || name == "XNOR2" )
  {
    xor2( w, p, in[0], in[1], out, name == "XNOR2" );
  }
  else
  {
    throw UnsupportedGateError( name );
  }
}

/// Differential steering with cross-coupled PMOS loads; `out` follows `in`.
void dcvs_block( Writer& w, const std::string& p, const std::string& in, const std::string& in_b,
                 const std::string& out, const std::string& out_b )
{
  const auto& o = w.opt();
  w.nmos( p + "n", out_b, in, gnd, o.dcvs_pulldown );
  w.nmos( p + "nb", out, in_b, gnd, o.dcvs_pulldown );
  w.pmos( p + "p", out, out_b, vdd, o.dcvs_load );
  w.pmos( p + "pb", out_b, out, vdd, o.dcvs_load );
}

/// Weak cross-coupled keeper on the complementary pair (a, a_b) plus a weak
/// restoring pair driving (out, out_b) from it: 8 transistors.
void feedback_loop( Writer& w, const std::string& p, const std::string& a, const std::string& a_b,
                    const std::string& out, const std::string& out_b )
{
  const double weak = w.opt().keeper_strength;
  w.inverter( p + "k_", a, a_b, weak );
  w.inverter( p + "kb_", a_b, a, weak );
  w.inverter( p + "r_", a_b, out, weak );
  w.inverter( p + "rb_", a, out_b, weak );
}

} // namespace

Netlist build_conventional( const TruthTable& tt, const BuildOptions& opt )
{
  Writer w( gate_name( tt ) + "_Conventional", opt );
  c_function( w, tt, "out" );
  w.port( "out", PortRole::Output );
  return w.finish();
}

Netlist build_cent_mrf( const TruthTable& tt, const BuildOptions& opt )
{
  Writer w( gate_name( tt ) + "_CentMrf", opt );
  c_function( w, tt, "f" );
  w.inverter( "inv_", "f", "fb" );
  feedback_loop( w, "loop_", "f", "fb", "out", "outb" );
  w.port( "out", PortRole::Output );
  return w.finish();
}

Netlist build_dcvs_block( const BuildOptions& opt )
{
  Writer w( "DCVS_block", opt );
  w.input( "in" );
  w.input( "in_b" );
  dcvs_block( w, "dcvs_", "in", "in_b", "out", "out_b" );
  w.port( "out", PortRole::Output );
  w.port( "out_b", PortRole::OutputComplement );
  return w.finish();
}

Netlist build_dcvs_mrf( const TruthTable& tt, const BuildOptions& opt )
{
  Writer w( gate_name( tt ) + "_DcvsMrf", opt );
  c_function( w, tt, "f" );
  w.inverter( "inv_", "f", "fb" );
  dcvs_block( w, "dcvs_", "f", "fb", "d", "db" );
  feedback_loop( w, "loop_", "d", "db", "out", "outb" );
  w.port( "out", PortRole::Output );
  w.port( "outb", PortRole::OutputComplement );
  return w.finish();
}

Netlist build( SchemeKind scheme, const TruthTable& tt, const BuildOptions& opt )
{
  switch ( scheme )
  {
  case SchemeKind::Conventional: return build_conventional( tt, opt );
  case SchemeKind::CentMrf: return build_cent_mrf( tt, opt );
  case SchemeKind::DcvsMrf: return build_dcvs_mrf( tt, opt );
  }
  throw ContractError( "unknown scheme" );
}

} // namespace noisegate
