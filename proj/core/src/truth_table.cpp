#include "noisegate/truth_table.hpp"

#include "noisegate/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace noisegate
{

namespace
{

struct LibraryGate
{
  const char* name;
  const char* bits;
};

constexpr std::array<LibraryGate, 7> library = { {
    { "INV", "10" },
    { "NAND2", "1110" },
    { "NOR2", "1000" },
    { "AND2", "0001" },
    { "OR2", "0111" },
    { "XOR2", "0110" },
    { "XNOR2", "1001" },
} };

std::string upper( std::string_view s )
{
  std::string out( s );
  std::transform( out.begin(), out.end(), out.begin(), []( unsigned char c ) { return std::toupper( c ); } );
  return out;
}

} // namespace

TruthTable::TruthTable( unsigned arity, std::vector<bool> outputs, std::string name )
    : arity_( arity ), outputs_( std::move( outputs ) ), name_( std::move( name ) )
{
  if ( arity_ < 1u || arity_ > max_arity )
  {
    throw ContractError( "truth table arity must be in [1, 4], got " + std::to_string( arity_ ) );
  }
  if ( outputs_.size() != ( std::size_t{ 1 } << arity_ ) )
  {
    throw ContractError( "truth table of arity " + std::to_string( arity_ ) + " needs " +
                         std::to_string( 1u << arity_ ) + " outputs, got " + std::to_string( outputs_.size() ) );
  }
}

TruthTable TruthTable::from_bits( std::string_view bits, std::string name )
{
  unsigned arity = 0;
  while ( ( std::size_t{ 1 } << arity ) < bits.size() )
  {
    ++arity;
  }
  if ( bits.empty() || ( std::size_t{ 1 } << arity ) != bits.size() )
  {
    throw ContractError( "truth table bit string length must be a power of two: '" + std::string( bits ) + "'" );
  }
  std::vector<bool> outputs;
  outputs.reserve( bits.size() );
  for ( char c : bits )
  {
    if ( c != '0' && c != '1' )
    {
      throw ContractError( "truth table bit string may contain only 0 and 1: '" + std::string( bits ) + "'" );
    }
    outputs.push_back( c == '1' );
  }
  if ( name.empty() )
  {
    name = std::string( bits );
  }
  return TruthTable( arity, std::move( outputs ), std::move( name ) );
}

std::optional<TruthTable> TruthTable::from_library( std::string_view name )
{
  const auto key = upper( name );
  for ( const auto& g : library )
  {
    if ( key == g.name )
    {
      return from_bits( g.bits, g.name );
    }
  }
  // common short aliases
  if ( key == "NAND" || key == "NOR" || key == "AND" || key == "OR" || key == "XOR" || key == "XNOR" )
  {
    return from_library( key + "2" );
  }
  return std::nullopt;
}

TruthTable TruthTable::parse( std::string_view text )
{
  if ( auto tt = from_library( text ) )
  {
    return *tt;
  }
  if ( !text.empty() && std::all_of( text.begin(), text.end(), []( char c ) { return c == '0' || c == '1'; } ) )
  {
    auto tt = from_bits( text );
    if ( auto name = library_name_of( tt ) )
    {
      return TruthTable( tt.arity(), tt.outputs(), *name );
    }
    return tt;
  }
  throw ContractError( "unknown gate '" + std::string( text ) + "'" );
}

bool TruthTable::evaluate( const std::vector<bool>& inputs ) const
{
  if ( inputs.size() != arity_ )
  {
    throw ContractError( "expected " + std::to_string( arity_ ) + " inputs, got " + std::to_string( inputs.size() ) );
  }
  std::uint32_t row = 0;
  for ( bool b : inputs )
  {
    row = ( row << 1u ) | ( b ? 1u : 0u );
  }
  return outputs_[row];
}

std::string TruthTable::bits() const
{
  std::string s;
  s.reserve( outputs_.size() );
  for ( bool b : outputs_ )
  {
    s.push_back( b ? '1' : '0' );
  }
  return s;
}

const std::vector<std::string>& library_gate_names()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for ( const auto& g : library )
    {
      v.emplace_back( g.name );
    }
    return v;
  }();
  return names;
}

std::optional<std::string> library_name_of( const TruthTable& tt )
{
  const auto bits = tt.bits();
  for ( const auto& g : library )
  {
    if ( bits == g.bits )
    {
      return std::string( g.name );
    }
  }
  return std::nullopt;
}

std::vector<TruthTable> all_truth_tables( unsigned arity )
{
  if ( arity < 1u || arity > 3u )
  {
    // 2^(2^4) = 65536 tables is still enumerable, but nothing needs it.
    throw ContractError( "exhaustive truth table enumeration supports arity 1..3" );
  }
  const std::size_t rows = std::size_t{ 1 } << arity;
  const std::uint32_t count = 1u << rows;
  std::vector<TruthTable> out;
  out.reserve( count );
  for ( std::uint32_t f = 0; f < count; ++f )
  {
    std::vector<bool> outputs( rows );
    for ( std::size_t r = 0; r < rows; ++r )
    {
      outputs[r] = ( f >> ( rows - 1 - r ) ) & 1u;
    }
    out.emplace_back( arity, std::move( outputs ) );
  }
  return out;
}

} // namespace noisegate
