#include "noisegate/energy.hpp"

#include "noisegate/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace noisegate
{

std::string State::to_string() const
{
  std::string s;
  for ( unsigned i = 0; i < arity; ++i )
  {
    s.push_back( var( i ) ? '1' : '0' );
  }
  return s;
}

bool MintermSet::contains( State s ) const
{
  return s.arity == arity && std::binary_search( terms.begin(), terms.end(), s );
}

MintermSet valid_minterms( const TruthTable& tt )
{
  MintermSet set{ tt.arity() + 1u, {} };
  set.terms.reserve( tt.rows() );
  for ( std::uint32_t row = 0; row < tt.rows(); ++row )
  {
    set.terms.push_back( State{ ( row << 1u ) | ( tt( row ) ? 1u : 0u ), set.arity } );
  }
  return set;
}

std::vector<Cube> prime_implicants( const TruthTable& tt, bool polarity )
{
  const std::uint32_t full = ( 1u << tt.arity() ) - 1u;
  std::set<Cube> current;
  for ( std::uint32_t row = 0; row < tt.rows(); ++row )
  {
    if ( tt( row ) == polarity )
    {
      current.insert( Cube{ full, row } );
    }
  }

  std::set<Cube> primes;
  while ( !current.empty() )
  {
    std::set<Cube> next;
    std::set<Cube> merged;
    for ( auto a = current.begin(); a != current.end(); ++a )
    {
      for ( auto b = std::next( a ); b != current.end(); ++b )
      {
        if ( a->care != b->care )
        {
          continue;
        }
        const std::uint32_t diff = a->value ^ b->value;
        if ( diff != 0u && ( diff & ( diff - 1u ) ) == 0u )
        {
          next.insert( Cube{ a->care & ~diff, a->value & ~diff } );
          merged.insert( *a );
          merged.insert( *b );
        }
      }
    }
    for ( const auto& c : current )
    {
      if ( !merged.contains( c ) )
      {
        primes.insert( c );
      }
    }
    current = std::move( next );
  }
  return { primes.begin(), primes.end() };
}

std::string format_cover( const std::vector<Cube>& cover, unsigned inputs )
{
  if ( cover.empty() )
  {
    return "0";
  }
  std::string out = "(";
  for ( std::size_t i = 0; i < cover.size(); ++i )
  {
    if ( i != 0 )
    {
      out += " + ";
    }
    std::string term;
    for ( unsigned v = 0; v < inputs; ++v )
    {
      const std::uint32_t bit = 1u << ( inputs - 1u - v );
      if ( cover[i].care & bit )
      {
        if ( !term.empty() )
        {
          term += "·";
        }
        term += ( cover[i].value & bit ) ? "" : "~";
        term += "x" + std::to_string( v );
      }
    }
    out += term.empty() ? "1" : term;
  }
  return out + ")";
}

EnergyFunction::EnergyFunction( EnergyForm form, TruthTable tt )
    : form_( form ), tt_( std::move( tt ) )
{
  switch ( form_ )
  {
  case EnergyForm::SumOfMinterms:
    minterms_ = valid_minterms( tt_ );
    break;
  case EnergyForm::Factored:
    on_cover_ = prime_implicants( tt_, true );
    off_cover_ = prime_implicants( tt_, false );
    break;
  case EnergyForm::GeneralForm:
    break;
  }
}

EnergyFunction EnergyFunction::sum_of_minterms( const TruthTable& tt ) { return { EnergyForm::SumOfMinterms, tt }; }
EnergyFunction EnergyFunction::factored( const TruthTable& tt ) { return { EnergyForm::Factored, tt }; }
EnergyFunction EnergyFunction::general_form( const TruthTable& tt ) { return { EnergyForm::GeneralForm, tt }; }

int EnergyFunction::evaluate( State state ) const
{
  if ( state.arity != arity() || state.bits >= ( 1u << arity() ) )
  {
    throw ContractError( "energy state has " + std::to_string( state.arity ) + " variables, expected " +
                         std::to_string( arity() ) );
  }
  const std::uint32_t row = state.input_row();
  const bool out = state.output();
  switch ( form_ )
  {
  case EnergyForm::SumOfMinterms:
    return minterms_.contains( state ) ? -1 : 0;
  case EnergyForm::Factored:
  {
    const auto any_covers = [row]( const std::vector<Cube>& cover ) {
      return std::any_of( cover.begin(), cover.end(), [row]( const Cube& c ) { return c.covers( row ); } );
    };
    const bool on = any_covers( on_cover_ );
    const bool off = any_covers( off_cover_ );
    return -( ( ( on && out ) || ( off && !out ) ) ? 1 : 0 );
  }
  case EnergyForm::GeneralForm:
  {
    const bool c = tt_( row );
    return -( ( c && out ) || ( !c && !out ) ? 1 : 0 );
  }
  }
  return 0;
}

std::string EnergyFunction::expression() const
{
  const unsigned k = tt_.arity();
  const std::string out = "x" + std::to_string( k );
  switch ( form_ )
  {
  case EnergyForm::SumOfMinterms:
  {
    std::string s = "-(";
    for ( std::size_t i = 0; i < minterms_.terms.size(); ++i )
    {
      if ( i != 0 )
      {
        s += " + ";
      }
      const State t = minterms_.terms[i];
      for ( unsigned v = 0; v < t.arity; ++v )
      {
        s += t.var( v ) ? "" : "~";
        s += "x" + std::to_string( v );
        if ( v + 1 != t.arity )
        {
          s += "·";
        }
      }
    }
    return s + ")";
  }
  case EnergyForm::Factored:
    return "-(" + format_cover( on_cover_, k ) + "·" + out + " + " + format_cover( off_cover_, k ) + "·~" + out + ")";
  case EnergyForm::GeneralForm:
    return "-(C(x)·" + out + " + ~C(x)·~" + out + "), C = " + tt_.bits();
  }
  return {};
}

bool check_equivalence( const TruthTable& tt )
{
  const auto a = EnergyFunction::sum_of_minterms( tt );
  const auto b = EnergyFunction::factored( tt );
  const auto c = EnergyFunction::general_form( tt );
  const unsigned arity = tt.arity() + 1u;
  for ( std::uint32_t bits = 0; bits < ( 1u << arity ); ++bits )
  {
    const State s{ bits, arity };
    const int ua = a.evaluate( s );
    if ( ua != b.evaluate( s ) || ua != c.evaluate( s ) )
    {
      return false;
    }
  }
  return true;
}

std::vector<double> state_distribution( const TruthTable& tt, double temperature )
{
  if ( !( temperature > 0.0 ) )
  {
    throw ContractError( "temperature must be positive" );
  }
  const auto u = EnergyFunction::general_form( tt );
  const unsigned arity = tt.arity() + 1u;
  const std::size_t n = std::size_t{ 1 } << arity;
  std::vector<double> p( n );
  // weights shifted by the minimum energy -1: valid states weigh 1, invalid exp(-1/T)
  const double invalid_weight = std::exp( -1.0 / temperature );
  double z = 0.0;
  for ( std::uint32_t bits = 0; bits < n; ++bits )
  {
    p[bits] = u.evaluate( State{ bits, arity } ) == -1 ? 1.0 : invalid_weight;
    z += p[bits];
  }
  for ( auto& v : p )
  {
    v /= z;
  }
  return p;
}

} // namespace noisegate
