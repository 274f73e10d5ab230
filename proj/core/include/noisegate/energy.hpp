#pragma once

#include "noisegate/truth_table.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace noisegate
{

/// Full input+output assignment. Bit layout follows the variable order
/// x0..x_{k-1}, x_out: x0 is the most significant of `arity` bits and the
/// output variable is bit 0.
struct State
{
  std::uint32_t bits = 0;
  unsigned arity = 0;

  bool var( unsigned index ) const { return ( bits >> ( arity - 1u - index ) ) & 1u; }
  bool output() const { return bits & 1u; }
  std::uint32_t input_row() const { return bits >> 1u; }
  std::string to_string() const;

  friend auto operator<=>( const State&, const State& ) = default;
};

struct MintermSet
{
  unsigned arity = 0;
  std::vector<State> terms; // ascending

  bool contains( State s ) const;
  std::size_t size() const noexcept { return terms.size(); }
};

/// Product term over the input variables. A variable is present when its
/// `care` bit is set; its required polarity is the matching `value` bit.
/// Bit layout matches TruthTable rows (x0 most significant).
struct Cube
{
  std::uint32_t care = 0;
  std::uint32_t value = 0;

  bool covers( std::uint32_t row ) const { return ( row & care ) == value; }
  friend auto operator<=>( const Cube&, const Cube& ) = default;
};

/// Prime implicants of the rows where `tt` equals `polarity`, by iterated
/// adjacency merging of minterms.
std::vector<Cube> prime_implicants( const TruthTable& tt, bool polarity );

/// Renders a cube sum such as "(~x0 + ~x1)" over `inputs` variables.
std::string format_cover( const std::vector<Cube>& cover, unsigned inputs );

enum class EnergyForm
{
  SumOfMinterms, ///< negated sum of valid-minterm indicators
  Factored,      ///< merged on-set and off-set covers gated by the output literal
  GeneralForm    ///< negated C(x)·x_out + ~C(x)·~x_out
};

/// Clique energy over the inputs and output of one gate. Takes values in {0, -1}.
class EnergyFunction
{
public:
  static EnergyFunction sum_of_minterms( const TruthTable& tt );
  static EnergyFunction factored( const TruthTable& tt );
  static EnergyFunction general_form( const TruthTable& tt );

  EnergyForm form() const noexcept { return form_; }
  /// Number of variables, inputs plus the output.
  unsigned arity() const noexcept { return tt_.arity() + 1u; }

  /// Throws ContractError when `state.arity` differs from arity().
  int evaluate( State state ) const;

  /// Human-readable expression for this form.
  std::string expression() const;

private:
  EnergyFunction( EnergyForm form, TruthTable tt );

  EnergyForm form_;
  TruthTable tt_;
  MintermSet minterms_;
  std::vector<Cube> on_cover_;
  std::vector<Cube> off_cover_;
};

/// Assignments (x, x_out) with x_out = tt(x), ascending.
MintermSet valid_minterms( const TruthTable& tt );

/// True iff all three energy forms agree on every full assignment.
bool check_equivalence( const TruthTable& tt );

/// Gibbs distribution P(s) proportional to exp(-U(s)/temperature), indexed by State::bits.
/// Throws ContractError unless temperature > 0. An infinite temperature yields the uniform distribution.
std::vector<double> state_distribution( const TruthTable& tt, double temperature = 1.0 );

} // namespace noisegate
