#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noisegate
{

inline constexpr unsigned max_arity = 4u;

/// Single-output Boolean function of 1..4 inputs.
///
/// Row `i` holds the output for the input assignment whose binary expansion
/// is `i`, with input x0 as the most significant bit. `from_bits("1110")`
/// is therefore NAND2: rows 00, 01, 10 give 1 and row 11 gives 0.
class TruthTable
{
public:
  /// Throws ContractError when `arity` is outside [1, 4] or the output count is not 2^arity.
  TruthTable( unsigned arity, std::vector<bool> outputs, std::string name = {} );

  /// Parses an explicit output string such as "0110". Length must be 2, 4, 8 or 16.
  static TruthTable from_bits( std::string_view bits, std::string name = {} );

  /// Built-in library lookup: INV, NAND2, NOR2, AND2, OR2, XOR2, XNOR2 (case-insensitive).
  static std::optional<TruthTable> from_library( std::string_view name );

  /// Accepts a library name or an explicit bit string.
  static TruthTable parse( std::string_view text );

  unsigned arity() const noexcept { return arity_; }
  std::size_t rows() const noexcept { return outputs_.size(); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<bool>& outputs() const noexcept { return outputs_; }

  bool operator()( std::uint32_t row ) const { return outputs_.at( row ); }
  /// Evaluates the function on an explicit input vector, x0 first.
  bool evaluate( const std::vector<bool>& inputs ) const;

  std::string bits() const;

  friend bool operator==( const TruthTable& a, const TruthTable& b )
  {
    return a.arity_ == b.arity_ && a.outputs_ == b.outputs_;
  }

private:
  unsigned arity_;
  std::vector<bool> outputs_;
  std::string name_;
};

/// Names of the built-in gate library in declaration order.
const std::vector<std::string>& library_gate_names();

/// Returns the library name whose function equals `tt`, if any.
std::optional<std::string> library_name_of( const TruthTable& tt );

/// Every truth table with the given number of inputs, in increasing output-bit order.
std::vector<TruthTable> all_truth_tables( unsigned arity );

} // namespace noisegate
