#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noisegate
{

inline constexpr std::string_view vdd_node = "VDD";
inline constexpr std::string_view gnd_node = "GND";

enum class DeviceKind
{
  NMOS,
  PMOS,
  Capacitor,
  VoltageSource
};

std::string_view to_string( DeviceKind kind );

/// One circuit element. MOSFET terminals are drain, gate, source; other
/// kinds have two terminals (positive first).
struct Device
{
  std::string id;
  DeviceKind kind = DeviceKind::NMOS;
  std::vector<std::string> terminals;
  double strength = 1.0; ///< multiple of the unit device, MOSFETs only
  double value = 0.0;    ///< farads for capacitors, volts for sources
  std::string source_ref; ///< behaviour label for sources, e.g. "supply"

  bool is_mosfet() const noexcept { return kind == DeviceKind::NMOS || kind == DeviceKind::PMOS; }
  const std::string& drain() const { return terminals.at( 0 ); }
  const std::string& gate() const { return terminals.at( 1 ); }
  const std::string& source() const { return terminals.at( 2 ); }
};

enum class PortRole
{
  Input,
  Output,
  OutputComplement,
  Supply
};

std::string_view to_string( PortRole role );

struct Port
{
  std::string node;
  PortRole role = PortRole::Input;
};

struct Netlist
{
  std::string name;
  std::vector<std::string> nodes; ///< declaration order, VDD and GND first
  std::vector<Device> devices;
  std::vector<Port> ports;

  bool has_node( std::string_view node ) const;
  std::vector<std::string> ports_with_role( PortRole role ) const;
  std::vector<std::string> inputs() const { return ports_with_role( PortRole::Input ); }
  /// The single output port node; throws ContractError when there is not exactly one.
  std::string output() const;
  std::optional<std::string> output_complement() const;
  const Device* find_device( std::string_view id ) const;
};

std::size_t transistor_count( const Netlist& n );

enum class DiagnosticKind
{
  DanglingReference,
  TerminalCount,
  NonPositiveStrength,
  FloatingGate,
  UnreachableNode,
  DrivenInput,
  PortCount,
  DuplicateName
};

std::string_view to_string( DiagnosticKind kind );

struct Diagnostic
{
  DiagnosticKind kind;
  std::string subject; ///< device id or node name
  std::string message;
};

/// Structural checks; an empty result means the netlist is simulatable.
std::vector<Diagnostic> validate( const Netlist& n );

/// Flat SPICE-like text. Line order follows declaration order, so output is deterministic.
std::string serialize( const Netlist& n );

/// Inverse of serialize(). Throws ContractError on malformed input.
Netlist parse_netlist( std::string_view text );

} // namespace noisegate
