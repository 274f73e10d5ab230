#pragma once

#include "noisegate/netlist.hpp"
#include "noisegate/truth_table.hpp"

#include <array>
#include <string>
#include <string_view>

namespace noisegate
{

enum class SchemeKind
{
  Conventional,
  CentMrf,
  DcvsMrf
};

inline constexpr std::array<SchemeKind, 3> all_schemes = { SchemeKind::Conventional, SchemeKind::CentMrf,
                                                           SchemeKind::DcvsMrf };

std::string_view to_string( SchemeKind scheme );
/// Accepts the canonical names plus "conventional", "cent_mrf", "dcvs_mrf", "proposed".
SchemeKind parse_scheme( std::string_view text );

/// Sizing and parasitics shared by every builder.
struct BuildOptions
{
  double nmos_unit = 1.0;
  double pmos_unit = 2.0;
  double keeper_strength = 0.25; ///< feedback-loop devices, relative to the unit device
  double dcvs_pulldown = 2.0;    ///< DCVS NMOS strength
  double dcvs_load = 3.5;        ///< DCVS cross-coupled PMOS strength; near 2x the pull-down the latch
                                 ///< errs equally often in both directions
  double node_capacitance = 1e-15;
};

/// Static CMOS realization of `tt` with inputs x0.. and output "out".
/// Supported: INV, NAND2, NOR2, AND2, OR2, XOR2, XNOR2; anything else throws UnsupportedGateError.
Netlist build_conventional( const TruthTable& tt, const BuildOptions& opt = {} );

/// C_function stage, complement inverter and 8-transistor feedback loop.
Netlist build_cent_mrf( const TruthTable& tt, const BuildOptions& opt = {} );

/// The 4-transistor differential cascode voltage switch block alone.
/// Ports: "in", "in_b" (inputs), "out" (output), "out_b" (output complement).
Netlist build_dcvs_block( const BuildOptions& opt = {} );

/// CENT_MRF with the DCVS block inserted between the complement pair and the feedback loop.
Netlist build_dcvs_mrf( const TruthTable& tt, const BuildOptions& opt = {} );

Netlist build( SchemeKind scheme, const TruthTable& tt, const BuildOptions& opt = {} );

} // namespace noisegate
