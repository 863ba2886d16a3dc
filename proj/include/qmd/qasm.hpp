#pragma once

#include <string>

#include "qmd/circuit.hpp"

namespace qmd {

/// OpenQASM 2.0 text: gates ry, p, cp, x, h on a single register q, one gate
/// per line, angles printed with 17 significant digits so that re-parsing
/// reproduces the gate list exactly.
std::string export_qasm(const Circuit& circuit);

/// Parses text produced by export_qasm (and the plain subset of OpenQASM 2.0
/// it lives in). Throws with a line number on malformed input.
Circuit import_qasm(const std::string& text);

}  // namespace qmd
