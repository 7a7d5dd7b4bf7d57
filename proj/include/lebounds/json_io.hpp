#pragma once

#include <string>

#include "lebounds/color_code.hpp"
#include "lebounds/graph.hpp"
#include "lebounds/noise.hpp"
#include "lebounds/tableau.hpp"

namespace lebounds::io {

/// All JSON payloads label qubits and nodes 1-based.

std::string lattice_to_json(const codes::ColorCodeLattice& lattice);

std::string graph_to_json(const graph::Graph& g);
graph::Graph graph_from_json(const std::string& text);

std::string tableau_to_json(const stab::StabilizerTableau& t);
stab::StabilizerTableau tableau_from_json(const std::string& text);

std::string noise_to_json(const noise::NoiseModel& m);
/// Accepts {"kind": ..., "q": ...} given n_qubits, or {"per_qubit": [...]}.
noise::NoiseModel noise_from_json(const std::string& text, size_t n_qubits);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace lebounds::io
