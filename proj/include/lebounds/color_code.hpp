#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lebounds/bitmatrix.hpp"
#include "lebounds/graph.hpp"
#include "lebounds/pauli.hpp"
#include "lebounds/tableau.hpp"

namespace lebounds::codes {

enum class FaceColor { Red, Green, Blue };

char face_color_letter(FaceColor color);
FaceColor face_color_from_letter(char letter);

struct Plaquette {
  std::vector<size_t> qubits;  // cycle order around the face
  FaceColor color = FaceColor::Red;
};

struct ColorCodeLattice {
  size_t distance = 0;
  std::vector<std::array<double, 2>> positions;  // one xy pair per qubit
  std::vector<Plaquette> plaquettes;
  graph::Graph links{0};
  std::vector<std::vector<size_t>> logical_x;  // one qubit list per logical qubit
  std::vector<std::vector<size_t>> logical_z;

  size_t n_qubits() const { return positions.size(); }
  size_t n_plaquettes() const { return plaquettes.size(); }
  size_t n_logical() const { return logical_x.size(); }

  /// Plaquette indices containing each qubit, in plaquette order.
  std::vector<std::vector<size_t>> qubit_plaquettes() const;
  /// Plaquette membership, one row per qubit, one column per plaquette.
  gf2::BitMatrix incidence() const;
};

/// Triangular 7-qubit code: three weight-4 plaquettes, one logical qubit.
ColorCodeLattice build_seven_qubit();

/// Square-hexagonal family: N = 3d^2/2 - 2(d-1) qubits, two logical qubits.
/// Requires d to be a positive multiple of 4.
ColorCodeLattice build_square_hexagonal(size_t distance);

/// Stabilizer tableau of the logical |+> state: x- and z-type plaquette
/// columns followed by one logical X column per logical qubit.
stab::StabilizerTableau logical_plus_tableau(const ColorCodeLattice& lattice);

/// Qubits at link-graph distance >= distance/4 from the boundary shell
/// (qubits on fewer than three plaquettes or on any non-hexagonal plaquette).
std::vector<size_t> bulk_qubits(const ColorCodeLattice& lattice);

struct ControlAssignment {
  std::vector<size_t> controls;  // geometric controls (Hadamard recipients)
  std::vector<size_t> targets;
  /// Row r = subset of plaquettes whose product contains exactly controls[r].
  gf2::BitMatrix recombination{0, 0};
};

struct AssignmentOptions {
  std::optional<uint64_t> seed;  // shuffled qubit order instead of corner-first
  std::optional<std::pair<size_t, size_t>> forced_pair;
  std::optional<std::vector<size_t>> explicit_controls;
};

ControlAssignment assign_controls_geometric(const ColorCodeLattice& lattice,
                                            const AssignmentOptions& options = {});

/// Control selection matching a geometric assignment, for stab_to_graph.
stab::ControlSelection to_stab_selection(const ControlAssignment& assignment);

enum class WitnessLayout { Staircase, Straight };

struct WitnessConstruction {
  size_t a = 0;
  size_t b = 0;
  size_t distance = 0;       // lattice distance between a and b
  std::vector<size_t> path;  // qubit path from a to b, distance + 1 entries
  std::vector<size_t> x_plaquettes;
  std::vector<size_t> z_plaquettes;
  stab::PauliString sx{0};
  stab::PauliString sz{0};
  size_t n_x = 0;
  size_t n_z = 0;
};

WitnessConstruction witness_plaquette_paths(const ColorCodeLattice& lattice, size_t a, size_t b,
                                            WitnessLayout layout = WitnessLayout::Staircase);

/// Smallest bulk pair (by qubit label) connected by a valid witness path of
/// lattice distance d.
std::pair<size_t, size_t> bulk_pair_at_distance(const ColorCodeLattice& lattice, size_t d,
                                                WitnessLayout layout = WitnessLayout::Staircase);

}  // namespace lebounds::codes
