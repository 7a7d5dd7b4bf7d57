#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lebounds/bitmatrix.hpp"
#include "lebounds/graph.hpp"
#include "lebounds/pauli.hpp"

namespace lebounds::stab {

/// N commuting independent stabilizers, one per column of a 2N x N bit
/// matrix whose top block holds Z components and bottom block X components.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;
  StabilizerTableau(size_t n_qubits, gf2::BitMatrix a);
  static StabilizerTableau from_paulis(const std::vector<PauliString>& generators);

  size_t n_qubits() const { return n_; }
  const gf2::BitMatrix& a() const { return a_; }
  PauliString column(size_t j) const;

  bool operator==(const StabilizerTableau& o) const = default;

 private:
  size_t n_ = 0;
  gf2::BitMatrix a_;
};

/// True iff the columns are independent (rank N) and mutually commuting.
bool check_valid(const StabilizerTableau& t);

StabilizerTableau apply_local_clifford(const StabilizerTableau& t, const LocalCliffordLayer& u);

/// Right-multiplies the tableau by an invertible recombination matrix.
StabilizerTableau recombine(const StabilizerTableau& t, const gf2::BitMatrix& r);

/// Tableau [adjacency; I] of the graph state.
StabilizerTableau graph_to_tableau(const graph::Graph& g);

/// True iff the two tableaus span the same stabilizer group over GF(2).
bool tableau_equivalent(const StabilizerTableau& t1, const StabilizerTableau& t2);

/// How stab_to_graph picks the control rows of the echelonized X block.
struct ControlSelection {
  enum class Kind { Greedy, Seeded, Explicit, ForcedPair };
  Kind kind = Kind::Greedy;
  uint64_t seed = 0;
  std::vector<size_t> controls;       // Explicit: exact control set
  size_t pair_a = 0, pair_b = 0;      // ForcedPair: control a linked to target b

  static ControlSelection greedy() { return {}; }
  static ControlSelection seeded(uint64_t seed);
  static ControlSelection explicit_set(std::vector<size_t> controls);
  static ControlSelection forced_pair(size_t a, size_t b);
};

struct GraphConversionResult {
  gf2::BitMatrix gamma;               // adjacency matrix of the graph state
  std::vector<size_t> controls;       // untouched qubits (sorted)
  std::vector<size_t> targets;        // Hadamard qubits (sorted)
  LocalCliffordLayer unitary;         // maps the input state to the graph state
  gf2::BitMatrix recombination;       // generator recombination R
};

/// Converts a valid tableau to graph form: applying `unitary` to t and
/// right-multiplying by `recombination` yields [gamma; I] exactly.
GraphConversionResult stab_to_graph(const StabilizerTableau& t,
                                    const ControlSelection& sel = ControlSelection::greedy());

}  // namespace lebounds::stab
