#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lebounds/pauli.hpp"

namespace lebounds::noise {

enum class ChannelKind { BitFlip, PhaseFlip, BitPhaseFlip, Depolarizing };

std::string channel_kind_name(ChannelKind kind);
ChannelKind channel_kind_from_name(const std::string& name);

/// Uncorrelated single-qubit Pauli noise: one probability vector
/// (q0, q1, q2, q3) per qubit for applying (I, X, Y, Z).
class NoiseModel {
 public:
  NoiseModel() = default;
  explicit NoiseModel(std::vector<std::array<double, 4>> per_qubit);

  size_t n_qubits() const { return q_.size(); }
  const std::array<double, 4>& at(size_t i) const { return q_[i]; }
  const std::vector<std::array<double, 4>>& per_qubit() const { return q_; }

 private:
  std::vector<std::array<double, 4>> q_;
};

/// Uniform n-qubit channel of the given kind and strength q in [0, 1]:
/// BitFlip (1-q/2, q/2, 0, 0), PhaseFlip (1-q/2, 0, 0, q/2),
/// BitPhaseFlip (1-q/2, 0, q/2, 0), Depolarizing (1-3q/4, q/4, q/4, q/4).
NoiseModel standard_channel(ChannelKind kind, double q, size_t n);

/// Same noise seen after conjugating the state by the layer u: each qubit's
/// (q1, q2, q3) entries are permuted by the axis action of u, q0 is fixed.
NoiseModel transform_noise(const NoiseModel& m, const stab::LocalCliffordLayer& u);

/// Expectation of the stabilizer s after the channel acts on a +1 eigenstate
/// of s: the product over the support of per-qubit factors
/// sum_alpha q_alpha * (+1 if sigma_alpha commutes with s_i, else -1).
double stabilizer_expectation(const stab::PauliString& s, const NoiseModel& m);

}  // namespace lebounds::noise
