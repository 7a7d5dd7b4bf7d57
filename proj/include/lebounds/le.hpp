#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lebounds/color_code.hpp"
#include "lebounds/graph.hpp"
#include "lebounds/noise.hpp"
#include "lebounds/pauli.hpp"
#include "lebounds/tableau.hpp"

namespace lebounds::le {

/// Two-qubit density matrix; the constructor checks Hermiticity, unit trace,
/// and positive semidefiniteness to 1e-10.
class TwoQubitState {
 public:
  explicit TwoQubitState(const Eigen::Matrix4cd& rho);
  const Eigen::Matrix4cd& matrix() const { return rho_; }

 private:
  Eigen::Matrix4cd rho_;
};

/// Twice the absolute sum of the negative partial-transpose eigenvalues,
/// with eigenvalues below 1e-12 in magnitude treated as zero.
double negativity(const TwoQubitState& s);

/// Witness lower bound (1/2)(w_x + w_z + w_xz - 1) where each w is the
/// noisy expectation of S^x, S^z, and their product.
double wlb(const codes::WitnessConstruction& w, const noise::NoiseModel& m);

/// Left side: direct dense Tr(W rho) for the two-qubit witness under noise.
/// Right side: the same value assembled from measurement outcomes on every
/// qubit outside the pair, each measured in the basis its witness operator
/// fixes. Both are exact; callers assert their agreement.
std::pair<double, double> witness_decomposition_check(const codes::WitnessConstruction& w,
                                                      const stab::StabilizerTableau& t,
                                                      const noise::NoiseModel& m);

struct MlbResult {
  double value = 0.0;
  std::vector<stab::Axis> setting;  // X/Y/Z per measured qubit, I at the pair
  size_t n = 0;                     // relevant neighborhood size
  size_t n_lc = 0;                  // local complementations used
  std::vector<size_t> path;
  std::vector<size_t> controls;
  uint64_t seed = 0;
  size_t n_min = 0;                 // smallest neighborhood over samples
  double n_lc_mean = 0.0;           // mean complementations over samples
};

/// Exact average pair negativity over all noise patterns and measurement
/// outcomes, by dense statevector enumeration. Limited to 14 qubits.
double mlb_dense(const stab::StabilizerTableau& t, size_t a, size_t b,
                 const noise::NoiseModel& m, const std::vector<stab::Axis>& setting);

/// Neighbors of the pair whose noise has a nonzero X or Y component.
std::vector<size_t> relevant_neighborhood(const graph::Graph& g, size_t a, size_t b,
                                          const noise::NoiseModel& m);

/// Exact average pair negativity for Z measurements on a graph state with
/// link (a, b), reduced to a four-element distribution convolution over the
/// pair and its relevant neighborhood.
MlbResult mlb_neighborhood(const graph::Graph& g, size_t a, size_t b,
                           const noise::NoiseModel& m);

enum class MlbStrategy { Alc, DirectLink };

MlbStrategy mlb_strategy_from_name(const std::string& name);
std::string mlb_strategy_name(MlbStrategy strategy);

/// Best measurement-based bound over n_samples sampled configurations:
/// Alc converts once with the given control selection and samples paths for
/// adaptive local complementation (sample 0 uses the shortest path);
/// DirectLink resamples forced-pair conversions that contain the link
/// outright, ignoring the selection. Deterministic per seed.
MlbResult mlb_optimize(const stab::StabilizerTableau& t, size_t a, size_t b,
                       const noise::NoiseModel& m, MlbStrategy strategy, size_t n_samples,
                       uint64_t seed,
                       const stab::ControlSelection& sel = stab::ControlSelection::greedy());

/// Maximum of mlb_dense over all 3^(N-2) Pauli settings. Limited to 9 qubits.
double rle_exhaustive(const stab::StabilizerTableau& t, size_t a, size_t b,
                      const noise::NoiseModel& m);

}  // namespace lebounds::le
