#include "lebounds/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace lebounds::noise {

namespace {

constexpr double kSumTolerance = 1e-12;

void check_vector(const std::array<double, 4>& v) {
  double sum = 0.0;
  for (double e : v) {
    if (!(e >= -kSumTolerance)) throw std::invalid_argument("noise probabilities must be nonnegative");
    sum += e;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument("noise probabilities must sum to 1");
}

}  // namespace

NoiseModel::NoiseModel(std::vector<std::array<double, 4>> per_qubit) : q_(std::move(per_qubit)) {
  for (const auto& v : q_) check_vector(v);
}

std::string channel_kind_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::BitFlip: return "BF";
    case ChannelKind::PhaseFlip: return "PF";
    case ChannelKind::BitPhaseFlip: return "BPF";
    case ChannelKind::Depolarizing: return "DP";
  }
  throw std::invalid_argument("unknown noise channel kind");
}

ChannelKind channel_kind_from_name(const std::string& name) {
  if (name == "BF") return ChannelKind::BitFlip;
  if (name == "PF") return ChannelKind::PhaseFlip;
  if (name == "BPF") return ChannelKind::BitPhaseFlip;
  if (name == "DP") return ChannelKind::Depolarizing;
  throw std::invalid_argument("unknown noise channel kind");
}

NoiseModel standard_channel(ChannelKind kind, double q, size_t n) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("noise strength must lie in [0, 1]");
  std::array<double, 4> v{1.0 - q / 2, 0.0, 0.0, 0.0};
  switch (kind) {
    case ChannelKind::BitFlip: v[1] = q / 2; break;
    case ChannelKind::PhaseFlip: v[3] = q / 2; break;
    case ChannelKind::BitPhaseFlip: v[2] = q / 2; break;
    case ChannelKind::Depolarizing:
      v = {1.0 - 3 * q / 4, q / 4, q / 4, q / 4};
      break;
  }
  return NoiseModel(std::vector<std::array<double, 4>>(n, v));
}

NoiseModel transform_noise(const NoiseModel& m, const stab::LocalCliffordLayer& u) {
  if (m.n_qubits() != u.n_qubits())
    throw std::invalid_argument("noise and layer qubit counts differ");
  std::vector<std::array<double, 4>> out(m.n_qubits());
  for (size_t i = 0; i < m.n_qubits(); ++i) {
    out[i] = {m.at(i)[0], 0.0, 0.0, 0.0};
    for (auto a : {stab::Axis::X, stab::Axis::Y, stab::Axis::Z}) {
      auto image = u.at(i).map_axis(a);
      out[i][static_cast<size_t>(image)] = m.at(i)[static_cast<size_t>(a)];
    }
  }
  return NoiseModel(std::move(out));
}

double stabilizer_expectation(const stab::PauliString& s, const NoiseModel& m) {
  if (s.n_qubits() != m.n_qubits())
    throw std::invalid_argument("string and noise qubit counts differ");
  double value = 1.0;
  for (size_t i = 0; i < s.n_qubits(); ++i) {
    bool z = s.z(i), x = s.x(i);
    if (!z && !x) continue;
    double f = m.at(i)[0];
    for (auto a : {stab::Axis::X, stab::Axis::Y, stab::Axis::Z}) {
      bool za, xa;
      stab::bits_from_axis(a, za, xa);
      bool anti = (z && xa) != (x && za);
      f += anti ? -m.at(i)[static_cast<size_t>(a)] : m.at(i)[static_cast<size_t>(a)];
    }
    value *= f;
  }
  return value;
}

}  // namespace lebounds::noise
