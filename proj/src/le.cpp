#include "lebounds/le.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lebounds/rng.hpp"

namespace lebounds::le {

namespace {

using std::complex;
using Vec = Eigen::VectorXcd;

constexpr double kStateTolerance = 1e-10;
constexpr double kEigenTolerance = 1e-12;
constexpr double kTraceCut = 1e-14;
constexpr size_t kDenseLimit = 14;
constexpr size_t kExhaustiveLimit = 9;
constexpr size_t kDecompositionLimit = 12;

void check_pair(size_t n, size_t a, size_t b) {
  if (a >= n || b >= n) throw std::invalid_argument("pair index out of range");
  if (a == b) throw std::invalid_argument("pair indices must be distinct qubits");
}

size_t qubit_bit(size_t n, size_t i) { return size_t{1} << (n - 1 - i); }

complex<double> quarter_phase(int y_count) {
  switch (y_count & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

struct PauliMasks {
  size_t x = 0;
  size_t z = 0;
  int y_count = 0;
};

PauliMasks string_masks(const stab::PauliString& s) {
  PauliMasks m;
  size_t n = s.n_qubits();
  for (size_t i = 0; i < n; ++i) {
    if (s.x(i)) m.x |= qubit_bit(n, i);
    if (s.z(i)) m.z |= qubit_bit(n, i);
    if (s.x(i) && s.z(i)) ++m.y_count;
  }
  return m;
}

void apply_masks(const PauliMasks& m, const Vec& in, Vec& out) {
  complex<double> phase = quarter_phase(m.y_count);
  auto dim = static_cast<size_t>(in.size());
  for (size_t r = 0; r < dim; ++r) {
    complex<double> v = phase * in(static_cast<Eigen::Index>(r));
    if (std::popcount(static_cast<unsigned long long>(r & m.z)) & 1) v = -v;
    out(static_cast<Eigen::Index>(r ^ m.x)) = v;
  }
}

/// Unit vector fixed by every tableau column, found by projecting basis
/// states onto the joint +1 eigenspace until one survives.
Vec tableau_state(const stab::StabilizerTableau& t) {
  size_t n = t.n_qubits();
  size_t dim = size_t{1} << n;
  std::vector<PauliMasks> gens(n);
  for (size_t j = 0; j < n; ++j) gens[j] = string_masks(t.column(j));
  Vec scratch(static_cast<Eigen::Index>(dim));
  for (size_t seed = 0; seed < dim; ++seed) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(seed)) = 1.0;
    for (const auto& g : gens) {
      apply_masks(g, v, scratch);
      v = 0.5 * (v + scratch);
    }
    double norm2 = v.squaredNorm();
    if (norm2 > 1e-9) return v / std::sqrt(norm2);
  }
  throw std::logic_error("tableau does not stabilize any state");
}

void apply_single(Vec& v, size_t n, size_t i, const Eigen::Matrix2cd& u) {
  size_t bit = qubit_bit(n, i);
  auto dim = static_cast<size_t>(v.size());
  for (size_t r = 0; r < dim; ++r) {
    if (r & bit) continue;
    auto lo = static_cast<Eigen::Index>(r);
    auto hi = static_cast<Eigen::Index>(r | bit);
    complex<double> v0 = v(lo), v1 = v(hi);
    v(lo) = u(0, 0) * v0 + u(0, 1) * v1;
    v(hi) = u(1, 0) * v0 + u(1, 1) * v1;
  }
}

Eigen::Matrix2cd hadamard_dense() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Eigen::Matrix2cd hadamard_phase_dense() {
  Eigen::Matrix2cd hs;
  hs << 1, complex<double>(0, 1), 1, complex<double>(0, -1);
  return hs / std::sqrt(2.0);
}

/// Calls visit(weight, phi) for every noise pattern with nonzero weight,
/// where phi is the pattern's Pauli applied to psi.
template <typename Visit>
void for_each_pattern(const Vec& psi, size_t n, const noise::NoiseModel& m, Visit visit) {
  struct Option {
    uint8_t axis;
    double q;
  };
  std::vector<std::vector<Option>> options(n);
  for (size_t i = 0; i < n; ++i)
    for (uint8_t axis = 0; axis < 4; ++axis)
      if (m.at(i)[axis] > 0.0) options[i].push_back({axis, m.at(i)[axis]});
  std::vector<size_t> idx(n, 0);
  Vec phi(psi.size());
  while (true) {
    PauliMasks masks;
    double weight = 1.0;
    for (size_t i = 0; i < n; ++i) {
      const Option& o = options[i][idx[i]];
      weight *= o.q;
      if (o.axis == 1 || o.axis == 2) masks.x |= qubit_bit(n, i);
      if (o.axis == 2 || o.axis == 3) masks.z |= qubit_bit(n, i);
      if (o.axis == 2) ++masks.y_count;
    }
    apply_masks(masks, psi, phi);
    visit(weight, phi);
    size_t i = 0;
    while (i < n && ++idx[i] == options[i].size()) idx[i++] = 0;
    if (i == n) break;
  }
}

/// Unnormalized conditional pair states of a Z measurement on every qubit
/// outside the pair, indexed by the outcome bits in ascending qubit order.
std::vector<Eigen::Matrix4cd> z_outcome_states(const Vec& psi, size_t n, size_t a, size_t b,
                                               const noise::NoiseModel& m) {
  size_t dim = size_t{1} << n;
  size_t n_meas = n - 2;
  std::vector<uint32_t> k_of(dim), pair_of(dim);
  for (size_t r = 0; r < dim; ++r) {
    uint32_t k = 0;
    for (size_t i = 0; i < n; ++i)
      if (i != a && i != b) k = (k << 1) | static_cast<uint32_t>((r >> (n - 1 - i)) & 1u);
    uint32_t pa = (r >> (n - 1 - a)) & 1u;
    uint32_t pb = (r >> (n - 1 - b)) & 1u;
    k_of[r] = k;
    pair_of[r] = (pa << 1) | pb;
  }
  std::vector<Eigen::Matrix4cd> acc(size_t{1} << n_meas, Eigen::Matrix4cd::Zero());
  std::vector<std::array<complex<double>, 4>> grouped(acc.size());
  for_each_pattern(psi, n, m, [&](double weight, const Vec& phi) {
    for (size_t r = 0; r < dim; ++r)
      grouped[k_of[r]][pair_of[r]] = phi(static_cast<Eigen::Index>(r));
    for (size_t k = 0; k < grouped.size(); ++k) {
      const auto& u = grouped[k];
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          acc[k](p, q) += weight * u[static_cast<size_t>(p)] * std::conj(u[static_cast<size_t>(q)]);
    }
  });
  return acc;
}

double value_from_outcomes(const std::vector<Eigen::Matrix4cd>& acc) {
  double total = 0.0;
  for (const auto& block : acc) {
    double tr = block.trace().real();
    if (tr > kTraceCut) total += tr * negativity(TwoQubitState(block / tr));
  }
  return total;
}

void check_setting(size_t n, size_t a, size_t b, const std::vector<stab::Axis>& setting) {
  if (setting.size() != n)
    throw std::invalid_argument("setting and tableau qubit counts differ");
  if (setting[a] != stab::Axis::I || setting[b] != stab::Axis::I)
    throw std::invalid_argument("measurement setting must be identity on the pair");
  for (size_t i = 0; i < n; ++i)
    if (i != a && i != b && setting[i] == stab::Axis::I)
      throw std::invalid_argument("measurement setting must assign X, Y, or Z to every measured qubit");
}

/// Rotates each measured basis onto Z, transforms the noise into that frame,
/// and averages the pair negativity over Z outcomes.
double dense_value_on_state(Vec psi, size_t n, size_t a, size_t b, const noise::NoiseModel& m,
                            const std::vector<stab::Axis>& setting) {
  stab::LocalCliffordLayer rot(n);
  for (size_t i = 0; i < n; ++i) {
    if (i == a || i == b) continue;
    if (setting[i] == stab::Axis::X) {
      rot.set(i, stab::mat2::H);
      apply_single(psi, n, i, hadamard_dense());
    } else if (setting[i] == stab::Axis::Y) {
      rot.set(i, stab::mat2::HS);
      apply_single(psi, n, i, hadamard_phase_dense());
    }
  }
  noise::NoiseModel moved = noise::transform_noise(m, rot);
  return value_from_outcomes(z_outcome_states(psi, n, a, b, moved));
}

void check_witness_shape(const codes::WitnessConstruction& w) {
  size_t n = w.sx.n_qubits();
  if (w.sz.n_qubits() != n)
    throw std::invalid_argument("witness operators must act on the same qubits");
  check_pair(n, w.a, w.b);
  bool a_shared = w.sx.axis(w.a) != stab::Axis::I && w.sz.axis(w.a) != stab::Axis::I;
  bool b_shared = w.sx.axis(w.b) != stab::Axis::I && w.sz.axis(w.b) != stab::Axis::I;
  if (!a_shared || !b_shared)
    throw std::invalid_argument("witness supports must meet exactly at the endpoints");
  for (size_t i = 0; i < n; ++i) {
    if (i == w.a || i == w.b) continue;
    if (w.sx.axis(i) != stab::Axis::I && w.sz.axis(i) != stab::Axis::I)
      throw std::invalid_argument("witness supports must meet exactly at the endpoints");
  }
}

/// Bases whose image under the layer is a Z measurement everywhere outside
/// the pair.
std::vector<stab::Axis> setting_from_layer(const stab::LocalCliffordLayer& u, size_t a, size_t b) {
  std::vector<stab::Axis> s(u.n_qubits(), stab::Axis::I);
  for (size_t i = 0; i < u.n_qubits(); ++i)
    if (i != a && i != b) s[i] = u.at(i).inverse().map_axis(stab::Axis::Z);
  return s;
}

size_t sample_threads(size_t n_samples) {
  size_t cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("STABLE_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) cap = std::min<size_t>(cap, v);
  }
  return std::min(cap, n_samples);
}

template <typename Eval>
std::vector<MlbResult> run_samples(size_t n_samples, Eval eval) {
  std::vector<MlbResult> results(n_samples);
  std::vector<std::exception_ptr> errors(n_samples);
  auto run = [&](size_t s) {
    try {
      results[s] = eval(s);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };
  size_t workers = sample_threads(n_samples);
  if (workers <= 1) {
    for (size_t s = 0; s < n_samples; ++s) run(s);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t s = next.fetch_add(1); s < n_samples; s = next.fetch_add(1)) run(s);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

MlbResult reduce_samples(std::vector<MlbResult> results) {
  size_t best = 0;
  size_t n_min = results[0].n;
  double lc_sum = 0.0;
  for (size_t s = 0; s < results.size(); ++s) {
    if (results[s].value > results[best].value) best = s;
    n_min = std::min(n_min, results[s].n);
    lc_sum += static_cast<double>(results[s].n_lc);
  }
  MlbResult out = std::move(results[best]);
  out.n_min = n_min;
  out.n_lc_mean = lc_sum / static_cast<double>(results.size());
  return out;
}

}  // namespace

TwoQubitState::TwoQubitState(const Eigen::Matrix4cd& rho) : rho_(rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance)
    throw std::invalid_argument("state matrix must be Hermitian");
  if (std::abs(rho.trace() - complex<double>(1, 0)) > kStateTolerance)
    throw std::invalid_argument("state trace must be 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  if (es.eigenvalues().minCoeff() < -kStateTolerance)
    throw std::invalid_argument("state must be positive semidefinite");
}

double negativity(const TwoQubitState& s) {
  const Eigen::Matrix4cd& rho = s.matrix();
  Eigen::Matrix4cd pt;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) pt(2 * a1 + b1, 2 * a2 + b2) = rho(2 * a1 + b2, 2 * a2 + b1);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i)
    if (es.eigenvalues()(i) < -kEigenTolerance) neg -= es.eigenvalues()(i);
  return std::max(0.0, 2.0 * neg);
}

double wlb(const codes::WitnessConstruction& w, const noise::NoiseModel& m) {
  check_witness_shape(w);
  if (m.n_qubits() != w.sx.n_qubits())
    throw std::invalid_argument("witness and noise qubit counts differ");
  double wx = noise::stabilizer_expectation(w.sx, m);
  double wz = noise::stabilizer_expectation(w.sz, m);
  double wxz = noise::stabilizer_expectation(w.sx * w.sz, m);
  return 0.5 * (wx + wz + wxz - 1.0);
}

std::pair<double, double> witness_decomposition_check(const codes::WitnessConstruction& w,
                                                      const stab::StabilizerTableau& t,
                                                      const noise::NoiseModel& m) {
  check_witness_shape(w);
  size_t n = t.n_qubits();
  if (w.sx.n_qubits() != n)
    throw std::invalid_argument("witness and tableau qubit counts differ");
  if (m.n_qubits() != n) throw std::invalid_argument("witness and noise qubit counts differ");
  if (n > kDecompositionLimit)
    throw std::domain_error("decomposition check limited to 12 qubits");
  size_t a = w.a, b = w.b;

  Vec psi = tableau_state(t);
  PauliMasks mx = string_masks(w.sx);
  PauliMasks mz = string_masks(w.sz);
  Vec sx_phi(psi.size()), sz_phi(psi.size()), sxz_phi(psi.size());
  double ex = 0.0, ez = 0.0, exz = 0.0;
  for_each_pattern(psi, n, m, [&](double weight, const Vec& phi) {
    apply_masks(mx, phi, sx_phi);
    apply_masks(mz, phi, sz_phi);
    apply_masks(mx, sz_phi, sxz_phi);
    ex += weight * phi.dot(sx_phi).real();
    ez += weight * phi.dot(sz_phi).real();
    exz += weight * phi.dot(sxz_phi).real();
  });
  double lhs = 0.25 * (1.0 - ex - ez - exz);

  Vec rotated = psi;
  stab::LocalCliffordLayer rot(n);
  for (size_t i = 0; i < n; ++i) {
    if (i == a || i == b || w.sx.axis(i) == stab::Axis::I) continue;
    rot.set(i, stab::mat2::H);
    apply_single(rotated, n, i, hadamard_dense());
  }
  noise::NoiseModel moved = noise::transform_noise(m, rot);
  auto acc = z_outcome_states(rotated, n, a, b, moved);

  size_t n_meas = n - 2;
  size_t x_mask = 0, z_mask = 0, pos = 0;
  for (size_t i = 0; i < n; ++i) {
    if (i == a || i == b) continue;
    size_t bit = size_t{1} << (n_meas - 1 - pos);
    if (w.sx.axis(i) != stab::Axis::I) x_mask |= bit;
    if (w.sz.axis(i) != stab::Axis::I) z_mask |= bit;
    ++pos;
  }
  Eigen::Matrix4cd xx = Eigen::Matrix4cd::Zero(), zz = Eigen::Matrix4cd::Zero(),
                   yy = Eigen::Matrix4cd::Zero();
  xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1;
  zz.diagonal() << 1, -1, -1, 1;
  yy(0, 3) = yy(3, 0) = -1;
  yy(1, 2) = yy(2, 1) = 1;
  double rhs = 0.0;
  for (size_t k = 0; k < acc.size(); ++k) {
    double eta_x = std::popcount(static_cast<unsigned long long>(k & x_mask)) & 1 ? -1.0 : 1.0;
    double eta_z = std::popcount(static_cast<unsigned long long>(k & z_mask)) & 1 ? -1.0 : 1.0;
    Eigen::Matrix4cd wk =
        0.25 * (Eigen::Matrix4cd::Identity() - eta_x * xx - eta_z * zz + eta_x * eta_z * yy);
    rhs += (wk * acc[k]).trace().real();
  }
  return {lhs, rhs};
}

double mlb_dense(const stab::StabilizerTableau& t, size_t a, size_t b,
                 const noise::NoiseModel& m, const std::vector<stab::Axis>& setting) {
  size_t n = t.n_qubits();
  check_pair(n, a, b);
  if (m.n_qubits() != n) throw std::invalid_argument("noise and tableau qubit counts differ");
  check_setting(n, a, b, setting);
  if (n > kDenseLimit) throw std::domain_error("dense evaluation limited to 14 qubits");
  return dense_value_on_state(tableau_state(t), n, a, b, m, setting);
}

std::vector<size_t> relevant_neighborhood(const graph::Graph& g, size_t a, size_t b,
                                          const noise::NoiseModel& m) {
  size_t n = g.n();
  check_pair(n, a, b);
  if (m.n_qubits() != n) throw std::invalid_argument("graph and noise qubit counts differ");
  if (!g.has_edge(a, b)) throw std::domain_error("required link missing from the graph");
  std::vector<size_t> out;
  for (size_t i = 0; i < n; ++i) {
    if (i == a || i == b) continue;
    if (!g.has_edge(a, i) && !g.has_edge(b, i)) continue;
    if (m.at(i)[1] + m.at(i)[2] > 0.0) out.push_back(i);
  }
  return out;
}

MlbResult mlb_neighborhood(const graph::Graph& g, size_t a, size_t b,
                           const noise::NoiseModel& m) {
  std::vector<size_t> hood = relevant_neighborhood(g, a, b, m);
  size_t n = g.n();

  // Distribution of the pair displacement (z_a, z_b) accumulated over the
  // noise on the pair and its relevant neighbors, indexed (z_a << 1) | z_b.
  std::array<double, 4> dist{1.0, 0.0, 0.0, 0.0};
  auto fold = [&dist](const std::array<double, 4>& p) {
    std::array<double, 4> out{};
    for (size_t u = 0; u < 4; ++u)
      for (size_t v = 0; v < 4; ++v) out[u ^ v] += dist[u] * p[v];
    dist = out;
  };
  const auto& qa = m.at(a);
  fold({qa[0], qa[1], qa[3], qa[2]});
  const auto& qb = m.at(b);
  fold({qb[0], qb[3], qb[1], qb[2]});
  for (size_t i : hood) {
    const auto& q = m.at(i);
    double quiet = q[0] + q[3];
    double loud = q[1] + q[2];
    bool near_a = g.has_edge(a, i);
    bool near_b = g.has_edge(b, i);
    if (near_a && near_b)
      fold({quiet, 0.0, 0.0, loud});
    else if (near_a)
      fold({quiet, 0.0, loud, 0.0});
    else
      fold({quiet, loud, 0.0, 0.0});
  }

  MlbResult r;
  r.value = std::max(0.0, 2.0 * *std::max_element(dist.begin(), dist.end()) - 1.0);
  r.n = hood.size();
  r.n_min = hood.size();
  r.setting.assign(n, stab::Axis::Z);
  r.setting[a] = stab::Axis::I;
  r.setting[b] = stab::Axis::I;
  return r;
}

MlbStrategy mlb_strategy_from_name(const std::string& name) {
  if (name == "alc") return MlbStrategy::Alc;
  if (name == "direct-link") return MlbStrategy::DirectLink;
  throw std::invalid_argument("unknown optimization strategy: " + name);
}

std::string mlb_strategy_name(MlbStrategy strategy) {
  return strategy == MlbStrategy::Alc ? "alc" : "direct-link";
}

MlbResult mlb_optimize(const stab::StabilizerTableau& t, size_t a, size_t b,
                       const noise::NoiseModel& m, MlbStrategy strategy, size_t n_samples,
                       uint64_t seed, const stab::ControlSelection& sel) {
  size_t n = t.n_qubits();
  check_pair(n, a, b);
  if (m.n_qubits() != n) throw std::invalid_argument("noise and tableau qubit counts differ");
  if (n_samples == 0) throw std::invalid_argument("sample count must be positive");

  if (strategy == MlbStrategy::Alc) {
    stab::GraphConversionResult res = stab::stab_to_graph(t, sel);
    graph::Graph g0(res.gamma);
    bool direct = g0.has_edge(a, b);
    auto eval = [&](size_t s) {
      uint64_t sample_seed = splitmix64(seed + s);
      graph::Path path;
      graph::Graph g1;
      graph::LcRecord rec;
      rec.unitary = stab::LocalCliffordLayer(n);
      if (direct) {
        path = {a, b};
        g1 = g0;
      } else {
        path = s == 0 ? graph::shortest_path(g0, a, b)
                      : graph::random_simple_path(g0, a, b, sample_seed);
        std::tie(g1, rec) = graph::alc_create_link(g0, a, b, path);
      }
      stab::LocalCliffordLayer layer = stab::compose(rec.unitary, res.unitary);
      noise::NoiseModel moved = noise::transform_noise(m, layer);
      MlbResult r = mlb_neighborhood(g1, a, b, moved);
      r.setting = setting_from_layer(layer, a, b);
      r.n_lc = rec.complemented.size();
      r.path = std::move(path);
      r.controls = res.controls;
      r.seed = sample_seed;
      return r;
    };
    return reduce_samples(run_samples(n_samples, eval));
  }

  auto eval = [&](size_t s) {
    uint64_t sample_seed = splitmix64(seed + s);
    stab::ControlSelection forced = stab::ControlSelection::forced_pair(a, b);
    forced.seed = sample_seed;
    stab::GraphConversionResult res = stab::stab_to_graph(t, forced);
    graph::Graph g(res.gamma);
    noise::NoiseModel moved = noise::transform_noise(m, res.unitary);
    MlbResult r = mlb_neighborhood(g, a, b, moved);
    r.setting = setting_from_layer(res.unitary, a, b);
    r.n_lc = 0;
    r.path = {a, b};
    r.controls = std::move(res.controls);
    r.seed = sample_seed;
    return r;
  };
  return reduce_samples(run_samples(n_samples, eval));
}

double rle_exhaustive(const stab::StabilizerTableau& t, size_t a, size_t b,
                      const noise::NoiseModel& m) {
  size_t n = t.n_qubits();
  check_pair(n, a, b);
  if (m.n_qubits() != n) throw std::invalid_argument("noise and tableau qubit counts differ");
  if (n > kExhaustiveLimit)
    throw std::domain_error("exhaustive setting scan limited to 9 qubits");

  Vec psi = tableau_state(t);
  std::vector<size_t> measured;
  for (size_t i = 0; i < n; ++i)
    if (i != a && i != b) measured.push_back(i);
  std::vector<stab::Axis> setting(n, stab::Axis::I);
  for (size_t i : measured) setting[i] = stab::Axis::X;
  std::vector<size_t> idx(measured.size(), 0);
  static const stab::Axis axes[3] = {stab::Axis::X, stab::Axis::Y, stab::Axis::Z};
  double best = 0.0;
  while (true) {
    best = std::max(best, dense_value_on_state(psi, n, a, b, m, setting));
    size_t i = 0;
    while (i < measured.size() && ++idx[i] == 3) idx[i++] = 0;
    if (i == measured.size()) break;
    for (size_t j = 0; j <= i; ++j) setting[measured[j]] = axes[idx[j]];
  }
  return best;
}

}  // namespace lebounds::le
