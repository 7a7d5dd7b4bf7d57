#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lebounds/le.hpp"
#include "lebounds/noise.hpp"

namespace lebounds::cli {

/// All option structs take and report 1-based qubit labels.

struct CodeOptions {
  size_t distance = 0;
  std::string out_path;
};

/// Builds the lattice, writes its JSON to out_path, prints N, N_p and k.
void cmd_code(const CodeOptions& opt, std::ostream& out);

struct StabToGraphOptions {
  std::string tableau_path;  // exclusive with seven_qubit
  bool seven_qubit = false;
  std::optional<std::pair<size_t, size_t>> force_pair;
  std::optional<uint64_t> seed;
  std::string out_path;  // graph JSON; printed to out when empty
};

/// Converts a stabilizer tableau to graph form and reports the control and
/// target sets plus the per-qubit Clifford labels of the conversion unitary.
void cmd_stab2graph(const StabToGraphOptions& opt, std::ostream& out);

struct AlcOptions {
  std::string graph_path;
  size_t a = 0;
  size_t b = 0;
  std::optional<uint64_t> seed;              // random simple path
  std::optional<std::vector<size_t>> path;   // explicit path from a to b
  std::string out_path;  // linked graph JSON; printed to out when empty
};

/// Creates the link (a, b) along a path and reports the complemented node
/// sequence, the complementation count and the link operation count.
void cmd_alc(const AlcOptions& opt, std::ostream& out);

struct SweepOptions {
  std::string bound;  // "wlb" or "mlb"
  size_t distance = 0;
  std::vector<size_t> d_list;
  std::vector<std::pair<size_t, size_t>> pairs;  // empty: smallest bulk pair per d
  noise::ChannelKind kind = noise::ChannelKind::Depolarizing;
  std::vector<double> q_list;
  size_t n_samples = 1;
  le::MlbStrategy strategy = le::MlbStrategy::Alc;
  std::optional<uint64_t> seed;
  std::string out_path;
};

/// Evaluates the requested bound on every (d, q) cell and writes one sorted
/// CSV row per cell. Values are clamped to [0, 1].
void cmd_sweep(const SweepOptions& opt, std::ostream& out);

struct FitResult {
  double a_prime = 0.0;  // intercept of the least-squares line
  double b = 0.0;        // slope per unit distance
};

/// Ordinary least squares of ln(value) against d over the CSV rows.
FitResult cmd_fit(const std::string& csv_path, std::ostream& out);

}  // namespace lebounds::cli
