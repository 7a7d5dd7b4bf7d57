#include "lebounds/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lebounds/color_code.hpp"
#include "lebounds/graph.hpp"
#include "lebounds/json_io.hpp"
#include "lebounds/rng.hpp"
#include "lebounds/tableau.hpp"

namespace lebounds::cli {

namespace {

constexpr const char* kCsvHeader = "d,q,kind,bound,value,n_x,n_z,n_min,n_lc_mean,n_samples,seed";

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

size_t to_index(size_t label, size_t n, const char* what) {
  if (label < 1 || label > n) throw std::invalid_argument(std::string(what) + " label out of range");
  return label - 1;
}

void emit_graph(const graph::Graph& g, const std::string& out_path, std::ostream& out) {
  std::string text = io::graph_to_json(g);
  if (out_path.empty())
    out << text;
  else
    io::write_text_file(out_path, text);
}

double clamp_unit(double v) { return std::min(1.0, std::max(0.0, v)); }

struct SweepRow {
  size_t d = 0;
  double q = 0.0;
  std::string kind;
  std::string bound;
  double value = 0.0;
  std::string n_x, n_z, n_min, n_lc_mean, n_samples, seed;
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

}  // namespace

void cmd_code(const CodeOptions& opt, std::ostream& out) {
  if (opt.out_path.empty()) throw std::invalid_argument("code requires an output path");
  codes::ColorCodeLattice lattice = codes::build_square_hexagonal(opt.distance);
  io::write_text_file(opt.out_path, io::lattice_to_json(lattice));
  out << "N=" << lattice.n_qubits() << "\n";
  out << "N_p=" << lattice.n_plaquettes() << "\n";
  out << "k=" << lattice.n_logical() << "\n";
}

void cmd_stab2graph(const StabToGraphOptions& opt, std::ostream& out) {
  if (opt.seven_qubit == !opt.tableau_path.empty())
    throw std::invalid_argument("provide exactly one of a tableau file or --seven-qubit");

  stab::StabilizerTableau t;
  bool geometric = false;
  codes::ControlAssignment assignment;
  if (opt.seven_qubit) {
    codes::ColorCodeLattice lattice = codes::build_seven_qubit();
    t = codes::logical_plus_tableau(lattice);
    if (!opt.force_pair && !opt.seed) {
      assignment = codes::assign_controls_geometric(lattice);
      geometric = true;
    }
  } else {
    t = io::tableau_from_json(io::read_text_file(opt.tableau_path));
  }

  stab::ControlSelection sel = stab::ControlSelection::greedy();
  if (geometric) {
    sel = codes::to_stab_selection(assignment);
  } else if (opt.force_pair) {
    size_t a = to_index(opt.force_pair->first, t.n_qubits(), "pair");
    size_t b = to_index(opt.force_pair->second, t.n_qubits(), "pair");
    sel = stab::ControlSelection::forced_pair(a, b);
    sel.seed = opt.seed.value_or(0);
  } else if (opt.seed) {
    sel = stab::ControlSelection::seeded(*opt.seed);
  }

  stab::GraphConversionResult res = stab::stab_to_graph(t, sel);
  out << "n: " << t.n_qubits() << "\n";
  out << "controls:";
  for (size_t i : geometric ? assignment.controls : res.controls) out << ' ' << i + 1;
  out << "\n";
  out << "targets:";
  for (size_t i : geometric ? assignment.targets : res.targets) out << ' ' << i + 1;
  out << "\n";
  out << "clifford:";
  for (size_t i = 0; i < t.n_qubits(); ++i) out << ' ' << stab::mat2_name(res.unitary.at(i));
  out << "\n";
  emit_graph(graph::Graph(res.gamma), opt.out_path, out);
}

void cmd_alc(const AlcOptions& opt, std::ostream& out) {
  graph::Graph g = io::graph_from_json(io::read_text_file(opt.graph_path));
  size_t a = to_index(opt.a, g.n(), "node");
  size_t b = to_index(opt.b, g.n(), "node");
  if (a == b) throw std::invalid_argument("link endpoints must be distinct nodes");
  if (g.has_edge(a, b)) throw std::invalid_argument("link already present between the endpoints");
  if (!g.is_connected()) throw std::domain_error("graph is not connected");

  graph::Path path;
  if (opt.path) {
    for (size_t label : *opt.path) path.push_back(to_index(label, g.n(), "path node"));
    if (path.empty() || path.front() != a || path.back() != b)
      throw std::invalid_argument("path must run from the first endpoint to the second");
    graph::validate_path(g, path);
  } else if (opt.seed) {
    path = graph::random_simple_path(g, a, b, *opt.seed);
  } else {
    throw std::invalid_argument("provide a seed or an explicit path");
  }

  auto [linked, record] = graph::alc_create_link(g, a, b, path);
  out << "n_lc: " << record.complemented.size() << "\n";
  out << "link_ops: " << record.link_ops << "\n";
  out << "complemented:";
  for (size_t node : record.complemented) out << ' ' << node + 1;
  out << "\n";
  emit_graph(linked, opt.out_path, out);
}

void cmd_sweep(const SweepOptions& opt, std::ostream& out) {
  if (opt.bound != "wlb" && opt.bound != "mlb")
    throw std::invalid_argument("bound must be wlb or mlb");
  if (opt.out_path.empty()) throw std::invalid_argument("sweep requires an output path");
  if (opt.q_list.empty()) throw std::invalid_argument("sweep requires at least one noise strength");
  if (opt.d_list.empty() && opt.pairs.empty())
    throw std::invalid_argument("sweep requires distances or explicit pairs");
  bool mlb = opt.bound == "mlb";
  if (mlb && !opt.seed) throw std::invalid_argument("mlb sweep requires a seed");
  if (mlb && opt.n_samples == 0) throw std::invalid_argument("sample count must be positive");

  codes::ColorCodeLattice lattice = codes::build_square_hexagonal(opt.distance);
  size_t n = lattice.n_qubits();

  std::vector<std::pair<size_t, std::pair<size_t, size_t>>> cells;  // (d, 0-based pair)
  if (!opt.pairs.empty()) {
    for (const auto& [la, lb] : opt.pairs) {
      size_t a = to_index(la, n, "pair");
      size_t b = to_index(lb, n, "pair");
      size_t d = graph::shortest_path(lattice.links, a, b).size() - 1;
      cells.push_back({d, {a, b}});
    }
  } else {
    for (size_t d : opt.d_list) cells.push_back({d, codes::bulk_pair_at_distance(lattice, d)});
  }

  stab::StabilizerTableau t;
  stab::ControlSelection sel = stab::ControlSelection::greedy();
  if (mlb) {
    t = codes::logical_plus_tableau(lattice);
    sel = codes::to_stab_selection(codes::assign_controls_geometric(lattice));
  }

  std::vector<SweepRow> rows;
  for (const auto& [d, pair] : cells) {
    for (double q : opt.q_list) {
      noise::NoiseModel m = noise::standard_channel(opt.kind, q, n);
      SweepRow row;
      row.d = d;
      row.q = q;
      row.kind = noise::channel_kind_name(opt.kind);
      row.bound = opt.bound;
      if (mlb) {
        uint64_t cell_seed = splitmix64(*opt.seed + rows.size());
        le::MlbResult r = le::mlb_optimize(t, pair.first, pair.second, m, opt.strategy,
                                           opt.n_samples, cell_seed, sel);
        row.value = clamp_unit(r.value);
        row.n_min = std::to_string(r.n_min);
        row.n_lc_mean = format_number(r.n_lc_mean);
        row.n_samples = std::to_string(opt.n_samples);
        row.seed = std::to_string(*opt.seed);
      } else {
        codes::WitnessConstruction w =
            codes::witness_plaquette_paths(lattice, pair.first, pair.second);
        row.value = clamp_unit(le::wlb(w, m));
        row.n_x = std::to_string(w.n_x);
        row.n_z = std::to_string(w.n_z);
      }
      rows.push_back(row);
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& l, const SweepRow& r) {
    return l.d != r.d ? l.d < r.d : l.q < r.q;
  });

  std::string csv = std::string(kCsvHeader) + "\n";
  for (const SweepRow& row : rows) {
    csv += std::to_string(row.d) + ',' + format_number(row.q) + ',' + row.kind + ',' + row.bound +
           ',' + format_number(row.value) + ',' + row.n_x + ',' + row.n_z + ',' + row.n_min + ',' +
           row.n_lc_mean + ',' + row.n_samples + ',' + row.seed + '\n';
  }
  io::write_text_file(opt.out_path, csv);
  out << "rows: " << rows.size() << "\n";
}

FitResult cmd_fit(const std::string& csv_path, std::ostream& out) {
  std::vector<std::string> lines = split(io::read_text_file(csv_path), '\n');
  if (lines.empty() || lines.front() != kCsvHeader)
    throw std::invalid_argument("unrecognized CSV header");

  std::vector<std::pair<double, double>> points;  // (d, ln value)
  std::set<size_t> distances;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = split(lines[i], ',');
    if (fields.size() < 5) throw std::invalid_argument("malformed CSV row: " + lines[i]);
    size_t d = 0;
    double value = 0.0;
    try {
      d = std::stoul(fields[0]);
      value = std::stod(fields[4]);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed CSV row: " + lines[i]);
    }
    if (!(value > 0.0))
      throw std::invalid_argument("bound values must be positive to fit an exponential");
    points.push_back({static_cast<double>(d), std::log(value)});
    distances.insert(d);
  }
  if (distances.size() < 3)
    throw std::invalid_argument("need at least three distinct distances to fit");

  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  FitResult fit;
  fit.b = sxy / sxx;
  fit.a_prime = my - fit.b * mx;

  out << "a_prime=" << format_number(fit.a_prime) << "\n";
  out << "b=" << format_number(fit.b) << "\n";
  out << "slope: " << (fit.b < 0 ? "negative" : (fit.b > 0 ? "positive" : "zero")) << "\n";
  return fit;
}

}  // namespace lebounds::cli
