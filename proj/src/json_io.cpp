#include "lebounds/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace lebounds::io {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON input");
  return j;
}

size_t to_index(const json& label, size_t n) {
  if (!label.is_number_unsigned() || label.get<size_t>() < 1 || label.get<size_t>() > n)
    throw std::invalid_argument("qubit label out of range");
  return label.get<size_t>() - 1;
}

json labels_from(const std::vector<size_t>& indices) {
  json out = json::array();
  for (size_t i : indices) out.push_back(i + 1);
  return out;
}

}  // namespace

std::string lattice_to_json(const codes::ColorCodeLattice& lattice) {
  json j;
  j["distance"] = lattice.distance;
  json qubits = json::array();
  for (size_t i = 0; i < lattice.n_qubits(); ++i) {
    json q;
    q["id"] = i + 1;
    q["xy"] = {lattice.positions[i][0], lattice.positions[i][1]};
    qubits.push_back(q);
  }
  j["qubits"] = qubits;
  json plaquettes = json::array();
  for (const auto& p : lattice.plaquettes) {
    json entry;
    entry["qubits"] = labels_from(p.qubits);
    entry["color"] = std::string(1, codes::face_color_letter(p.color));
    plaquettes.push_back(entry);
  }
  j["plaquettes"] = plaquettes;
  json lx = json::array();
  for (const auto& rep : lattice.logical_x) lx.push_back(labels_from(rep));
  j["logical_x"] = lx;
  json lz = json::array();
  for (const auto& rep : lattice.logical_z) lz.push_back(labels_from(rep));
  j["logical_z"] = lz;
  return j.dump(2) + "\n";
}

std::string graph_to_json(const graph::Graph& g) {
  json j;
  j["n"] = g.n();
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a + 1, b + 1});
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

graph::Graph graph_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    throw std::invalid_argument("graph JSON requires an unsigned field n");
  size_t n = j["n"].get<size_t>();
  graph::Graph g(n);
  if (!j.contains("edges") || !j["edges"].is_array())
    throw std::invalid_argument("graph JSON requires an edges array");
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph edge must be a pair of labels");
    g.add_edge(to_index(e[0], n), to_index(e[1], n));
  }
  return g;
}

std::string tableau_to_json(const stab::StabilizerTableau& t) {
  size_t n = t.n_qubits();
  json j;
  j["n_qubits"] = n;
  json stabs = json::array();
  for (size_t c = 0; c < n; ++c) {
    json z = json::array();
    json x = json::array();
    for (size_t r = 0; r < n; ++r) {
      z.push_back(t.a().get(r, c) ? 1 : 0);
      x.push_back(t.a().get(n + r, c) ? 1 : 0);
    }
    json col;
    col["z"] = z;
    col["x"] = x;
    stabs.push_back(col);
  }
  j["stabilizers"] = stabs;
  return j.dump(2) + "\n";
}

stab::StabilizerTableau tableau_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("n_qubits") || !j["n_qubits"].is_number_unsigned())
    throw std::invalid_argument("tableau JSON requires an unsigned field n_qubits");
  size_t n = j["n_qubits"].get<size_t>();
  if (!j.contains("stabilizers") || !j["stabilizers"].is_array() || j["stabilizers"].size() != n)
    throw std::invalid_argument("tableau JSON requires n_qubits stabilizer columns");
  gf2::BitMatrix a(2 * n, n);
  size_t c = 0;
  for (const auto& col : j["stabilizers"]) {
    for (const char* part : {"z", "x"}) {
      if (!col.contains(part) || !col[part].is_array() || col[part].size() != n)
        throw std::invalid_argument("stabilizer column requires z and x bit arrays of length n_qubits");
      size_t offset = part[0] == 'z' ? 0 : n;
      for (size_t r = 0; r < n; ++r) {
        const auto& bit = col[part][r];
        if (!bit.is_number_unsigned() || bit.get<size_t>() > 1)
          throw std::invalid_argument("stabilizer bits must be 0 or 1");
        if (bit.get<size_t>() == 1) a.set(offset + r, c, true);
      }
    }
    ++c;
  }
  stab::StabilizerTableau t(n, a);
  if (!stab::check_valid(t))
    throw std::invalid_argument("stabilizers must be independent and mutually commuting");
  return t;
}

std::string noise_to_json(const noise::NoiseModel& m) {
  json j;
  json rows = json::array();
  for (size_t i = 0; i < m.n_qubits(); ++i) {
    const auto& v = m.at(i);
    rows.push_back({v[0], v[1], v[2], v[3]});
  }
  j["per_qubit"] = rows;
  return j.dump(2) + "\n";
}

noise::NoiseModel noise_from_json(const std::string& text, size_t n_qubits) {
  json j = parse(text);
  if (j.contains("per_qubit")) {
    if (!j["per_qubit"].is_array())
      throw std::invalid_argument("per_qubit must be an array of probability vectors");
    std::vector<std::array<double, 4>> rows;
    for (const auto& row : j["per_qubit"]) {
      if (!row.is_array() || row.size() != 4)
        throw std::invalid_argument("each per_qubit entry must hold four probabilities");
      rows.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
                      row[3].get<double>()});
    }
    if (rows.size() != n_qubits)
      throw std::invalid_argument("per_qubit length does not match the qubit count");
    return noise::NoiseModel(rows);
  }
  if (!j.contains("kind") || !j["kind"].is_string() || !j.contains("q") || !j["q"].is_number())
    throw std::invalid_argument("noise JSON requires kind and q, or per_qubit");
  return noise::standard_channel(noise::channel_kind_from_name(j["kind"].get<std::string>()),
                                 j["q"].get<double>(), n_qubits);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

}  // namespace lebounds::io
