#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "lebounds/cli.hpp"
#include "lebounds/color_code.hpp"
#include "lebounds/graph.hpp"
#include "lebounds/json_io.hpp"
#include "lebounds/noise.hpp"
#include "lebounds/tableau.hpp"
#include "test_util.hpp"

using namespace lebounds;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(LEBOUNDS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories("cli_tmp");
  return "cli_tmp/" + name;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  for (const std::string& line : lines_of(io::read_text_file(path))) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    while (fields.size() < 11) fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

std::set<std::pair<size_t, size_t>> edge_set(const std::string& graph_json_path) {
  graph::Graph g = io::graph_from_json(io::read_text_file(graph_json_path));
  std::set<std::pair<size_t, size_t>> edges;
  for (auto e : g.edges()) edges.insert(e);
  return edges;
}

}  // namespace

TEST_CASE("code command writes the lattice and reports its size") {
  std::string out = tmp_path("lat4.json");
  RunResult r = run_cli("code --distance 4 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "N=18\nN_p=8\nk=2\n");

  nlohmann::json j = nlohmann::json::parse(io::read_text_file(out));
  CHECK(j["distance"] == 4);
  CHECK(j["qubits"].size() == 18);
  CHECK(j["qubits"][0]["id"] == 1);
  CHECK(j["plaquettes"].size() == 8);
  for (const auto& p : j["plaquettes"]) {
    std::string color = p["color"].get<std::string>();
    CHECK((color == "R" || color == "G" || color == "B"));
    CHECK(p["qubits"].size() >= 4);
  }
  CHECK(j["logical_x"].size() == 2);
  CHECK(j["logical_z"].size() == 2);

  RunResult big = run_cli("code --distance 24 --out " + tmp_path("lat24.json"));
  CHECK(big.exit_code == 0);
  CHECK(big.out.find("N=818") != std::string::npos);

  CHECK(run_cli("code --distance 5 --out " + tmp_path("bad.json")).exit_code == 2);
  CHECK(run_cli("code --distance 4").exit_code == 2);
}

TEST_CASE("seven-qubit conversion reports the published sets") {
  std::string out = tmp_path("g7.json");
  RunResult r = run_cli("stab2graph --seven-qubit --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "n: 7\n"
        "controls: 1 5 7\n"
        "targets: 2 3 4 6\n"
        "clifford: H I I I H I H\n");

  std::set<std::pair<size_t, size_t>> expected = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4},
                                                  {2, 6}, {3, 6}, {4, 5}, {5, 6}};
  CHECK(edge_set(out) == expected);

  RunResult again = run_cli("stab2graph --seven-qubit --out " + tmp_path("g7b.json"));
  CHECK(again.out == r.out);
  CHECK(io::read_text_file(tmp_path("g7b.json")) == io::read_text_file(out));
}

TEST_CASE("graph-state tableaus convert with an identity unitary") {
  graph::Graph ring(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  std::string in = tmp_path("ring4_tab.json");
  io::write_text_file(in, io::tableau_to_json(stab::graph_to_tableau(ring)));

  std::string out = tmp_path("ring4_graph.json");
  RunResult r = run_cli("stab2graph --tableau " + in + " --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "n: 4\n"
        "controls: 1 2 3 4\n"
        "targets:\n"
        "clifford: I I I I\n");
  CHECK(io::graph_from_json(io::read_text_file(out)) == ring);
}

TEST_CASE("forced pairs appear in the converted graph") {
  std::string out = tmp_path("g7_forced.json");
  RunResult r = run_cli("stab2graph --seven-qubit --force-pair 1 5 --seed 2 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(edge_set(out).count({0, 4}) == 1);

  CHECK(run_cli("stab2graph").exit_code == 2);
  CHECK(run_cli("stab2graph --seven-qubit --tableau " + out).exit_code == 2);
  io::write_text_file(tmp_path("garbage.json"), "not json");
  CHECK(run_cli("stab2graph --tableau " + tmp_path("garbage.json")).exit_code == 2);
}

TEST_CASE("link creation follows the requested path") {
  std::string g7 = tmp_path("alc_g7.json");
  REQUIRE(run_cli("stab2graph --seven-qubit --out " + g7).exit_code == 0);

  std::string out = tmp_path("alc_g7_linked.json");
  RunResult r = run_cli("alc --graph " + g7 + " --a 1 --b 5 --path 1,2,5 --out " + out);
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0] == "n_lc: 1");
  CHECK(lines[2] == "complemented: 2");
  CHECK(edge_set(out).count({0, 4}) == 1);

  io::write_text_file(tmp_path("path3.json"), R"({"n": 3, "edges": [[1, 2], [2, 3]]})");
  RunResult chain = run_cli("alc --graph " + tmp_path("path3.json") + " --a 1 --b 3 --path 1,2,3");
  CHECK(chain.exit_code == 0);
  CHECK(lines_of(chain.out)[0] == "n_lc: 1");

  RunResult s1 = run_cli("alc --graph " + g7 + " --a 1 --b 6 --seed 9 --out " + tmp_path("s1.json"));
  RunResult s2 = run_cli("alc --graph " + g7 + " --a 1 --b 6 --seed 9 --out " + tmp_path("s2.json"));
  CHECK(s1.exit_code == 0);
  CHECK(s1.out == s2.out);
  CHECK(io::read_text_file(tmp_path("s1.json")) == io::read_text_file(tmp_path("s2.json")));
  CHECK(edge_set(tmp_path("s1.json")).count({0, 5}) == 1);

  CHECK(run_cli("alc --graph " + g7 + " --a 1 --b 2 --seed 1").exit_code == 2);
  CHECK(run_cli("alc --graph " + g7 + " --a 1 --b 5").exit_code == 2);
  CHECK(run_cli("alc --graph " + g7 + " --a 1 --b 5 --path 1,6,5").exit_code == 2);
  io::write_text_file(tmp_path("disc.json"), R"({"n": 4, "edges": [[1, 2], [3, 4]]})");
  CHECK(run_cli("alc --graph " + tmp_path("disc.json") + " --a 1 --b 3 --seed 1").exit_code == 3);
}

TEST_CASE("sweep emits sorted rows under the pinned header") {
  std::string out = tmp_path("wlb.csv");
  RunResult r = run_cli("sweep --bound wlb --distance 8 --d-list 2,1 --kind PF --q-list 0.01,0 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "rows: 4\n");

  auto rows = csv_rows(out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"d", "q", "kind", "bound", "value", "n_x", "n_z",
                                            "n_min", "n_lc_mean", "n_samples", "seed"});
  CHECK(rows[1][0] == "1");
  CHECK(rows[1][1] == "0");
  CHECK(rows[2][0] == "1");
  CHECK(rows[2][1] == "0.01");
  CHECK(rows[3][0] == "2");
  CHECK(rows[4][0] == "2");

  CHECK(std::stod(rows[1][4]) == doctest::Approx(1.0).epsilon(1e-12));
  double n_x = std::stod(rows[2][5]);
  CHECK(std::stod(rows[2][4]) ==
        doctest::Approx(std::pow(0.99, n_x)).epsilon(1e-12));
  CHECK(rows[2][7].empty());
  CHECK(rows[2][10].empty());
}

TEST_CASE("sampled sweeps are reproducible and fill the sample fields") {
  std::string out1 = tmp_path("mlb1.csv");
  std::string out2 = tmp_path("mlb2.csv");
  std::string args = "sweep --bound mlb --distance 8 --d-list 1 --kind DP --q-list 0,0.01 "
                     "--n-samples 2 --strategy alc --seed 3 --out ";
  CHECK(run_cli(args + out1).exit_code == 0);
  CHECK(run_cli(args + out2).exit_code == 0);
  CHECK(io::read_text_file(out1) == io::read_text_file(out2));

  auto rows = csv_rows(out1);
  REQUIRE(rows.size() == 3);
  CHECK(std::stod(rows[1][4]) == doctest::Approx(1.0).epsilon(1e-12));
  double value = std::stod(rows[2][4]);
  CHECK(value > 0.0);
  CHECK(value <= 1.0);
  CHECK(rows[2][5].empty());
  CHECK(rows[2][6].empty());
  CHECK(!rows[2][7].empty());
  CHECK(rows[2][9] == "2");
  CHECK(rows[2][10] == "3");

  codes::ColorCodeLattice lattice = codes::build_square_hexagonal(8);
  auto [a, b] = codes::bulk_pair_at_distance(lattice, 1);
  std::string pair_arg = std::to_string(a + 1) + ":" + std::to_string(b + 1);
  std::string out3 = tmp_path("mlb3.csv");
  CHECK(run_cli("sweep --bound mlb --distance 8 --pairs " + pair_arg +
                " --kind DP --q-list 0,0.01 --n-samples 2 --strategy alc --seed 3 --out " + out3)
            .exit_code == 0);
  CHECK(io::read_text_file(out3) == io::read_text_file(out1));

  CHECK(run_cli("sweep --bound mlb --distance 8 --d-list 1 --kind DP --q-list 0.01 "
                "--n-samples 2 --out " + tmp_path("x.csv")).exit_code == 2);
  CHECK(run_cli("sweep --bound wlbx --distance 8 --d-list 1 --kind DP --q-list 0.01 --out " +
                tmp_path("x.csv")).exit_code == 2);
  CHECK(run_cli("sweep --bound wlb --distance 8 --d-list 40 --kind DP --q-list 0.01 --out " +
                tmp_path("x.csv")).exit_code == 3);
}

TEST_CASE("fit recovers exponential decay parameters") {
  std::string path = tmp_path("fit.csv");
  std::ostringstream csv;
  csv << "d,q,kind,bound,value,n_x,n_z,n_min,n_lc_mean,n_samples,seed\n";
  for (size_t d = 1; d <= 4; ++d)
    for (int rep = 0; rep < 3; ++rep)
      csv << d << ",0.01,DP,wlb," << std::setprecision(16) << std::exp(-0.1 - 0.5 * d)
          << ",6,6,,,,\n";
  io::write_text_file(path, csv.str());

  std::ostringstream sink;
  cli::FitResult fit = cli::cmd_fit(path, sink);
  CHECK(std::abs(fit.a_prime + 0.1) < 1e-9);
  CHECK(std::abs(fit.b + 0.5) < 1e-9);

  RunResult r = run_cli("fit --csv " + path);
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].substr(0, 8) == "a_prime=");
  CHECK(std::abs(std::stod(lines[0].substr(8)) + 0.1) < 1e-9);
  CHECK(std::abs(std::stod(lines[1].substr(2)) + 0.5) < 1e-9);
  CHECK(lines[2] == "slope: negative");

  std::string flat = tmp_path("fit_flat.csv");
  std::ostringstream flat_csv;
  flat_csv << "d,q,kind,bound,value,n_x,n_z,n_min,n_lc_mean,n_samples,seed\n";
  for (size_t d = 1; d <= 4; ++d)
    for (int rep = 0; rep < 3; ++rep) flat_csv << d << ",0.01,DP,wlb,1,6,6,,,,\n";
  io::write_text_file(flat, flat_csv.str());
  std::ostringstream sink2;
  CHECK(cli::cmd_fit(flat, sink2).b == 0.0);
  CHECK(lines_of(run_cli("fit --csv " + flat).out)[2] == "slope: zero");

  std::string two = tmp_path("fit_two.csv");
  io::write_text_file(two,
                      "d,q,kind,bound,value,n_x,n_z,n_min,n_lc_mean,n_samples,seed\n"
                      "1,0,DP,wlb,0.5,,,,,,\n2,0,DP,wlb,0.4,,,,,,\n");
  CHECK(run_cli("fit --csv " + two).exit_code == 2);

  std::string zero = tmp_path("fit_zero.csv");
  io::write_text_file(zero,
                      "d,q,kind,bound,value,n_x,n_z,n_min,n_lc_mean,n_samples,seed\n"
                      "1,0,DP,wlb,0.5,,,,,,\n2,0,DP,wlb,0,,,,,,\n3,0,DP,wlb,0.1,,,,,,\n");
  CHECK(run_cli("fit --csv " + zero).exit_code == 2);
  CHECK(run_cli("fit --csv " + tmp_path("missing.csv")).exit_code == 2);
  io::write_text_file(tmp_path("fit_bad.csv"), "wrong,header\n1,2\n");
  CHECK(run_cli("fit --csv " + tmp_path("fit_bad.csv")).exit_code == 2);
}

TEST_CASE("json payloads round trip") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    stab::StabilizerTableau t = test_util::random_valid_tableau(6, rng);
    CHECK(io::tableau_from_json(io::tableau_to_json(t)) == t);
    graph::Graph g = test_util::random_connected_graph(8, rng);
    CHECK(io::graph_from_json(io::graph_to_json(g)) == g);
  }

  noise::NoiseModel m = noise::standard_channel(noise::ChannelKind::BitPhaseFlip, 0.3, 3);
  noise::NoiseModel back = io::noise_from_json(io::noise_to_json(m), 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t k = 0; k < 4; ++k) CHECK(back.at(i)[k] == doctest::Approx(m.at(i)[k]));

  noise::NoiseModel named = io::noise_from_json(R"({"kind": "PF", "q": 0.1})", 2);
  CHECK(named.at(1)[3] == doctest::Approx(0.05));

  CHECK_THROWS_AS(io::noise_from_json(R"({"q": 0.1})", 2), std::invalid_argument);
  CHECK_THROWS_AS(io::noise_from_json(R"({"per_qubit": [[1, 0, 0, 0]]})", 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::graph_from_json(R"({"n": 3, "edges": [[1, 4]]})"), std::invalid_argument);
  CHECK_THROWS_AS(io::graph_from_json(R"({"edges": []})"), std::invalid_argument);
  CHECK_THROWS_AS(io::tableau_from_json(R"({"n_qubits": 1, "stabilizers": []})"),
                  std::invalid_argument);

  std::string anticommuting = R"({"n_qubits": 2, "stabilizers": [
    {"z": [1, 0], "x": [0, 0]}, {"z": [0, 0], "x": [1, 0]}]})";
  CHECK_THROWS_AS(io::tableau_from_json(anticommuting), std::invalid_argument);
}

TEST_CASE("lattice json lists plaquettes with colors") {
  std::string text = io::lattice_to_json(codes::build_seven_qubit());
  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["distance"] == 3);
  CHECK(j["qubits"].size() == 7);
  REQUIRE(j["plaquettes"].size() == 3);
  std::set<std::string> colors;
  for (const auto& p : j["plaquettes"]) {
    CHECK(p["qubits"].size() == 4);
    colors.insert(p["color"].get<std::string>());
  }
  CHECK(colors == std::set<std::string>{"R", "G", "B"});
  REQUIRE(j["logical_x"].size() == 1);
  CHECK(j["logical_x"][0] == nlohmann::json::array({1, 2, 5}));
}