#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lebounds/bitmatrix.hpp"
#include "lebounds/color_code.hpp"
#include "lebounds/graph.hpp"
#include "lebounds/pauli.hpp"
#include "lebounds/tableau.hpp"

namespace codes = lebounds::codes;
namespace gf2 = lebounds::gf2;
namespace stab = lebounds::stab;
namespace graph = lebounds::graph;

namespace {

std::set<size_t> to_set(const std::vector<size_t>& v) { return {v.begin(), v.end()}; }

size_t overlap_size(const std::vector<size_t>& a, const std::vector<size_t>& b) {
  std::set<size_t> sa = to_set(a);
  size_t c = 0;
  for (size_t q : b) c += sa.count(q);
  return c;
}

// Incremental GF(2) row space with membership queries, kept separate from the
// library so span tests do not depend on the code under test.
struct SpanOracle {
  std::vector<std::vector<char>> rows;
  std::vector<size_t> pivots;

  std::vector<char> reduce(std::vector<char> v) const {
    for (size_t i = 0; i < rows.size(); ++i)
      if (v[pivots[i]])
        for (size_t c = 0; c < v.size(); ++c) v[c] ^= rows[i][c];
    return v;
  }
  bool add(std::vector<char> v) {
    v = reduce(std::move(v));
    for (size_t c = 0; c < v.size(); ++c)
      if (v[c]) {
        rows.push_back(v);
        pivots.push_back(c);
        return true;
      }
    return false;
  }
  bool contains(std::vector<char> v) const {
    v = reduce(std::move(v));
    return std::all_of(v.begin(), v.end(), [](char b) { return !b; });
  }
};

std::vector<char> support_mask(size_t n, const std::vector<size_t>& support) {
  std::vector<char> m(n, 0);
  for (size_t q : support) m[q] = 1;
  return m;
}

stab::PauliString pauli_on(size_t n, const std::vector<size_t>& support, stab::Axis axis) {
  stab::PauliString p(n);
  for (size_t q : support) p.set_axis(q, axis);
  return p;
}

void check_lattice_structure(const codes::ColorCodeLattice& lat) {
  size_t n = lat.n_qubits();
  REQUIRE(n > 0);
  REQUIRE(lat.links.n() == n);
  REQUIRE(lat.positions.size() == n);

  std::map<std::pair<size_t, size_t>, size_t> link_faces;
  for (const auto& p : lat.plaquettes) {
    REQUIRE(p.qubits.size() >= 4);
    CHECK(p.qubits.size() % 2 == 0);
    CHECK(to_set(p.qubits).size() == p.qubits.size());
    for (size_t q : p.qubits) REQUIRE(q < n);
    for (size_t i = 0; i < p.qubits.size(); ++i) {
      size_t u = p.qubits[i], v = p.qubits[(i + 1) % p.qubits.size()];
      CHECK(lat.links.has_edge(u, v));
      ++link_faces[{std::min(u, v), std::max(u, v)}];
    }
  }
  for (const auto& [link, count] : link_faces) CHECK(count <= 2);
  CHECK(link_faces.size() == lat.links.edge_count());

  for (size_t p = 0; p < lat.n_plaquettes(); ++p)
    for (size_t r = p + 1; r < lat.n_plaquettes(); ++r) {
      size_t common = overlap_size(lat.plaquettes[p].qubits, lat.plaquettes[r].qubits);
      CHECK(common % 2 == 0);
      if (common > 0) CHECK(lat.plaquettes[p].color != lat.plaquettes[r].color);
    }

  CHECK(lat.links.is_connected());
  for (size_t q = 0; q < n; ++q) {
    CHECK(lat.links.degree(q) >= 2);
    CHECK(lat.links.degree(q) <= 3);
  }

  std::set<std::pair<long long, long long>> points;
  for (const auto& xy : lat.positions)
    points.insert({std::llround(xy[0] * 1e6), std::llround(xy[1] * 1e6)});
  CHECK(points.size() == n);
}

void check_logicals(const codes::ColorCodeLattice& lat) {
  size_t n = lat.n_qubits();
  size_t k = lat.n_logical();
  REQUIRE(k >= 1);
  REQUIRE(lat.logical_z.size() == k);

  SpanOracle row_space;
  for (const auto& p : lat.plaquettes) row_space.add(support_mask(n, p.qubits));

  for (const auto& side : {lat.logical_x, lat.logical_z})
    for (const auto& logical : side) {
      for (const auto& p : lat.plaquettes)
        CHECK(overlap_size(logical, p.qubits) % 2 == 0);
      CHECK_FALSE(row_space.contains(support_mask(n, logical)));
    }

  for (size_t p = 0; p < k; ++p)
    for (size_t q = 0; q < k; ++q)
      CHECK(overlap_size(lat.logical_x[p], lat.logical_z[q]) % 2 == (p == q ? 1 : 0));
}

void check_assignment(const codes::ColorCodeLattice& lat, const codes::ControlAssignment& asg) {
  size_t n = lat.n_qubits(), np = lat.n_plaquettes();
  REQUIRE(asg.controls.size() == np);
  CHECK(std::is_sorted(asg.controls.begin(), asg.controls.end()));
  CHECK(asg.controls.size() + asg.targets.size() == n);
  std::set<size_t> everything = to_set(asg.controls);
  for (size_t q : asg.targets) everything.insert(q);
  CHECK(everything.size() == n);

  REQUIRE(asg.recombination.rows() == np);
  REQUIRE(asg.recombination.cols() == np);
  std::set<size_t> controls = to_set(asg.controls);
  for (size_t r = 0; r < np; ++r) {
    std::vector<char> acc(n, 0);
    for (size_t p = 0; p < np; ++p)
      if (asg.recombination.get(r, p))
        for (size_t q : lat.plaquettes[p].qubits) acc[q] ^= 1;
    size_t n_controls = 0, n_targets = 0;
    for (size_t q = 0; q < n; ++q)
      if (acc[q]) ++(controls.count(q) ? n_controls : n_targets);
    CHECK(n_controls == 1);
    CHECK(acc[asg.controls[r]] == 1);
    CHECK(n_targets >= 1);
  }
}

void check_witness_conditions(const codes::ColorCodeLattice& lat,
                              const codes::WitnessConstruction& w) {
  size_t n = lat.n_qubits();
  // The path realizes the lattice distance between the endpoints.
  REQUIRE(w.path.size() == w.distance + 1);
  CHECK(w.path.front() == w.a);
  CHECK(w.path.back() == w.b);
  graph::validate_path(lat.links, w.path);
  CHECK(graph::shortest_path(lat.links, w.a, w.b).size() == w.path.size());

  // Supports are the products of the named plaquettes.
  for (const auto& [chain, p] :
       {std::pair{&w.x_plaquettes, &w.sx}, std::pair{&w.z_plaquettes, &w.sz}}) {
    std::vector<char> acc(n, 0);
    for (size_t f : *chain)
      for (size_t q : lat.plaquettes[f].qubits) acc[q] ^= 1;
    for (size_t q = 0; q < n; ++q)
      CHECK(acc[q] == (p->axis(q) != stab::Axis::I ? 1 : 0));
  }
  CHECK(w.n_x == w.sx.weight());
  CHECK(w.n_z == w.sz.weight());
  CHECK(w.x_plaquettes.size() + w.z_plaquettes.size() == w.distance + 1);

  // Both operators are stabilizers, so they commute with every plaquette.
  for (const auto& p : lat.plaquettes) {
    CHECK(w.sx.commutes_with(pauli_on(n, p.qubits, stab::Axis::X)));
    CHECK(w.sx.commutes_with(pauli_on(n, p.qubits, stab::Axis::Z)));
    CHECK(w.sz.commutes_with(pauli_on(n, p.qubits, stab::Axis::X)));
    CHECK(w.sz.commutes_with(pauli_on(n, p.qubits, stab::Axis::Z)));
  }

  // Outside {a,b} the per-qubit factors commute: never both nontrivial.
  for (size_t q = 0; q < n; ++q) {
    if (q == w.a || q == w.b) continue;
    CHECK((w.sx.axis(q) == stab::Axis::I || w.sz.axis(q) == stab::Axis::I));
  }
  // Restricted to {a,b} they form the two-qubit Bell stabilizer pair XX, ZZ.
  CHECK(w.sx.axis(w.a) == stab::Axis::X);
  CHECK(w.sx.axis(w.b) == stab::Axis::X);
  CHECK(w.sz.axis(w.a) == stab::Axis::Z);
  CHECK(w.sz.axis(w.b) == stab::Axis::Z);
  CHECK(w.sx.commutes_with(w.sz));
}

}  // namespace

TEST_CASE("face color letters round trip") {
  using codes::FaceColor;
  CHECK(codes::face_color_letter(FaceColor::Red) == 'R');
  CHECK(codes::face_color_letter(FaceColor::Green) == 'G');
  CHECK(codes::face_color_letter(FaceColor::Blue) == 'B');
  for (char c : {'R', 'G', 'B'})
    CHECK(codes::face_color_letter(codes::face_color_from_letter(c)) == c);
  CHECK_THROWS_AS(codes::face_color_from_letter('x'), std::invalid_argument);
}

TEST_CASE("seven qubit lattice matches the published code") {
  auto lat = codes::build_seven_qubit();
  REQUIRE(lat.n_qubits() == 7);
  REQUIRE(lat.n_plaquettes() == 3);
  CHECK(lat.distance == 3);
  CHECK(to_set(lat.plaquettes[0].qubits) == std::set<size_t>{0, 1, 2, 3});
  CHECK(to_set(lat.plaquettes[1].qubits) == std::set<size_t>{1, 2, 4, 5});
  CHECK(to_set(lat.plaquettes[2].qubits) == std::set<size_t>{2, 3, 5, 6});
  CHECK(lat.n_logical() == 1);  // 7 - 2 * 3
  CHECK(lat.logical_x[0] == std::vector<size_t>{0, 1, 4});
  CHECK(lat.logical_z[0] == std::vector<size_t>{0, 3, 6});
  CHECK(lat.links.edge_count() == 9);
  check_lattice_structure(lat);
  check_logicals(lat);
}

TEST_CASE("square hexagonal qubit counts match the closed form") {
  for (size_t d : {4u, 8u, 12u, 16u, 20u, 24u}) {
    auto lat = codes::build_square_hexagonal(d);
    CHECK(lat.n_qubits() == 3 * d * d / 2 - 2 * (d - 1));
    CHECK(lat.n_qubits() == 2 * lat.n_plaquettes() + 2);
    CHECK(lat.n_logical() == 2);
    CHECK(lat.distance == d);
  }
  CHECK(codes::build_square_hexagonal(4).n_qubits() == 18);
  CHECK(codes::build_square_hexagonal(8).n_qubits() == 82);
  CHECK(codes::build_square_hexagonal(12).n_qubits() == 194);
  CHECK(codes::build_square_hexagonal(16).n_qubits() == 354);
  CHECK(codes::build_square_hexagonal(20).n_qubits() == 562);
  CHECK(codes::build_square_hexagonal(24).n_qubits() == 818);
}

TEST_CASE("square hexagonal lattices are trivalent three colorable structures") {
  for (size_t d : {4u, 8u, 12u}) {
    auto lat = codes::build_square_hexagonal(d);
    check_lattice_structure(lat);
    check_logicals(lat);

    size_t corners = 0;
    for (size_t q = 0; q < lat.n_qubits(); ++q)
      if (lat.links.degree(q) == 2) ++corners;
    CHECK(corners == 4);

    size_t squares = 0, hexagons = 0;
    for (const auto& p : lat.plaquettes) {
      REQUIRE((p.qubits.size() == 4 || p.qubits.size() == 6));
      ++(p.qubits.size() == 4 ? squares : hexagons);
    }
    CHECK(squares == 2 * d - 3);
    CHECK(hexagons == lat.n_plaquettes() - squares);
  }
}

TEST_CASE("invalid distances are rejected") {
  for (size_t d : {0u, 1u, 2u, 3u, 5u, 6u, 10u, 14u})
    CHECK_THROWS_AS(codes::build_square_hexagonal(d), std::invalid_argument);
}

TEST_CASE("smallest square hexagonal code has distance four") {
  auto lat = codes::build_square_hexagonal(4);
  size_t n = lat.n_qubits(), np = lat.n_plaquettes();
  REQUIRE(n == 18);
  REQUIRE(np == 8);

  gf2::BitMatrix h(np, n);
  for (size_t p = 0; p < np; ++p)
    for (size_t q : lat.plaquettes[p].qubits) h.set(p, q, true);
  gf2::BitMatrix ker = gf2::nullspace(h);
  REQUIRE(ker.rows() == n - np);

  SpanOracle row_space;
  for (size_t p = 0; p < np; ++p) {
    std::vector<char> row(n, 0);
    for (size_t q = 0; q < n; ++q) row[q] = h.get(p, q);
    row_space.add(std::move(row));
  }

  size_t best = n + 1;
  for (size_t mask = 1; mask < (size_t{1} << ker.rows()); ++mask) {
    std::vector<char> v(n, 0);
    for (size_t r = 0; r < ker.rows(); ++r)
      if (mask >> r & 1)
        for (size_t q = 0; q < n; ++q) v[q] ^= ker.get(r, q);
    if (row_space.contains(v)) continue;
    size_t weight = 0;
    for (char b : v) weight += b;
    best = std::min(best, weight);
  }
  CHECK(best == 4);
}

TEST_CASE("logical plus tableau is a valid stabilizer state") {
  auto lat7 = codes::build_seven_qubit();
  auto t7 = codes::logical_plus_tableau(lat7);
  REQUIRE(t7.n_qubits() == 7);
  CHECK(stab::check_valid(t7));
  CHECK(t7.column(0).to_string() == "XXXXIII");
  CHECK(t7.column(1).to_string() == "IXXIXXI");
  CHECK(t7.column(2).to_string() == "IIXXIXX");
  CHECK(t7.column(3).to_string() == "ZZZZIII");
  CHECK(t7.column(4).to_string() == "IZZIZZI");
  CHECK(t7.column(5).to_string() == "IIZZIZZ");
  CHECK(t7.column(6).to_string() == "XXIIXII");

  auto lat4 = codes::build_square_hexagonal(4);
  auto t4 = codes::logical_plus_tableau(lat4);
  REQUIRE(t4.n_qubits() == 18);  // 16 plaquette columns + 2 logical columns
  CHECK(stab::check_valid(t4));

  for (const auto* lat : {&lat7, &lat4}) {
    size_t n = lat->n_qubits();
    for (size_t i = 0; i < lat->n_logical(); ++i)
      for (size_t j = 0; j < lat->n_logical(); ++j) {
        auto x = pauli_on(n, lat->logical_x[i], stab::Axis::X);
        auto z = pauli_on(n, lat->logical_z[j], stab::Axis::Z);
        CHECK(x.commutes_with(z) == (i != j));
      }
  }
}

TEST_CASE("default geometric controls for the seven qubit code") {
  auto lat = codes::build_seven_qubit();
  auto asg = codes::assign_controls_geometric(lat);
  CHECK(asg.controls == std::vector<size_t>{0, 4, 6});
  CHECK(asg.targets == std::vector<size_t>{1, 2, 3, 5});
  CHECK(asg.recombination == gf2::BitMatrix::parse("100;010;001"));
  check_assignment(lat, asg);
}

TEST_CASE("alternative control choice recombines plaquettes") {
  auto lat = codes::build_seven_qubit();
  codes::AssignmentOptions opt;
  opt.explicit_controls = std::vector<size_t>{2, 4, 6};
  auto asg = codes::assign_controls_geometric(lat, opt);
  CHECK(asg.controls == std::vector<size_t>{2, 4, 6});
  // Recombined generators are the products P1, P1 P2, P1 P3.
  CHECK(asg.recombination == gf2::BitMatrix::parse("100;110;101"));
  check_assignment(lat, asg);
}

TEST_CASE("geometric assignment rejects unusable inputs") {
  auto lat = codes::build_seven_qubit();
  codes::AssignmentOptions opt;
  opt.explicit_controls = std::vector<size_t>{0, 1};
  CHECK_THROWS_AS(codes::assign_controls_geometric(lat, opt), std::invalid_argument);
  opt.explicit_controls = std::vector<size_t>{0, 1, 7};
  CHECK_THROWS_AS(codes::assign_controls_geometric(lat, opt), std::invalid_argument);
  opt.explicit_controls = std::vector<size_t>{0, 0, 1};
  CHECK_THROWS_AS(codes::assign_controls_geometric(lat, opt), std::invalid_argument);
  // Qubits {1,4,7} leave the middle plaquette without a control.
  opt.explicit_controls = std::vector<size_t>{0, 3, 6};
  CHECK_THROWS_AS(codes::assign_controls_geometric(lat, opt), std::invalid_argument);
  opt.explicit_controls = std::vector<size_t>{0, 4, 6};
  opt.forced_pair = {0, 1};
  CHECK_THROWS_AS(codes::assign_controls_geometric(lat, opt), std::invalid_argument);
  codes::AssignmentOptions bad_pair;
  bad_pair.forced_pair = {3, 3};
  CHECK_THROWS_AS(codes::assign_controls_geometric(lat, bad_pair), std::invalid_argument);
  bad_pair.forced_pair = {0, 9};
  CHECK_THROWS_AS(codes::assign_controls_geometric(lat, bad_pair), std::invalid_argument);
}

TEST_CASE("forced pair exhaustion reports no valid assignment") {
  codes::ColorCodeLattice degenerate;
  degenerate.positions = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  degenerate.plaquettes = {{{0, 1, 2, 3}, codes::FaceColor::Red},
                           {{1, 2, 3, 0}, codes::FaceColor::Green}};
  codes::AssignmentOptions opt;
  opt.forced_pair = {0, 1};
  CHECK_THROWS_AS(codes::assign_controls_geometric(degenerate, opt), std::domain_error);
}

TEST_CASE("seven qubit conversion reproduces the published graph") {
  auto lat = codes::build_seven_qubit();
  auto t = codes::logical_plus_tableau(lat);
  auto asg = codes::assign_controls_geometric(lat);
  auto res = stab::stab_to_graph(t, codes::to_stab_selection(asg));

  CHECK(res.controls == asg.targets);
  CHECK(res.targets == asg.controls);
  for (size_t q = 0; q < 7; ++q) {
    bool geometric_control = std::count(asg.controls.begin(), asg.controls.end(), q) > 0;
    CHECK(res.unitary.at(q) == (geometric_control ? stab::mat2::H : stab::mat2::I));
  }

  graph::Graph expected(7, {{0, 1}, {0, 2}, {0, 3}, {4, 1}, {4, 2}, {4, 5}, {6, 2}, {6, 3}, {6, 5}});
  CHECK(graph::Graph(res.gamma) == expected);
}

TEST_CASE("geometric assignments split conversion graphs into controls and targets") {
  for (size_t d : {4u, 8u}) {
    auto lat = codes::build_square_hexagonal(d);
    auto t = codes::logical_plus_tableau(lat);
    auto asg = codes::assign_controls_geometric(lat);
    check_assignment(lat, asg);
    auto res = stab::stab_to_graph(t, codes::to_stab_selection(asg));
    CHECK(res.controls == asg.targets);
    CHECK(res.targets == asg.controls);

    std::set<size_t> controls = to_set(asg.controls);
    for (size_t q = 0; q < lat.n_qubits(); ++q)
      CHECK(res.unitary.at(q) == (controls.count(q) ? stab::mat2::H : stab::mat2::I));
    graph::Graph g(res.gamma);
    for (const auto& [u, v] : g.edges())
      CHECK(controls.count(u) + controls.count(v) == 1);
  }
}

TEST_CASE("seeded geometric assignments are deterministic and valid") {
  auto lat = codes::build_square_hexagonal(4);
  for (uint64_t seed : {1u, 2u, 99u}) {
    codes::AssignmentOptions opt;
    opt.seed = seed;
    auto first = codes::assign_controls_geometric(lat, opt);
    auto second = codes::assign_controls_geometric(lat, opt);
    CHECK(first.controls == second.controls);
    CHECK(first.recombination == second.recombination);
    check_assignment(lat, first);
  }
  // Corner-first default puts all four degree-2 qubits in the control set.
  auto asg = codes::assign_controls_geometric(lat);
  for (size_t q = 0; q < lat.n_qubits(); ++q)
    if (lat.links.degree(q) == 2)
      CHECK(std::count(asg.controls.begin(), asg.controls.end(), q) == 1);
}

TEST_CASE("bulk region peels boundary layers") {
  auto lat4 = codes::build_square_hexagonal(4);
  auto bulk4 = codes::bulk_qubits(lat4);
  REQUIRE(bulk4.size() == 1);

  auto lat8 = codes::build_square_hexagonal(8);
  auto bulk8 = codes::bulk_qubits(lat8);
  REQUIRE(!bulk8.empty());
  CHECK(std::is_sorted(bulk8.begin(), bulk8.end()));

  // Peeling D/4 layers keeps exactly the qubits whose whole neighborhood up
  // to that depth sits on complete hexagons.
  for (const auto* lat : {&lat4, &lat8}) {
    auto qp = lat->qubit_plaquettes();
    auto on_shell = [&](size_t q) {
      if (qp[q].size() <= 2) return true;
      for (size_t p : qp[q])
        if (lat->plaquettes[p].qubits.size() != 6) return true;
      return false;
    };
    std::vector<size_t> expected;
    for (size_t q = 0; q < lat->n_qubits(); ++q) {
      bool keep = !on_shell(q);
      if (lat->distance == 8 && keep)
        for (size_t w : lat->links.neighbors(q)) keep = keep && !on_shell(w);
      if (keep) expected.push_back(q);
    }
    CHECK((lat->distance == 4 ? bulk4 : bulk8) == expected);
  }

  // Every bulk qubit sits on three complete hexagonal plaquettes.
  for (const auto* pair : {&bulk4, &bulk8}) {
    const auto& lat = pair == &bulk4 ? lat4 : lat8;
    auto qp = lat.qubit_plaquettes();
    for (size_t q : *pair) {
      REQUIRE(qp[q].size() == 3);
      for (size_t p : qp[q]) CHECK(lat.plaquettes[p].qubits.size() == 6);
    }
  }

  CHECK_THROWS_AS(codes::bulk_qubits(codes::build_seven_qubit()), std::invalid_argument);
  auto squares_only = codes::build_seven_qubit();
  squares_only.distance = 4;
  CHECK_THROWS_AS(codes::bulk_qubits(squares_only), std::domain_error);
}

TEST_CASE("witness supports follow the published size formulas") {
  auto lat = codes::build_square_hexagonal(8);
  for (size_t d = 1; d <= 6; ++d) {
    auto [a, b] = codes::bulk_pair_at_distance(lat, d);
    CHECK(a < b);
    auto w = codes::witness_plaquette_paths(lat, a, b);
    CHECK(w.a == a);
    CHECK(w.b == b);
    CHECK(w.distance == d);
    CHECK(w.n_x == 6 + 2 * ((d - 1) / 2));
    CHECK(w.n_z == 6 + 2 * (d / 2));
    CHECK(w.x_plaquettes.size() == (d + 1) / 2);
    CHECK(w.z_plaquettes.size() == d / 2 + 1);
    check_witness_conditions(lat, w);
  }
}

TEST_CASE("distance four witness uses two x plaquettes and three z plaquettes") {
  auto lat = codes::build_square_hexagonal(8);
  auto [a, b] = codes::bulk_pair_at_distance(lat, 4);
  auto w = codes::witness_plaquette_paths(lat, a, b);
  CHECK(w.x_plaquettes.size() == 2);
  CHECK(w.z_plaquettes.size() == 3);
  CHECK(w.n_x == 8);
  CHECK(w.n_z == 10);
}

TEST_CASE("straight layout mirrors the staircase side assignment") {
  auto lat = codes::build_square_hexagonal(8);

  auto [a4, b4] = codes::bulk_pair_at_distance(lat, 4);
  auto stair = codes::witness_plaquette_paths(lat, a4, b4, codes::WitnessLayout::Staircase);
  auto straight = codes::witness_plaquette_paths(lat, a4, b4, codes::WitnessLayout::Straight);
  CHECK(straight.n_x == stair.n_z);
  CHECK(straight.n_z == stair.n_x);
  CHECK(straight.x_plaquettes == stair.z_plaquettes);
  CHECK(straight.z_plaquettes == stair.x_plaquettes);
  check_witness_conditions(lat, straight);

  auto [a3, b3] = codes::bulk_pair_at_distance(lat, 3);
  auto odd_stair = codes::witness_plaquette_paths(lat, a3, b3, codes::WitnessLayout::Staircase);
  auto odd_straight = codes::witness_plaquette_paths(lat, a3, b3, codes::WitnessLayout::Straight);
  CHECK(odd_stair.n_x == 8);
  CHECK(odd_stair.n_z == 8);
  CHECK(odd_straight.n_x == 8);
  CHECK(odd_straight.n_z == 8);
}

TEST_CASE("witness construction rejects unusable pairs") {
  auto lat = codes::build_square_hexagonal(4);
  CHECK_THROWS_AS(codes::witness_plaquette_paths(lat, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(codes::witness_plaquette_paths(lat, 0, 99), std::invalid_argument);

  // A perimeter link lies on a single plaquette, so its endpoints admit no
  // two-sided plaquette chains.
  std::map<std::pair<size_t, size_t>, size_t> link_faces;
  for (const auto& p : lat.plaquettes)
    for (size_t i = 0; i < p.qubits.size(); ++i) {
      size_t u = p.qubits[i], v = p.qubits[(i + 1) % p.qubits.size()];
      ++link_faces[{std::min(u, v), std::max(u, v)}];
    }
  bool found = false;
  for (const auto& [link, count] : link_faces)
    if (count == 1) {
      CHECK_THROWS_AS(codes::witness_plaquette_paths(lat, link.first, link.second),
                      std::domain_error);
      found = true;
      break;
    }
  CHECK(found);
}

TEST_CASE("bulk pairs are deterministic and respect the requested distance") {
  auto lat = codes::build_square_hexagonal(8);
  auto bulk = codes::bulk_qubits(lat);
  std::set<size_t> in_bulk = to_set(bulk);
  for (size_t d : {1u, 2u, 3u}) {
    auto p1 = codes::bulk_pair_at_distance(lat, d);
    auto p2 = codes::bulk_pair_at_distance(lat, d);
    CHECK(p1 == p2);
    CHECK(in_bulk.count(p1.first) == 1);
    CHECK(in_bulk.count(p1.second) == 1);
    CHECK(graph::shortest_path(lat.links, p1.first, p1.second).size() == d + 1);
  }
  CHECK_THROWS_AS(codes::bulk_pair_at_distance(lat, 0), std::invalid_argument);
  CHECK_THROWS_AS(codes::bulk_pair_at_distance(lat, 100), std::domain_error);
}

TEST_CASE("forced pairs appear as links in the conversion graph") {
  auto lat = codes::build_square_hexagonal(8);
  auto [a, b] = codes::bulk_pair_at_distance(lat, 4);
  codes::AssignmentOptions opt;
  opt.forced_pair = {a, b};
  auto asg = codes::assign_controls_geometric(lat, opt);
  check_assignment(lat, asg);
  CHECK(std::count(asg.controls.begin(), asg.controls.end(), a) == 1);
  CHECK(std::count(asg.targets.begin(), asg.targets.end(), b) == 1);

  auto t = codes::logical_plus_tableau(lat);
  auto res = stab::stab_to_graph(t, codes::to_stab_selection(asg));
  CHECK(graph::Graph(res.gamma).has_edge(a, b));

  std::set<std::vector<size_t>> distinct;
  for (uint64_t seed : {1u, 2u, 3u}) {
    codes::AssignmentOptions seeded;
    seeded.forced_pair = {a, b};
    seeded.seed = seed;
    auto sa = codes::assign_controls_geometric(lat, seeded);
    check_assignment(lat, sa);
    CHECK(std::count(sa.controls.begin(), sa.controls.end(), a) == 1);
    auto sr = stab::stab_to_graph(t, codes::to_stab_selection(sa));
    CHECK(graph::Graph(sr.gamma).has_edge(a, b));
    distinct.insert(sa.controls);
  }
  CHECK(distinct.size() > 1);

  auto adjacent = codes::bulk_pair_at_distance(lat, 1);
  codes::AssignmentOptions near;
  near.forced_pair = {adjacent.first, adjacent.second};
  auto na = codes::assign_controls_geometric(lat, near);
  check_assignment(lat, na);
  auto nr = stab::stab_to_graph(t, codes::to_stab_selection(na));
  CHECK(graph::Graph(nr.gamma).has_edge(adjacent.first, adjacent.second));
}
