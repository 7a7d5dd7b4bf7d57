#include "lebounds/color_code.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "lebounds/rng.hpp"

namespace lebounds::codes {

using gf2::BitMatrix;

char face_color_letter(FaceColor color) {
  switch (color) {
    case FaceColor::Red: return 'R';
    case FaceColor::Green: return 'G';
    case FaceColor::Blue: return 'B';
  }
  throw std::invalid_argument("unknown face color");
}

FaceColor face_color_from_letter(char letter) {
  switch (letter) {
    case 'R': return FaceColor::Red;
    case 'G': return FaceColor::Green;
    case 'B': return FaceColor::Blue;
  }
  throw std::invalid_argument("face color letter must be R, G, or B");
}

std::vector<std::vector<size_t>> ColorCodeLattice::qubit_plaquettes() const {
  std::vector<std::vector<size_t>> qp(n_qubits());
  for (size_t p = 0; p < plaquettes.size(); ++p)
    for (size_t q : plaquettes[p].qubits) {
      if (q >= n_qubits()) throw std::invalid_argument("plaquette qubit index out of range");
      qp[q].push_back(p);
    }
  return qp;
}

BitMatrix ColorCodeLattice::incidence() const {
  BitMatrix m(n_qubits(), n_plaquettes());
  for (size_t p = 0; p < plaquettes.size(); ++p)
    for (size_t q : plaquettes[p].qubits) {
      if (q >= n_qubits()) throw std::invalid_argument("plaquette qubit index out of range");
      m.set(q, p, true);
    }
  return m;
}

namespace {

graph::Graph links_from_faces(size_t n, const std::vector<Plaquette>& faces) {
  graph::Graph g(n);
  for (const Plaquette& f : faces) {
    size_t s = f.qubits.size();
    for (size_t i = 0; i < s; ++i) {
      size_t u = f.qubits[i], v = f.qubits[(i + 1) % s];
      if (u == v) throw std::invalid_argument("inconsistent lattice: degenerate face cycle");
      g.add_edge(u, v);
    }
  }
  return g;
}

void compute_logicals(ColorCodeLattice& lat) {
  size_t n = lat.n_qubits(), np = lat.n_plaquettes();
  BitMatrix h(np, n);
  for (size_t p = 0; p < np; ++p)
    for (size_t q : lat.plaquettes[p].qubits) h.set(p, q, true);
  if (gf2::rank(h) != np)
    throw std::invalid_argument("inconsistent lattice: dependent plaquette operators");
  if (n < 2 * np + 1)
    throw std::invalid_argument("inconsistent lattice: no logical qubits");
  size_t k = n - 2 * np;

  BitMatrix ker = gf2::nullspace(h);
  gf2::RowBasis basis(n);
  for (size_t r = 0; r < np; ++r) basis.try_add(h, r);
  std::vector<std::vector<size_t>> reps;
  for (size_t r = 0; r < ker.rows(); ++r) {
    if (!basis.try_add(ker, r)) continue;
    std::vector<size_t> supp;
    for (size_t c = 0; c < n; ++c)
      if (ker.get(r, c)) supp.push_back(c);
    reps.push_back(std::move(supp));
  }
  if (reps.size() != k)
    throw std::invalid_argument("inconsistent lattice: logical operator count mismatch");

  // Pair the bases: adjust the z side so |x_p . z_q| is odd exactly at p = q.
  BitMatrix g(k, k);
  for (size_t p = 0; p < k; ++p)
    for (size_t q = 0; q < k; ++q) {
      std::vector<size_t> common;
      std::set_intersection(reps[p].begin(), reps[p].end(), reps[q].begin(), reps[q].end(),
                            std::back_inserter(common));
      if (common.size() % 2) g.set(p, q, true);
    }
  BitMatrix adjust(0, 0);
  try {
    adjust = gf2::invert(g);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("inconsistent lattice: degenerate logical pairing");
  }
  lat.logical_x = reps;
  lat.logical_z.assign(k, {});
  for (size_t q = 0; q < k; ++q) {
    std::vector<char> acc(n, 0);
    for (size_t r = 0; r < k; ++r)
      if (adjust.get(q, r))
        for (size_t c : reps[r]) acc[c] ^= 1;
    for (size_t c = 0; c < n; ++c)
      if (acc[c]) lat.logical_z[q].push_back(c);
  }
}

// Axial coordinates on the dual triangular lattice; neighbors differ by kDirs.
struct IVec {
  int i = 0, j = 0;
  friend bool operator<(const IVec& a, const IVec& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  }
  friend bool operator==(const IVec& a, const IVec& b) { return a.i == b.i && a.j == b.j; }
};

constexpr std::array<IVec, 6> kDirs{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

IVec step(const IVec& v, const IVec& d) { return {v.i + d.i, v.j + d.j}; }

// Up triangle corners: (i,j), (i+1,j), (i,j+1); down: (i+1,j), (i,j+1), (i+1,j+1).
struct TriRef {
  bool up = true;
  int i = 0, j = 0;
  friend bool operator<(const TriRef& a, const TriRef& b) {
    return std::tie(a.up, a.i, a.j) < std::tie(b.up, b.i, b.j);
  }
};

std::array<IVec, 3> tri_corners(const TriRef& t) {
  if (t.up) return {IVec{t.i, t.j}, IVec{t.i + 1, t.j}, IVec{t.i, t.j + 1}};
  return {IVec{t.i + 1, t.j}, IVec{t.i, t.j + 1}, IVec{t.i + 1, t.j + 1}};
}

// The six triangles around a vertex in ccw order; sector k sits between
// directions kDirs[k] and kDirs[k+1].
TriRef sector_triangle(const IVec& v, size_t k) {
  switch (k) {
    case 0: return {true, v.i, v.j};
    case 1: return {false, v.i - 1, v.j};
    case 2: return {true, v.i - 1, v.j};
    case 3: return {false, v.i - 1, v.j - 1};
    case 4: return {true, v.i, v.j - 1};
    case 5: return {false, v.i, v.j - 1};
  }
  throw std::logic_error("sector index out of range");
}

// Exact positions in units of 1/108 horizontally and sqrt(3)/108 vertically,
// so qubit labels come from an integer row-major sort.
struct IPos {
  long long x = 0, y = 0;
  friend bool operator<(const IPos& a, const IPos& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  }
  friend bool operator==(const IPos& a, const IPos& b) { return a.x == b.x && a.y == b.y; }
};

IPos vertex_pos(const IVec& v) { return {108LL * v.i + 54LL * v.j, 54LL * v.j}; }

IPos tri_pos(const TriRef& t) {
  auto c = tri_corners(t);
  long long si = c[0].i + c[1].i + c[2].i;
  long long sj = c[0].j + c[1].j + c[2].j;
  return {36 * si + 18 * sj, 18 * sj};
}

std::pair<IVec, IVec> edge_key(const IVec& a, const IVec& b) {
  IVec d{b.i - a.i, b.j - a.j};
  if ((d.i == 1 && d.j == 0) || (d.i == 0 && d.j == 1) || (d.i == 1 && d.j == -1))
    return {a, b};
  return {b, a};
}

}  // namespace

ColorCodeLattice build_square_hexagonal(size_t distance) {
  if (distance == 0 || distance % 4 != 0)
    throw std::invalid_argument("distance must be a positive multiple of 4");
  int l = static_cast<int>(3 * distance / 2 - 2);

  // Dual region: a rhombus of triangular-lattice vertices, one per plaquette.
  std::set<IVec> region;
  for (int i = 0; 3 * i <= 2 * l; ++i)
    for (int j = i - l; j <= i; ++j)
      if (0 <= 2 * i + j && 2 * i + j <= l) region.insert({i, j});
  auto in_region = [&](const IVec& v) { return region.count(v) > 0; };

  std::set<TriRef> full;
  for (const IVec& v : region)
    for (size_t k = 0; k < 6; ++k) {
      TriRef t = sector_triangle(v, k);
      auto corners = tri_corners(t);
      if (in_region(corners[0]) && in_region(corners[1]) && in_region(corners[2]))
        full.insert(t);
    }

  // Boundary dual edges (exactly one adjacent full triangle) host edge qubits.
  std::map<std::pair<IVec, IVec>, TriRef> edge_tri;
  for (const IVec& u : region) {
    const std::array<std::pair<IVec, std::array<TriRef, 2>>, 3> near{{
        {step(u, kDirs[0]), {TriRef{true, u.i, u.j}, TriRef{false, u.i, u.j - 1}}},
        {step(u, kDirs[1]), {TriRef{true, u.i, u.j}, TriRef{false, u.i - 1, u.j}}},
        {step(u, kDirs[5]), {TriRef{true, u.i, u.j - 1}, TriRef{false, u.i, u.j - 1}}},
    }};
    for (const auto& [v, tris] : near) {
      if (!in_region(v)) continue;
      bool f0 = full.count(tris[0]) > 0, f1 = full.count(tris[1]) > 0;
      if (f0 != f1) edge_tri[{u, v}] = f0 ? tris[0] : tris[1];
    }
  }

  // One maximal run of full sectors per vertex; odd runs get a corner qubit.
  struct VertexInfo {
    std::vector<size_t> run;
    bool interior = false;
  };
  std::map<IVec, VertexInfo> info;
  std::map<IVec, TriRef> corner_middle;
  for (const IVec& v : region) {
    std::array<bool, 6> sec{};
    int f = 0;
    for (size_t k = 0; k < 6; ++k) {
      TriRef t = sector_triangle(v, k);
      sec[k] = full.count(t) > 0;
      f += sec[k] ? 1 : 0;
    }
    if (f == 0)
      throw std::invalid_argument("inconsistent lattice: isolated dual vertex");
    VertexInfo vi;
    if (f == 6) {
      vi.interior = true;
      vi.run = {0, 1, 2, 3, 4, 5};
    } else {
      int starts = 0;
      size_t start = 0;
      for (size_t k = 0; k < 6; ++k)
        if (sec[k] && !sec[(k + 5) % 6]) {
          ++starts;
          start = k;
        }
      if (starts != 1)
        throw std::invalid_argument("inconsistent lattice: fragmented plaquette sectors");
      for (size_t k = start; sec[k % 6]; ++k) vi.run.push_back(k % 6);
      size_t face_size = vi.run.size() + 2 + vi.run.size() % 2;
      if (face_size != 4 && face_size != 6)
        throw std::invalid_argument("inconsistent lattice: face size is neither 4 nor 6");
      if (vi.run.size() % 2)
        corner_middle[v] = sector_triangle(v, vi.run[vi.run.size() / 2]);
    }
    info[v] = std::move(vi);
  }

  // Register qubits, then relabel them row-major by exact position.
  std::vector<IPos> tmp_pos;
  std::map<TriRef, size_t> tri_id;
  std::map<std::pair<IVec, IVec>, size_t> edge_id;
  std::map<IVec, size_t> corner_id;
  for (const TriRef& t : full) {
    tri_id[t] = tmp_pos.size();
    tmp_pos.push_back(tri_pos(t));
  }
  for (const auto& [e, t] : edge_tri) {
    IPos pu = vertex_pos(e.first), pv = vertex_pos(e.second), pt = tri_pos(t);
    edge_id[e] = tmp_pos.size();
    tmp_pos.push_back({pu.x + pv.x - pt.x, pu.y + pv.y - pt.y});
  }
  for (const auto& [v, t] : corner_middle) {
    IPos pv = vertex_pos(v), pt = tri_pos(t);
    corner_id[v] = tmp_pos.size();
    tmp_pos.push_back({2 * pv.x - pt.x, 2 * pv.y - pt.y});
  }
  size_t n = tmp_pos.size();
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return tmp_pos[a] < tmp_pos[b]; });
  for (size_t r = 0; r + 1 < n; ++r)
    if (tmp_pos[idx[r]] == tmp_pos[idx[r + 1]])
      throw std::invalid_argument("inconsistent lattice: coincident qubit positions");
  std::vector<size_t> label(n);
  for (size_t r = 0; r < n; ++r) label[idx[r]] = r;

  ColorCodeLattice lat;
  lat.distance = distance;
  lat.positions.resize(n);
  double unit_y = std::sqrt(3.0) / 108.0;
  for (size_t t = 0; t < n; ++t)
    lat.positions[label[t]] = {static_cast<double>(tmp_pos[t].x) / 108.0,
                               static_cast<double>(tmp_pos[t].y) * unit_y};

  auto edge_label = [&](const IVec& a, const IVec& b) {
    auto it = edge_id.find(edge_key(a, b));
    if (it == edge_id.end())
      throw std::invalid_argument("inconsistent lattice: missing boundary edge qubit");
    return label[it->second];
  };

  // Plaquettes in row order of their dual vertices.
  std::vector<IVec> face_order(region.begin(), region.end());
  std::sort(face_order.begin(), face_order.end(), [](const IVec& a, const IVec& b) {
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  });
  for (const IVec& v : face_order) {
    const VertexInfo& vi = info[v];
    Plaquette p;
    if (vi.interior) {
      for (size_t k : vi.run) p.qubits.push_back(label[tri_id.at(sector_triangle(v, k))]);
    } else {
      p.qubits.push_back(edge_label(v, step(v, kDirs[vi.run.front()])));
      for (size_t k : vi.run) p.qubits.push_back(label[tri_id.at(sector_triangle(v, k))]);
      p.qubits.push_back(edge_label(v, step(v, kDirs[(vi.run.back() + 1) % 6])));
      if (vi.run.size() % 2) p.qubits.push_back(label[corner_id.at(v)]);
    }
    int c = ((v.i - v.j) % 3 + 3) % 3;
    p.color = c == 0 ? FaceColor::Red : c == 1 ? FaceColor::Green : FaceColor::Blue;
    lat.plaquettes.push_back(std::move(p));
  }

  lat.links = links_from_faces(n, lat.plaquettes);
  compute_logicals(lat);
  return lat;
}

ColorCodeLattice build_seven_qubit() {
  ColorCodeLattice lat;
  lat.distance = 3;
  double s = std::sqrt(3.0);
  lat.positions = {{0.0, s},    {-0.5, s / 2}, {0.0, s / 3}, {0.5, s / 2},
                   {-1.0, 0.0}, {0.0, 0.0},    {1.0, 0.0}};
  lat.plaquettes = {{{0, 1, 2, 3}, FaceColor::Red},
                    {{1, 4, 5, 2}, FaceColor::Green},
                    {{2, 5, 6, 3}, FaceColor::Blue}};
  lat.links = links_from_faces(7, lat.plaquettes);
  lat.logical_x = {{0, 1, 4}};
  lat.logical_z = {{0, 3, 6}};
  return lat;
}

stab::StabilizerTableau logical_plus_tableau(const ColorCodeLattice& lattice) {
  size_t n = lattice.n_qubits(), np = lattice.n_plaquettes();
  size_t k = lattice.n_logical();
  if (n != 2 * np + k)
    throw std::invalid_argument("inconsistent lattice: qubit, plaquette, and logical counts");
  BitMatrix a(2 * n, n);
  for (size_t p = 0; p < np; ++p)
    for (size_t q : lattice.plaquettes[p].qubits) {
      a.set(n + q, p, true);  // x-type plaquette column
      a.set(q, np + p, true);  // z-type plaquette column
    }
  for (size_t i = 0; i < k; ++i)
    for (size_t q : lattice.logical_x[i]) {
      if (q >= n) throw std::invalid_argument("logical operator qubit index out of range");
      a.set(n + q, 2 * np + i, true);
    }
  return stab::StabilizerTableau(n, std::move(a));
}

std::vector<size_t> bulk_qubits(const ColorCodeLattice& lattice) {
  if (lattice.distance == 0 || lattice.distance % 4 != 0)
    throw std::invalid_argument("bulk peeling requires a distance that is a positive multiple of 4");
  size_t n = lattice.n_qubits();
  auto qp = lattice.qubit_plaquettes();
  std::vector<int> dist(n, -1);
  std::vector<size_t> queue;
  for (size_t q = 0; q < n; ++q) {
    bool shell = qp[q].size() <= 2;
    for (size_t p : qp[q])
      if (lattice.plaquettes[p].qubits.size() != 6) shell = true;
    if (shell) {
      dist[q] = 0;
      queue.push_back(q);
    }
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    size_t q = queue[head];
    for (size_t w : lattice.links.neighbors(q))
      if (dist[w] < 0) {
        dist[w] = dist[q] + 1;
        queue.push_back(w);
      }
  }
  int depth = static_cast<int>(lattice.distance / 4);
  std::vector<size_t> bulk;
  for (size_t q = 0; q < n; ++q)
    if (dist[q] < 0 || dist[q] >= depth) bulk.push_back(q);
  if (bulk.empty())
    throw std::domain_error("lattice too small: bulk is empty after boundary peeling");
  return bulk;
}

namespace {

// Controls for a forced pair (a, b): complete {a} with qubits outside the
// support of a plaquette product through a and b, preferring products of a
// short path of adjacent plaquettes over randomly sampled combinations.
std::vector<size_t> forced_pair_geometric(const ColorCodeLattice& lattice, const BitMatrix& inc,
                                          size_t a, size_t b, uint64_t seed) {
  size_t n = lattice.n_qubits(), np = lattice.n_plaquettes();
  std::vector<std::vector<char>> candidates;
  auto add_chain = [&](const std::vector<size_t>& chain) {
    std::vector<char> acc(n, 0);
    for (size_t p : chain)
      for (size_t q : lattice.plaquettes[p].qubits) acc[q] ^= 1;
    if (acc[a] && acc[b]) candidates.push_back(std::move(acc));
  };
  for (size_t p = 0; p < np; ++p) add_chain({p});
  try {
    auto w = witness_plaquette_paths(lattice, a, b);
    add_chain(w.x_plaquettes);
    add_chain(w.z_plaquettes);
  } catch (const std::domain_error&) {
  } catch (const std::invalid_argument&) {
  }

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  seeded_shuffle(order, rng);
  for (const auto& y : candidates) {
    gf2::RowBasis basis(np);
    if (!basis.try_add(inc, a)) break;
    std::vector<size_t> chosen{a};
    for (size_t r : order) {
      if (chosen.size() == np) break;
      if (r == a || y[r]) continue;
      if (basis.try_add(inc, r)) chosen.push_back(r);
    }
    if (chosen.size() == np) return chosen;
  }
  return gf2::forced_pair_rows(inc, a, b, seed);
}

}  // namespace

ControlAssignment assign_controls_geometric(const ColorCodeLattice& lattice,
                                            const AssignmentOptions& options) {
  size_t n = lattice.n_qubits(), np = lattice.n_plaquettes();
  if (n == 0 || np == 0) throw std::invalid_argument("lattice has no plaquettes");
  if (options.explicit_controls && options.forced_pair)
    throw std::invalid_argument("explicit controls cannot be combined with a forced pair");
  BitMatrix inc = lattice.incidence();

  std::vector<size_t> controls;
  if (options.explicit_controls) {
    controls = *options.explicit_controls;
    if (controls.size() != np)
      throw std::invalid_argument("explicit control set has wrong size");
    for (size_t q : controls)
      if (q >= n) throw std::invalid_argument("explicit control index out of range");
    std::sort(controls.begin(), controls.end());
    if (std::adjacent_find(controls.begin(), controls.end()) != controls.end())
      throw std::invalid_argument("explicit control set has repeated qubits");
    if (gf2::rank(inc.submatrix_rows(controls)) != np)
      throw std::invalid_argument("explicit control set cannot give every plaquette its own control");
  } else if (options.forced_pair) {
    auto [a, b] = *options.forced_pair;
    if (a >= n || b >= n || a == b) throw std::invalid_argument("forced pair indices invalid");
    controls = forced_pair_geometric(lattice, inc, a, b, options.seed.value_or(0));
  } else if (options.seed) {
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(*options.seed);
    seeded_shuffle(order, rng);
    controls = gf2::independent_rows(inc, np, order);
  } else {
    // Corner-first greedy: fewest plaquette memberships first, then label order.
    auto qp = lattice.qubit_plaquettes();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return qp[a].size() < qp[b].size(); });
    controls = gf2::independent_rows(inc, np, order);
  }
  std::sort(controls.begin(), controls.end());

  BitMatrix by_plaquette(np, np);
  for (size_t c = 0; c < np; ++c)
    for (size_t p = 0; p < np; ++p)
      if (inc.get(controls[c], p)) by_plaquette.set(p, c, true);

  ControlAssignment out;
  out.controls = controls;
  out.recombination = gf2::invert(by_plaquette);
  std::vector<char> is_control(n, 0);
  for (size_t q : controls) is_control[q] = 1;
  for (size_t q = 0; q < n; ++q)
    if (!is_control[q]) out.targets.push_back(q);
  return out;
}

stab::ControlSelection to_stab_selection(const ControlAssignment& assignment) {
  return stab::ControlSelection::explicit_set(assignment.targets);
}

namespace {

double turn_cross(const std::array<double, 2>& a, const std::array<double, 2>& b,
                  const std::array<double, 2>& c) {
  return (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
}

// Walk of the given length whose turns alternate left and right, starting
// with the given turn at the second node; unique when it exists.
std::optional<std::vector<size_t>> alternating_walk(const ColorCodeLattice& lat, size_t a,
                                                    size_t first, bool turn_left, size_t steps) {
  std::vector<size_t> path{a, first};
  std::vector<char> used(lat.n_qubits(), 0);
  used[a] = used[first] = 1;
  bool want_left = turn_left;
  while (path.size() < steps + 1) {
    size_t u = path[path.size() - 2], v = path.back();
    std::optional<size_t> next;
    for (size_t w : lat.links.neighbors(v)) {
      if (w == u) continue;
      double cr = turn_cross(lat.positions[u], lat.positions[v], lat.positions[w]);
      if (cr == 0.0) return std::nullopt;
      if ((cr > 0.0) != want_left) continue;
      if (next) return std::nullopt;
      next = w;
    }
    if (!next || used[*next]) return std::nullopt;
    used[*next] = 1;
    path.push_back(*next);
    want_left = !want_left;
  }
  return path;
}

}  // namespace

WitnessConstruction witness_plaquette_paths(const ColorCodeLattice& lattice, size_t a, size_t b,
                                            WitnessLayout layout) {
  size_t n = lattice.n_qubits();
  if (a >= n || b >= n) throw std::invalid_argument("witness qubit index out of range");
  if (a == b) throw std::invalid_argument("witness qubits must differ");
  size_t d = graph::shortest_path(lattice.links, a, b).size() - 1;

  std::optional<std::vector<size_t>> found;
  for (size_t first : lattice.links.neighbors(a)) {
    for (bool phase : {true, false}) {
      auto walk = alternating_walk(lattice, a, first, phase, d);
      if (walk && walk->back() == b) {
        found = std::move(walk);
        break;
      }
    }
    if (found) break;
  }
  if (!found)
    throw std::domain_error("no valid witness layout: pair admits no alternating-turn path");
  const std::vector<size_t>& path = *found;

  std::map<std::pair<size_t, size_t>, std::vector<size_t>> on_link;
  for (size_t p = 0; p < lattice.plaquettes.size(); ++p) {
    const auto& cyc = lattice.plaquettes[p].qubits;
    for (size_t i = 0; i < cyc.size(); ++i) {
      size_t u = cyc[i], v = cyc[(i + 1) % cyc.size()];
      on_link[{std::min(u, v), std::max(u, v)}].push_back(p);
    }
  }
  auto centroid = [&](size_t p) {
    std::array<double, 2> c{0.0, 0.0};
    for (size_t q : lattice.plaquettes[p].qubits) {
      c[0] += lattice.positions[q][0];
      c[1] += lattice.positions[q][1];
    }
    c[0] /= static_cast<double>(lattice.plaquettes[p].qubits.size());
    c[1] /= static_cast<double>(lattice.plaquettes[p].qubits.size());
    return c;
  };

  std::vector<size_t> left, right;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    size_t u = path[i], v = path[i + 1];
    auto it = on_link.find({std::min(u, v), std::max(u, v)});
    if (it == on_link.end() || it->second.size() != 2)
      throw std::domain_error("no valid witness layout: path crosses a boundary link");
    std::optional<size_t> lp, rp;
    for (size_t p : it->second) {
      auto c = centroid(p);
      double cr = (lattice.positions[v][0] - lattice.positions[u][0]) *
                      (c[1] - lattice.positions[u][1]) -
                  (lattice.positions[v][1] - lattice.positions[u][1]) *
                      (c[0] - lattice.positions[u][0]);
      if (cr > 0.0)
        lp = p;
      else if (cr < 0.0)
        rp = p;
    }
    if (!lp || !rp)
      throw std::domain_error("no valid witness layout: degenerate face placement");
    if (left.empty() || left.back() != *lp) left.push_back(*lp);
    if (right.empty() || right.back() != *rp) right.push_back(*rp);
  }
  auto distinct = [](const std::vector<size_t>& v) {
    std::set<size_t> s(v.begin(), v.end());
    return s.size() == v.size();
  };
  if (!distinct(left) || !distinct(right))
    throw std::domain_error("no valid witness layout: plaquette chain revisits a face");

  auto chain_support = [&](const std::vector<size_t>& chain) {
    std::vector<char> acc(n, 0);
    for (size_t p : chain)
      for (size_t q : lattice.plaquettes[p].qubits) acc[q] ^= 1;
    std::vector<size_t> s;
    for (size_t q = 0; q < n; ++q)
      if (acc[q]) s.push_back(q);
    return s;
  };
  std::vector<size_t> supp_left = chain_support(left), supp_right = chain_support(right);
  std::vector<size_t> overlap;
  std::set_intersection(supp_left.begin(), supp_left.end(), supp_right.begin(), supp_right.end(),
                        std::back_inserter(overlap));
  if (overlap != std::vector<size_t>{std::min(a, b), std::max(a, b)})
    throw std::domain_error("no valid witness layout: chain supports meet beyond the endpoints");

  bool left_small = left.size() <= right.size();
  bool x_is_left = layout == WitnessLayout::Staircase ? left_small : !left_small;
  WitnessConstruction w;
  w.a = a;
  w.b = b;
  w.distance = d;
  w.path = path;
  w.x_plaquettes = x_is_left ? left : right;
  w.z_plaquettes = x_is_left ? right : left;
  const auto& supp_x = x_is_left ? supp_left : supp_right;
  const auto& supp_z = x_is_left ? supp_right : supp_left;
  w.sx = stab::PauliString(n);
  for (size_t q : supp_x) w.sx.set_axis(q, stab::Axis::X);
  w.sz = stab::PauliString(n);
  for (size_t q : supp_z) w.sz.set_axis(q, stab::Axis::Z);
  w.n_x = supp_x.size();
  w.n_z = supp_z.size();
  return w;
}

std::pair<size_t, size_t> bulk_pair_at_distance(const ColorCodeLattice& lattice, size_t d,
                                                WitnessLayout layout) {
  if (d == 0) throw std::invalid_argument("pair distance must be positive");
  std::vector<size_t> bulk = bulk_qubits(lattice);
  size_t n = lattice.n_qubits();
  std::vector<char> in_bulk(n, 0);
  for (size_t q : bulk) in_bulk[q] = 1;
  for (size_t a : bulk) {
    std::vector<int> dist(n, -1);
    std::vector<size_t> queue{a};
    dist[a] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      size_t q = queue[head];
      for (size_t w : lattice.links.neighbors(q))
        if (dist[w] < 0) {
          dist[w] = dist[q] + 1;
          queue.push_back(w);
        }
    }
    for (size_t b : bulk) {
      if (b <= a || dist[b] != static_cast<int>(d)) continue;
      try {
        witness_plaquette_paths(lattice, a, b, layout);
        return {a, b};
      } catch (const std::domain_error&) {
      }
    }
  }
  throw std::domain_error("no bulk qubit pair at the requested lattice distance");
}

}  // namespace lebounds::codes
