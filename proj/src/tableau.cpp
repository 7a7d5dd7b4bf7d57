#include "lebounds/tableau.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "lebounds/rng.hpp"

namespace lebounds::stab {

using gf2::BitMatrix;

StabilizerTableau::StabilizerTableau(size_t n_qubits, BitMatrix a)
    : n_(n_qubits), a_(std::move(a)) {
  if (a_.rows() != 2 * n_ || a_.cols() != n_)
    throw std::invalid_argument("StabilizerTableau: matrix must be 2N x N");
}

StabilizerTableau StabilizerTableau::from_paulis(const std::vector<PauliString>& generators) {
  size_t n = generators.size();
  BitMatrix a(2 * n, n);
  for (size_t j = 0; j < n; ++j) {
    if (generators[j].n_qubits() != n)
      throw std::invalid_argument("StabilizerTableau: generator count must equal qubit count");
    for (size_t i = 0; i < n; ++i) {
      if (generators[j].z(i)) a.set(i, j, true);
      if (generators[j].x(i)) a.set(n + i, j, true);
    }
  }
  return StabilizerTableau(n, std::move(a));
}

PauliString StabilizerTableau::column(size_t j) const {
  PauliString p(n_);
  for (size_t i = 0; i < n_; ++i)
    p.set_axis(i, axis_from_bits(a_.get(i, j), a_.get(n_ + i, j)));
  return p;
}

bool check_valid(const StabilizerTableau& t) {
  size_t n = t.n_qubits();
  if (gf2::rank(t.a()) != n) return false;
  BitMatrix z(n, n), x(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (t.a().get(i, j)) z.set(i, j, true);
      if (t.a().get(n + i, j)) x.set(i, j, true);
    }
  // Mutual commutation: Z^T X + X^T Z = 0, i.e. the two products coincide.
  return multiply(z.transposed(), x) == multiply(x.transposed(), z);
}

StabilizerTableau apply_local_clifford(const StabilizerTableau& t, const LocalCliffordLayer& u) {
  size_t n = t.n_qubits();
  if (u.n_qubits() != n)
    throw std::invalid_argument("apply_local_clifford: size mismatch");
  BitMatrix out(2 * n, n);
  for (size_t i = 0; i < n; ++i) {
    const Mat2& m = u.at(i);
    for (size_t j = 0; j < n; ++j) {
      bool z = t.a().get(i, j), x = t.a().get(n + i, j);
      m.apply(z, x);
      if (z) out.set(i, j, true);
      if (x) out.set(n + i, j, true);
    }
  }
  return StabilizerTableau(n, std::move(out));
}

StabilizerTableau recombine(const StabilizerTableau& t, const BitMatrix& r) {
  if (r.rows() != t.n_qubits() || r.cols() != t.n_qubits() || gf2::rank(r) != r.rows())
    throw std::invalid_argument("recombine: matrix must be square invertible");
  return StabilizerTableau(t.n_qubits(), multiply(t.a(), r));
}

StabilizerTableau graph_to_tableau(const graph::Graph& g) {
  size_t n = g.n();
  BitMatrix a(2 * n, n);
  for (size_t i = 0; i < n; ++i) {
    a.set(n + i, i, true);
    for (size_t j = 0; j < n; ++j)
      if (g.has_edge(i, j)) a.set(j, i, true);
  }
  return StabilizerTableau(n, std::move(a));
}

bool tableau_equivalent(const StabilizerTableau& t1, const StabilizerTableau& t2) {
  if (t1.n_qubits() != t2.n_qubits()) return false;
  size_t n = t1.n_qubits();
  BitMatrix joint(2 * n, 2 * n);
  for (size_t i = 0; i < 2 * n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (t1.a().get(i, j)) joint.set(i, j, true);
      if (t2.a().get(i, j)) joint.set(i, n + j, true);
    }
  size_t r1 = gf2::rank(t1.a());
  size_t r2 = gf2::rank(t2.a());
  return r1 == r2 && gf2::rank(joint) == r1;
}

ControlSelection ControlSelection::seeded(uint64_t seed) {
  ControlSelection s;
  s.kind = Kind::Seeded;
  s.seed = seed;
  return s;
}

ControlSelection ControlSelection::explicit_set(std::vector<size_t> controls) {
  ControlSelection s;
  s.kind = Kind::Explicit;
  s.controls = std::move(controls);
  return s;
}

ControlSelection ControlSelection::forced_pair(size_t a, size_t b) {
  ControlSelection s;
  s.kind = Kind::ForcedPair;
  s.pair_a = a;
  s.pair_b = b;
  return s;
}

namespace {

std::vector<size_t> pick_controls(const BitMatrix& xl, const ControlSelection& sel) {
  size_t n_rows = xl.rows(), n = xl.cols();
  switch (sel.kind) {
    case ControlSelection::Kind::Greedy:
      return gf2::independent_rows(xl, n);
    case ControlSelection::Kind::Seeded: {
      std::vector<size_t> order(n_rows);
      for (size_t i = 0; i < n_rows; ++i) order[i] = i;
      std::mt19937_64 rng(sel.seed);
      seeded_shuffle(order, rng);
      return gf2::independent_rows(xl, n, order);
    }
    case ControlSelection::Kind::Explicit: {
      if (sel.controls.size() != n)
        throw std::invalid_argument("explicit control set has wrong size");
      for (size_t c : sel.controls)
        if (c >= n_rows) throw std::invalid_argument("explicit control index out of range");
      if (gf2::rank(xl.submatrix_rows(sel.controls)) != n)
        throw std::invalid_argument("explicit control set does not span full rank");
      return sel.controls;
    }
    case ControlSelection::Kind::ForcedPair: {
      if (sel.pair_a >= n_rows || sel.pair_b >= n_rows || sel.pair_a == sel.pair_b)
        throw std::invalid_argument("forced pair indices invalid");
      return gf2::forced_pair_rows(xl, sel.pair_a, sel.pair_b, sel.seed);
    }
  }
  throw std::invalid_argument("unknown control selection kind");
}

}  // namespace

GraphConversionResult stab_to_graph(const StabilizerTableau& t, const ControlSelection& sel) {
  if (!check_valid(t)) throw std::invalid_argument("invalid tableau");
  size_t nq = t.n_qubits();

  // Column echelon form of the X block with operations on the whole tableau.
  auto red = gf2::column_reduce(t.a(), nq);
  const BitMatrix& a1 = red.reduced;
  size_t n = red.pivot_count;

  BitMatrix xl(nq, n);
  for (size_t r = 0; r < nq; ++r)
    for (size_t c = 0; c < n; ++c)
      if (a1.get(nq + r, c)) xl.set(r, c, true);

  std::vector<size_t> controls = pick_controls(xl, sel);
  std::sort(controls.begin(), controls.end());
  std::vector<bool> is_control(nq, false);
  for (size_t c : controls) is_control[c] = true;
  std::vector<size_t> targets;
  for (size_t i = 0; i < nq; ++i)
    if (!is_control[i]) targets.push_back(i);

  // Hadamard on every target: swap its Z and X rows.
  BitMatrix a2 = a1;
  for (size_t tq : targets) a2.swap_rows(tq, nq + tq);

  BitMatrix bottom(nq, nq);
  for (size_t r = 0; r < nq; ++r)
    for (size_t c = 0; c < nq; ++c)
      if (a2.get(nq + r, c)) bottom.set(r, c, true);
  BitMatrix r1;
  try {
    r1 = gf2::invert(bottom);
  } catch (const std::invalid_argument&) {
    throw std::logic_error("stab_to_graph: transformed X block is singular");
  }

  BitMatrix a3 = multiply(a2, r1);
  BitMatrix gamma(nq, nq);
  for (size_t r = 0; r < nq; ++r)
    for (size_t c = 0; c < nq; ++c)
      if (a3.get(r, c)) gamma.set(r, c, true);
  for (size_t r = 0; r < nq; ++r)
    for (size_t c = 0; c < nq; ++c) {
      if (gamma.get(r, c) != gamma.get(c, r))
        throw std::logic_error("stab_to_graph: resulting matrix is not symmetric");
      if (a3.get(nq + r, c) != (r == c))
        throw std::logic_error("stab_to_graph: X block did not reduce to identity");
    }

  LocalCliffordLayer unitary(nq);
  for (size_t tq : targets) unitary.set(tq, mat2::H);
  for (size_t i = 0; i < nq; ++i) {
    if (gamma.get(i, i)) {
      unitary.set(i, mat2_multiply(mat2::S, unitary.at(i)));
      gamma.set(i, i, false);
    }
  }

  GraphConversionResult out;
  out.gamma = std::move(gamma);
  out.controls = std::move(controls);
  out.targets = std::move(targets);
  out.unitary = std::move(unitary);
  out.recombination = multiply(red.r, r1);

  if (sel.kind == ControlSelection::Kind::ForcedPair &&
      !out.gamma.get(sel.pair_a, sel.pair_b))
    throw std::logic_error("stab_to_graph: forced pair link missing");
  return out;
}

}  // namespace lebounds::stab
