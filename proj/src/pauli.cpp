#include "lebounds/pauli.hpp"

#include <stdexcept>

namespace lebounds::stab {

Axis axis_from_bits(bool z, bool x) {
  if (z) return x ? Axis::Y : Axis::Z;
  return x ? Axis::X : Axis::I;
}

void bits_from_axis(Axis a, bool& z, bool& x) {
  z = (a == Axis::Z || a == Axis::Y);
  x = (a == Axis::X || a == Axis::Y);
}

char axis_letter(Axis a) {
  switch (a) {
    case Axis::I: return 'I';
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  throw std::invalid_argument("axis_letter: bad axis");
}

Axis axis_from_letter(char c) {
  switch (c) {
    case 'I': return Axis::I;
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
  }
  throw std::invalid_argument("axis_from_letter: expected one of I, X, Y, Z");
}

Mat2 Mat2::inverse() const {
  if (!invertible()) throw std::invalid_argument("Mat2::inverse: singular matrix");
  // det = 1 over GF(2), so the adjugate is the inverse.
  return Mat2{d, b, c, a};
}

void Mat2::apply(bool& z, bool& x) const {
  bool nz = (a && z) != (b && x);
  bool nx = (c && z) != (d && x);
  z = nz;
  x = nx;
}

Axis Mat2::map_axis(Axis in) const {
  bool z, x;
  bits_from_axis(in, z, x);
  apply(z, x);
  return axis_from_bits(z, x);
}

Mat2 mat2_multiply(const Mat2& lhs, const Mat2& rhs) {
  return Mat2{(lhs.a && rhs.a) != (lhs.b && rhs.c), (lhs.a && rhs.b) != (lhs.b && rhs.d),
              (lhs.c && rhs.a) != (lhs.d && rhs.c), (lhs.c && rhs.b) != (lhs.d && rhs.d)};
}

std::string mat2_name(const Mat2& m) {
  if (m == mat2::I) return "I";
  if (m == mat2::H) return "H";
  if (m == mat2::S) return "S";
  if (m == mat2::SH) return "SH";
  if (m == mat2::HS) return "HS";
  if (m == mat2::HSH) return "HSH";
  throw std::invalid_argument("mat2_name: matrix is singular");
}

PauliString PauliString::parse(const std::string& letters) {
  PauliString p(letters.size());
  for (size_t i = 0; i < letters.size(); ++i) p.set_axis(i, axis_from_letter(letters[i]));
  return p;
}

void PauliString::set_axis(size_t i, Axis a) {
  bool z, x;
  bits_from_axis(a, z, x);
  z_[i] = z;
  x_[i] = x;
}

PauliString PauliString::operator*(const PauliString& o) const {
  if (n_qubits() != o.n_qubits())
    throw std::invalid_argument("PauliString product: size mismatch");
  PauliString out(n_qubits());
  for (size_t i = 0; i < n_qubits(); ++i) {
    out.z_[i] = z_[i] != o.z_[i];
    out.x_[i] = x_[i] != o.x_[i];
  }
  return out;
}

bool PauliString::commutes_with(const PauliString& o) const {
  if (n_qubits() != o.n_qubits())
    throw std::invalid_argument("PauliString commutation: size mismatch");
  bool sym = false;
  for (size_t i = 0; i < n_qubits(); ++i)
    sym ^= (z_[i] && o.x_[i]) != (x_[i] && o.z_[i]);
  return !sym;
}

std::vector<size_t> PauliString::support() const {
  std::vector<size_t> s;
  for (size_t i = 0; i < n_qubits(); ++i)
    if (z_[i] || x_[i]) s.push_back(i);
  return s;
}

size_t PauliString::weight() const { return support().size(); }

std::string PauliString::to_string() const {
  std::string s(n_qubits(), 'I');
  for (size_t i = 0; i < n_qubits(); ++i) s[i] = axis_letter(axis(i));
  return s;
}

void LocalCliffordLayer::set(size_t i, const Mat2& m) {
  if (!m.invertible())
    throw std::invalid_argument("LocalCliffordLayer::set: singular matrix");
  mats_[i] = m;
}

bool LocalCliffordLayer::is_identity() const {
  for (const Mat2& m : mats_)
    if (!(m == mat2::I)) return false;
  return true;
}

LocalCliffordLayer LocalCliffordLayer::inverse() const {
  LocalCliffordLayer out(n_qubits());
  for (size_t i = 0; i < n_qubits(); ++i) out.set(i, mats_[i].inverse());
  return out;
}

PauliString LocalCliffordLayer::apply(const PauliString& p) const {
  if (p.n_qubits() != n_qubits())
    throw std::invalid_argument("LocalCliffordLayer::apply: size mismatch");
  PauliString out(n_qubits());
  for (size_t i = 0; i < n_qubits(); ++i) {
    bool z = p.z(i), x = p.x(i);
    mats_[i].apply(z, x);
    out.set_axis(i, axis_from_bits(z, x));
  }
  return out;
}

LocalCliffordLayer compose(const LocalCliffordLayer& later, const LocalCliffordLayer& earlier) {
  if (later.n_qubits() != earlier.n_qubits())
    throw std::invalid_argument("compose: size mismatch");
  LocalCliffordLayer out(later.n_qubits());
  for (size_t i = 0; i < later.n_qubits(); ++i)
    out.set(i, mat2_multiply(later.at(i), earlier.at(i)));
  return out;
}

}  // namespace lebounds::stab
