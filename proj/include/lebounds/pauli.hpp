#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lebounds::stab {

enum class Axis { I, X, Y, Z };

/// Binary encoding of a single-qubit Pauli as (z, x):
/// I=(0,0), X=(0,1), Y=(1,1), Z=(1,0).
Axis axis_from_bits(bool z, bool x);
void bits_from_axis(Axis a, bool& z, bool& x);
char axis_letter(Axis a);
Axis axis_from_letter(char c);

/// 2x2 matrix over GF(2) acting on Pauli columns (z; x), phases dropped.
struct Mat2 {
  bool a = true, b = false, c = false, d = true;  // [[a,b],[c,d]]

  bool invertible() const { return (a && d) != (b && c); }
  Mat2 inverse() const;
  /// Image of the Pauli (z, x) under this matrix.
  void apply(bool& z, bool& x) const;
  Axis map_axis(Axis in) const;

  bool operator==(const Mat2& o) const = default;
};

Mat2 mat2_multiply(const Mat2& lhs, const Mat2& rhs);

/// The six invertible 2x2 matrices over GF(2), named by a Clifford
/// representative (S denotes the phase gate U_Z).
namespace mat2 {
inline constexpr Mat2 I{true, false, false, true};
inline constexpr Mat2 H{false, true, true, false};
inline constexpr Mat2 S{true, true, false, true};
inline constexpr Mat2 SH{true, true, true, false};
inline constexpr Mat2 HS{false, true, true, true};
inline constexpr Mat2 HSH{true, false, true, true};
}  // namespace mat2

/// Short label ("I", "H", "S", "SH", "HS", "HSH") for an invertible Mat2.
std::string mat2_name(const Mat2& m);

/// N-qubit Pauli operator with phases dropped.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(size_t n) : z_(n, false), x_(n, false) {}
  /// Builds from a letter string like "XIZZY".
  static PauliString parse(const std::string& letters);

  size_t n_qubits() const { return z_.size(); }
  bool z(size_t i) const { return z_[i]; }
  bool x(size_t i) const { return x_[i]; }
  Axis axis(size_t i) const { return axis_from_bits(z_[i], x_[i]); }
  void set_axis(size_t i, Axis a);

  /// Phase-free product (bitwise XOR of both components).
  PauliString operator*(const PauliString& o) const;
  bool commutes_with(const PauliString& o) const;
  std::vector<size_t> support() const;
  size_t weight() const;
  std::string to_string() const;

  bool operator==(const PauliString& o) const = default;

 private:
  std::vector<bool> z_, x_;
};

/// One single-qubit symplectic Clifford per qubit.
class LocalCliffordLayer {
 public:
  LocalCliffordLayer() = default;
  explicit LocalCliffordLayer(size_t n) : mats_(n) {}

  size_t n_qubits() const { return mats_.size(); }
  const Mat2& at(size_t i) const { return mats_[i]; }
  void set(size_t i, const Mat2& m);
  bool is_identity() const;

  LocalCliffordLayer inverse() const;
  PauliString apply(const PauliString& p) const;

  bool operator==(const LocalCliffordLayer& o) const = default;

 private:
  std::vector<Mat2> mats_;
};

/// Layer equal to applying `earlier` first, then `later`.
LocalCliffordLayer compose(const LocalCliffordLayer& later, const LocalCliffordLayer& earlier);

}  // namespace lebounds::stab
