// Exact 4x4 linear algebra over Q and Z/N.
//
// All group elements in this library are 4x4 matrices.  Integral symplectic
// matrices live in ExactMatrix4 (rational entries, integral in practice);
// their reductions live in ModMatrix4.  Matrices follow the row-vector
// convention of the monodromy literature: a matrix T acts by x -> x * T.
// For symplectic matrices the choice only matters for reflections, since
// Sp(S) is closed under transposition.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace spmono {

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vector4 = std::array<mpq_class, 4>;

class ExactMatrix4 {
 public:
  ExactMatrix4() = default;  // zero matrix
  ExactMatrix4(std::initializer_list<std::initializer_list<mpq_class>> rows);

  static ExactMatrix4 identity();
  static ExactMatrix4 scalar(const mpq_class& s);

  const mpq_class& operator()(int r, int c) const { return e_[r * 4 + c]; }
  mpq_class& operator()(int r, int c) { return e_[r * 4 + c]; }

  ExactMatrix4 transpose() const;
  ExactMatrix4 inverse() const;  // throws std::domain_error when singular
  mpq_class determinant() const;
  ExactMatrix4 pow(std::int64_t e) const;
  int rank() const;

  bool is_integral() const;
  bool is_identity() const { return *this == identity(); }

  friend ExactMatrix4 operator*(const ExactMatrix4& a, const ExactMatrix4& b);
  friend ExactMatrix4 operator+(const ExactMatrix4& a, const ExactMatrix4& b);
  friend ExactMatrix4 operator-(const ExactMatrix4& a, const ExactMatrix4& b);
  friend ExactMatrix4 operator*(const mpq_class& s, const ExactMatrix4& a);
  friend Vector4 operator*(const ExactMatrix4& a, const Vector4& v);
  friend bool operator==(const ExactMatrix4& a, const ExactMatrix4& b) {
    return a.e_ == b.e_;
  }

  std::string str() const;

 private:
  std::array<mpq_class, 16> e_{};
};

std::ostream& operator<<(std::ostream& os, const ExactMatrix4& m);

// 4x4 matrix with entries in Z/N, N in [2, 65535].
class ModMatrix4 {
 public:
  using Key = std::array<std::uint8_t, 16>;

  ModMatrix4() = default;
  ModMatrix4(std::uint32_t modulus, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static ModMatrix4 identity(std::uint32_t modulus);
  static ModMatrix4 from_entries(std::uint32_t modulus, const std::array<std::int64_t, 16>& e);

  std::uint32_t modulus() const { return n_; }
  std::uint32_t operator()(int r, int c) const { return e_[r * 4 + c]; }
  const std::array<std::uint16_t, 16>& entries() const { return e_; }

  ModMatrix4 transpose() const;
  ModMatrix4 inverse() const;  // throws std::domain_error when det is not a unit
  std::int64_t determinant() const;
  bool is_identity() const;

  // g * v on column vectors.
  std::array<std::uint32_t, 4> apply(const std::array<std::uint32_t, 4>& v) const;

  // One byte per entry; requires N <= 256.  Injective for fixed N.
  Key key() const;
  static ModMatrix4 from_key(std::uint32_t modulus, const Key& k);

  friend ModMatrix4 operator*(const ModMatrix4& a, const ModMatrix4& b);
  friend bool operator==(const ModMatrix4& a, const ModMatrix4& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }

  std::string str() const;

 private:
  std::uint32_t n_ = 2;
  std::array<std::uint16_t, 16> e_{};
};

std::ostream& operator<<(std::ostream& os, const ModMatrix4& m);

struct ModMatrix4Hash {
  std::size_t operator()(const ModMatrix4& m) const noexcept;
};

// Entry c * sqrt(r) with r square-free; only r in {1, 2} occurs.
struct QuadraticEntry {
  mpq_class coeff;
  int radicand = 1;
};

class QuadraticVector4 {
 public:
  QuadraticVector4() = default;
  // Square factors are pulled out of the radicand: (1, 8) becomes (2, 2).
  explicit QuadraticVector4(const std::array<QuadraticEntry, 4>& entries);
  static QuadraticVector4 rational(const Vector4& v);

  const QuadraticEntry& operator[](int i) const { return e_[i]; }

  // v * v^T; throws InvariantError when an entry would be irrational.
  ExactMatrix4 outer_product() const;

 private:
  std::array<QuadraticEntry, 4> e_{};
};

// The standard form S, the Frobenius-basis form S_F and monodromy M_F.
ExactMatrix4 standard_form();
ExactMatrix4 frobenius_form();
ExactMatrix4 frobenius_monodromy();

// m^T * form * m == form.
bool is_symplectic(const ExactMatrix4& m, const ExactMatrix4& form);
inline bool is_symplectic(const ExactMatrix4& m) { return is_symplectic(m, standard_form()); }

// Pairing <u, v> = u^T * form * v.
mpq_class pairing(const Vector4& u, const Vector4& v, const ExactMatrix4& form);

// Matrix of x -> x - (1/d) <c, x> c in the row-vector convention, i.e. the
// transpose of the column-vector map: I + (1/d) * form * c * c^T.
ExactMatrix4 symplectic_reflection(const Vector4& c, const mpq_class& d, const ExactMatrix4& form);

// Same map built from a precomputed outer product c c^T (used for vectors with
// irrational entries whose outer product is rational).
ExactMatrix4 reflection_from_outer(const ExactMatrix4& outer, const mpq_class& d, const ExactMatrix4& form);

// Preserves S, (t - I)^2 == 0 and rank(t - I) == 1.
bool is_symplectic_reflection(const ExactMatrix4& t);

ModMatrix4 mod_reduce(const ExactMatrix4& m, std::uint32_t n);

// Symplectic check mod N against the reduction of S.
bool is_symplectic_mod(const ModMatrix4& m);

// Matrix literal: JSON array of 4 rows of 4 entries, each an integer or "p/q".
ExactMatrix4 matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ExactMatrix4& m);
ExactMatrix4 parse_matrix_literal(const std::string& text);
mpq_class rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const mpq_class& q);

}  // namespace spmono
