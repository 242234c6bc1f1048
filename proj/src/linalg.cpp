#include "spmono/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

namespace spmono {

ExactMatrix4::ExactMatrix4(std::initializer_list<std::initializer_list<mpq_class>> rows) {
  if (rows.size() != 4) throw std::invalid_argument("ExactMatrix4: expected 4 rows");
  int r = 0;
  for (const auto& row : rows) {
    if (row.size() != 4) throw std::invalid_argument("ExactMatrix4: expected 4 columns");
    int c = 0;
    for (const auto& x : row) e_[r * 4 + c++] = x;
    ++r;
  }
}

ExactMatrix4 ExactMatrix4::identity() { return scalar(1); }

ExactMatrix4 ExactMatrix4::scalar(const mpq_class& s) {
  ExactMatrix4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = s;
  return m;
}

ExactMatrix4 ExactMatrix4::transpose() const {
  ExactMatrix4 t;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix4 ExactMatrix4::inverse() const {
  ExactMatrix4 a = *this;
  ExactMatrix4 inv = identity();
  for (int col = 0; col < 4; ++col) {
    int pivot = -1;
    for (int r = col; r < 4; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::domain_error("ExactMatrix4::inverse: singular matrix");
    if (pivot != col) {
      for (int c = 0; c < 4; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const mpq_class p = a(col, col);
    for (int c = 0; c < 4; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const mpq_class f = a(r, col);
      for (int c = 0; c < 4; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

mpq_class ExactMatrix4::determinant() const {
  ExactMatrix4 a = *this;
  mpq_class det = 1;
  for (int col = 0; col < 4; ++col) {
    int pivot = -1;
    for (int r = col; r < 4; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < 4; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < 4; ++r) {
      if (a(r, col) == 0) continue;
      const mpq_class f = a(r, col) / a(col, col);
      for (int c = col; c < 4; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

int ExactMatrix4::rank() const {
  ExactMatrix4 a = *this;
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int pivot = -1;
    for (int r = rank; r < 4; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    for (int c = 0; c < 4; ++c) std::swap(a(pivot, c), a(rank, c));
    for (int r = rank + 1; r < 4; ++r) {
      if (a(r, col) == 0) continue;
      const mpq_class f = a(r, col) / a(rank, col);
      for (int c = col; c < 4; ++c) a(r, c) -= f * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

ExactMatrix4 ExactMatrix4::pow(std::int64_t e) const {
  ExactMatrix4 base = e < 0 ? inverse() : *this;
  // Avoid negating INT64_MIN.
  std::uint64_t n = e < 0 ? std::uint64_t(-(e + 1)) + 1 : std::uint64_t(e);
  ExactMatrix4 result = identity();
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

bool ExactMatrix4::is_integral() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const mpq_class& q) { return q.get_den() == 1; });
}

ExactMatrix4 operator*(const ExactMatrix4& a, const ExactMatrix4& b) {
  ExactMatrix4 m;
  mpq_class t;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      mpq_class& acc = m(r, c);
      for (int k = 0; k < 4; ++k) {
        if (a(r, k) == 0 || b(k, c) == 0) continue;
        t = a(r, k) * b(k, c);
        acc += t;
      }
    }
  }
  return m;
}

ExactMatrix4 operator+(const ExactMatrix4& a, const ExactMatrix4& b) {
  ExactMatrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a(r, c) + b(r, c);
  return m;
}

ExactMatrix4 operator-(const ExactMatrix4& a, const ExactMatrix4& b) {
  ExactMatrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a(r, c) - b(r, c);
  return m;
}

ExactMatrix4 operator*(const mpq_class& s, const ExactMatrix4& a) {
  ExactMatrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = s * a(r, c);
  return m;
}

Vector4 operator*(const ExactMatrix4& a, const Vector4& v) {
  Vector4 out;
  for (int r = 0; r < 4; ++r) {
    mpq_class acc = 0;
    for (int k = 0; k < 4; ++k) acc += a(r, k) * v[k];
    out[r] = acc;
  }
  return out;
}

std::string ExactMatrix4::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExactMatrix4& m) {
  os << '[';
  for (int r = 0; r < 4; ++r) {
    os << (r ? ",[" : "[");
    for (int c = 0; c < 4; ++c) os << (c ? "," : "") << m(r, c).get_str();
    os << ']';
  }
  return os << ']';
}

// ---------------------------------------------------------------------------

namespace {

std::uint16_t reduce(std::int64_t x, std::uint32_t n) {
  std::int64_t r = x % std::int64_t(n);
  if (r < 0) r += n;
  return std::uint16_t(r);
}

void check_modulus(std::uint32_t n) {
  if (n < 2 || n > 65535) throw std::invalid_argument("ModMatrix4: modulus must lie in [2, 65535]");
}

}  // namespace

ModMatrix4::ModMatrix4(std::uint32_t modulus,
                       std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : n_(modulus) {
  check_modulus(modulus);
  if (rows.size() != 4) throw std::invalid_argument("ModMatrix4: expected 4 rows");
  int r = 0;
  for (const auto& row : rows) {
    if (row.size() != 4) throw std::invalid_argument("ModMatrix4: expected 4 columns");
    int c = 0;
    for (auto x : row) e_[r * 4 + c++] = reduce(x, n_);
    ++r;
  }
}

ModMatrix4 ModMatrix4::identity(std::uint32_t modulus) {
  check_modulus(modulus);
  ModMatrix4 m;
  m.n_ = modulus;
  for (int i = 0; i < 4; ++i) m.e_[i * 5] = 1;
  return m;
}

ModMatrix4 ModMatrix4::from_entries(std::uint32_t modulus, const std::array<std::int64_t, 16>& e) {
  check_modulus(modulus);
  ModMatrix4 m;
  m.n_ = modulus;
  for (int i = 0; i < 16; ++i) m.e_[i] = reduce(e[i], modulus);
  return m;
}

ModMatrix4 ModMatrix4::transpose() const {
  ModMatrix4 t;
  t.n_ = n_;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) t.e_[c * 4 + r] = e_[r * 4 + c];
  return t;
}

bool ModMatrix4::is_identity() const { return *this == identity(n_); }

namespace {

std::int64_t det3(const std::array<std::int64_t, 16>& a, int skip_row, int skip_col) {
  int rows[3], cols[3];
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != skip_row) rows[k++] = i;
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != skip_col) cols[k++] = i;
  auto at = [&](int r, int c) { return a[rows[r] * 4 + cols[c]]; };
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  std::int64_t g = n, x = 0, y = 1, r = ((a % n) + n) % n;
  // Invariant: g = x * a (mod n), r = y * a (mod n).
  while (r != 0) {
    std::int64_t q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, y) = std::make_pair(y, x - q * y);
  }
  if (g != 1) throw std::domain_error("ModMatrix4::inverse: determinant is not a unit");
  return ((x % n) + n) % n;
}

}  // namespace

std::int64_t ModMatrix4::determinant() const {
  std::array<std::int64_t, 16> a;
  for (int i = 0; i < 16; ++i) a[i] = e_[i];
  std::int64_t det = 0;
  for (int c = 0; c < 4; ++c) {
    std::int64_t minor = det3(a, 0, c) % std::int64_t(n_);
    std::int64_t term = (a[c] * minor) % std::int64_t(n_);
    det += (c % 2 == 0) ? term : -term;
  }
  return reduce(det, n_);
}

ModMatrix4 ModMatrix4::inverse() const {
  std::array<std::int64_t, 16> a;
  for (int i = 0; i < 16; ++i) a[i] = e_[i];
  const std::int64_t det_inv = inverse_mod(determinant(), n_);
  std::array<std::int64_t, 16> adj;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::int64_t cof = det3(a, c, r) % std::int64_t(n_);
      if ((r + c) % 2) cof = -cof;
      adj[r * 4 + c] = (cof * det_inv) % std::int64_t(n_);
    }
  }
  return from_entries(n_, adj);
}

std::array<std::uint32_t, 4> ModMatrix4::apply(const std::array<std::uint32_t, 4>& v) const {
  std::array<std::uint32_t, 4> out;
  for (int r = 0; r < 4; ++r) {
    std::uint64_t acc = 0;
    for (int k = 0; k < 4; ++k) acc += std::uint64_t(e_[r * 4 + k]) * v[k];
    out[r] = std::uint32_t(acc % n_);
  }
  return out;
}

ModMatrix4::Key ModMatrix4::key() const {
  if (n_ > 256) throw std::invalid_argument("ModMatrix4::key: modulus exceeds 256");
  Key k;
  for (int i = 0; i < 16; ++i) k[i] = std::uint8_t(e_[i]);
  return k;
}

ModMatrix4 ModMatrix4::from_key(std::uint32_t modulus, const Key& k) {
  ModMatrix4 m;
  m.n_ = modulus;
  for (int i = 0; i < 16; ++i) m.e_[i] = k[i];
  return m;
}

ModMatrix4 operator*(const ModMatrix4& a, const ModMatrix4& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("ModMatrix4: modulus mismatch");
  ModMatrix4 m;
  m.n_ = a.n_;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::uint64_t acc = 0;
      for (int k = 0; k < 4; ++k) acc += std::uint64_t(a.e_[r * 4 + k]) * b.e_[k * 4 + c];
      m.e_[r * 4 + c] = std::uint16_t(acc % a.n_);
    }
  }
  return m;
}

std::size_t ModMatrix4Hash::operator()(const ModMatrix4& m) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ m.modulus();
  for (auto x : m.entries()) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return std::size_t(h);
}

std::string ModMatrix4::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ModMatrix4& m) {
  os << '[';
  for (int r = 0; r < 4; ++r) {
    os << (r ? ",[" : "[");
    for (int c = 0; c < 4; ++c) os << (c ? "," : "") << m(r, c);
    os << ']';
  }
  return os << "] mod " << m.modulus();
}

// ---------------------------------------------------------------------------

QuadraticVector4::QuadraticVector4(const std::array<QuadraticEntry, 4>& entries) {
  for (int i = 0; i < 4; ++i) {
    QuadraticEntry e = entries[i];
    if (e.radicand < 1) throw std::invalid_argument("QuadraticVector4: radicand must be positive");
    for (int f = 2; f * f <= e.radicand; ++f) {
      while (e.radicand % (f * f) == 0) {
        e.radicand /= f * f;
        e.coeff *= f;
      }
    }
    if (e.coeff == 0) e.radicand = 1;
    if (e.radicand != 1 && e.radicand != 2)
      throw std::invalid_argument("QuadraticVector4: only radicands 1 and 2 are supported");
    e_[i] = e;
  }
}

QuadraticVector4 QuadraticVector4::rational(const Vector4& v) {
  std::array<QuadraticEntry, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = {v[i], 1};
  return QuadraticVector4(e);
}

ExactMatrix4 QuadraticVector4::outer_product() const {
  ExactMatrix4 m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const auto& a = e_[r];
      const auto& b = e_[c];
      if (a.coeff == 0 || b.coeff == 0) continue;
      if (a.radicand != b.radicand)
        throw InvariantError("QuadraticVector4: outer product has an irrational entry");
      m(r, c) = a.coeff * b.coeff * a.radicand;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

ExactMatrix4 standard_form() {
  return {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
}

ExactMatrix4 frobenius_form() {
  return {{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
}

ExactMatrix4 frobenius_monodromy() {
  return {{1, 1, mpq_class(1, 2), mpq_class(1, 6)},
          {0, 1, 1, mpq_class(1, 2)},
          {0, 0, 1, 1},
          {0, 0, 0, 1}};
}

bool is_symplectic(const ExactMatrix4& m, const ExactMatrix4& form) {
  return m.transpose() * form * m == form;
}

mpq_class pairing(const Vector4& u, const Vector4& v, const ExactMatrix4& form) {
  const Vector4 fv = form * v;
  mpq_class acc = 0;
  for (int i = 0; i < 4; ++i) acc += u[i] * fv[i];
  return acc;
}

ExactMatrix4 reflection_from_outer(const ExactMatrix4& outer, const mpq_class& d,
                                   const ExactMatrix4& form) {
  if (d == 0) throw std::invalid_argument("symplectic_reflection: d must be non-zero");
  return ExactMatrix4::identity() + mpq_class(1 / d) * (form * outer);
}

ExactMatrix4 symplectic_reflection(const Vector4& c, const mpq_class& d, const ExactMatrix4& form) {
  return reflection_from_outer(QuadraticVector4::rational(c).outer_product(), d, form);
}

bool is_symplectic_reflection(const ExactMatrix4& t) {
  if (!is_symplectic(t)) return false;
  const ExactMatrix4 n = t - ExactMatrix4::identity();
  return (n * n) == ExactMatrix4{} && n.rank() == 1;
}

ModMatrix4 mod_reduce(const ExactMatrix4& m, std::uint32_t n) {
  if (!m.is_integral()) throw std::invalid_argument("mod_reduce: matrix is not integral");
  check_modulus(n);
  std::array<std::int64_t, 16> e;
  mpz_class r;
  for (int i = 0; i < 16; ++i) {
    mpz_fdiv_r_ui(r.get_mpz_t(), m(i / 4, i % 4).get_num_mpz_t(), n);
    e[i] = r.get_si();
  }
  return ModMatrix4::from_entries(n, e);
}

bool is_symplectic_mod(const ModMatrix4& m) {
  const ModMatrix4 s = mod_reduce(standard_form(), m.modulus());
  return m.transpose() * s * m == s;
}

// ---------------------------------------------------------------------------

mpq_class rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<std::int64_t>())));
  if (j.is_string()) {
    mpq_class q;
    const auto s = j.get<std::string>();
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
      throw std::invalid_argument("malformed rational literal: \"" + s + "\"");
    q.canonicalize();
    return q;
  }
  throw std::invalid_argument("matrix entry must be an integer or a \"p/q\" string: " + j.dump());
}

nlohmann::json rational_to_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

ExactMatrix4 matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("matrix literal must have 4 rows");
  ExactMatrix4 m;
  for (int r = 0; r < 4; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != 4)
      throw std::invalid_argument("matrix literal rows must have 4 entries");
    for (int c = 0; c < 4; ++c) m(r, c) = rational_from_json(row[c]);
  }
  return m;
}

nlohmann::json matrix_to_json(const ExactMatrix4& m) {
  auto j = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < 4; ++c) row.push_back(rational_to_json(m(r, c)));
    j.push_back(row);
  }
  return j;
}

ExactMatrix4 parse_matrix_literal(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed matrix literal: ") + e.what());
  }
  return matrix_from_json(j);
}

}  // namespace spmono
