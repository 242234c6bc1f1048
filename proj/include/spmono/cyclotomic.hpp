// Exact arithmetic in the cyclotomic field Q(zeta_L), used to evaluate
// trigonometric identities such as 2 cos(2 pi r/s) without floating point.

#pragma once

#include <vector>

#include <gmpxx.h>

namespace spmono {

// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<mpz_class> cyclotomic_polynomial(unsigned n);

class CyclotomicField;

// Element of Q(zeta_L) as a reduced polynomial in zeta of degree < phi(L).
class CyclotomicNumber {
 public:
  const CyclotomicField& field() const { return *field_; }
  bool is_rational() const;
  mpq_class rational_value() const;  // throws std::domain_error unless rational

  CyclotomicNumber operator+(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const CyclotomicNumber& o) const;
  bool operator==(const CyclotomicNumber& o) const { return coeffs_ == o.coeffs_; }

 private:
  friend class CyclotomicField;
  CyclotomicNumber(const CyclotomicField* f, std::vector<mpq_class> c) : field_(f), coeffs_(std::move(c)) {}
  const CyclotomicField* field_;
  std::vector<mpq_class> coeffs_;
};

class CyclotomicField {
 public:
  explicit CyclotomicField(unsigned order);

  unsigned order() const { return order_; }
  unsigned degree() const { return unsigned(phi_.size()) - 1; }

  CyclotomicNumber constant(const mpq_class& q) const;
  CyclotomicNumber zeta_power(long e) const;
  // 2 cos(2 pi r / s) = zeta^(rL/s) + zeta^(-rL/s); requires s | L.
  CyclotomicNumber two_cos(long r, long s) const;

 private:
  friend class CyclotomicNumber;
  std::vector<mpq_class> reduce(std::vector<mpq_class> p) const;

  unsigned order_;
  std::vector<mpz_class> phi_;
};

}  // namespace spmono
