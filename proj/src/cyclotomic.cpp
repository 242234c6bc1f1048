#include "spmono/cyclotomic.hpp"

#include <stdexcept>

namespace spmono {

namespace {

// Exact division of integer polynomials with monic divisor.
std::vector<mpz_class> divide_exact(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<mpz_class> quot(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const mpz_class q = num[i];
    quot[i - dn] = q;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= q * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic_polynomial: inexact division");
  return quot;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<mpz_class> p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  return p;
}

CyclotomicField::CyclotomicField(unsigned order) : order_(order), phi_(cyclotomic_polynomial(order)) {}

std::vector<mpq_class> CyclotomicField::reduce(std::vector<mpq_class> p) const {
  const std::size_t deg = degree();
  for (std::size_t i = p.size(); i-- > deg;) {
    if (p[i] == 0) continue;
    const mpq_class c = p[i];
    for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * phi_[j];
  }
  p.resize(deg);
  return p;
}

CyclotomicNumber CyclotomicField::constant(const mpq_class& q) const {
  std::vector<mpq_class> c(degree());
  if (!c.empty()) c[0] = q;
  return CyclotomicNumber(this, std::move(c));
}

CyclotomicNumber CyclotomicField::zeta_power(long e) const {
  const long m = ((e % long(order_)) + long(order_)) % long(order_);
  std::vector<mpq_class> c(std::size_t(m) + 1);
  c[std::size_t(m)] = 1;
  return CyclotomicNumber(this, reduce(std::move(c)));
}

CyclotomicNumber CyclotomicField::two_cos(long r, long s) const {
  if (s <= 0 || long(order_) % s != 0)
    throw std::invalid_argument("CyclotomicField::two_cos: denominator must divide the field order");
  const long e = r * (long(order_) / s);
  return zeta_power(e) + zeta_power(-e);
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

mpq_class CyclotomicNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("CyclotomicNumber: value is not rational");
  return coeffs_.empty() ? mpq_class(0) : coeffs_[0];
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
  std::vector<mpq_class> c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return CyclotomicNumber(field_, std::move(c));
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
  std::vector<mpq_class> c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
  return CyclotomicNumber(field_, std::move(c));
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
  if (field_->order() != o.field_->order()) throw std::invalid_argument("CyclotomicNumber: field mismatch");
  std::vector<mpq_class> c(coeffs_.size() * 2 + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return CyclotomicNumber(field_, field_->reduce(std::move(c)));
}

}  // namespace spmono
