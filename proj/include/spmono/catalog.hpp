// Calabi-Yau operator catalog: hypergeometric and conifold cases, the
// integral monodromy generators M and N, and the congruence subgroups
// Gamma(d1, d2) that contain them.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "spmono/linalg.hpp"

namespace spmono {

// Reduced fraction r/s with 0 < r < s.
struct CyclotomicExponent {
  long r = 0;
  long s = 1;

  CyclotomicExponent() = default;
  CyclotomicExponent(long num, long den);  // throws unless reduced and in (0, 1)
  static CyclotomicExponent parse(const std::string& text);

  mpq_class value() const { return mpq_class(r, s); }
  CyclotomicExponent complement() const { return {s - r, s}; }
  std::string str() const { return std::to_string(r) + "/" + std::to_string(s); }
  friend bool operator==(const CyclotomicExponent&, const CyclotomicExponent&) = default;
};

enum class OperatorKind { hypergeometric, conifold };

struct OperatorRecord {
  int aesz = 0;
  OperatorKind kind = OperatorKind::hypergeometric;
  std::vector<CyclotomicExponent> alphas;  // all four, or empty
  long d = 0;
  long k = 0;
  long c2H = 0;
  long c3 = 0;
  std::optional<mpz_class> discriminant;
  std::optional<std::int64_t> n1;
  std::vector<ExactMatrix4> extra_generators;
  std::vector<QuadraticVector4> reflection_vectors;
  int reflection_sign = 1;

  // b = c2H / 24, generally not an integer.
  mpq_class b() const {
    mpq_class q(c2H, 24);
    q.canonicalize();
    return q;
  }
  std::string label() const;
};

struct IntegralGenerators {
  ExactMatrix4 M;  // loop around 0
  ExactMatrix4 N;  // loop around the conifold point
};

IntegralGenerators integral_generators(long d, long k);

// The base change A with A M_F A^-1 = M; `a` is a formal parameter.
ExactMatrix4 base_change(long d, const mpq_class& b, const mpq_class& a = 0);

// Monodromy around the conifold point in the Frobenius basis: the reflection
// in C = (d, 0, b, a) with respect to S_F.
ExactMatrix4 frobenius_conifold_monodromy(long d, const mpq_class& b, const mpq_class& a = 0);

// The unique integers (d, k) with 2 - 2cos(2 pi a_i) the roots of X^2 - kX + d.
std::pair<long, long> dk_from_exponents(const CyclotomicExponent& a1, const CyclotomicExponent& a2);

// m(s) as a map prime -> rational exponent; defined for s in {2,3,4,5,6,8,10,12}.
std::vector<std::pair<long, mpq_class>> discriminant_factor(long s);

// Product of m(s_i) over the four exponents.
mpz_class discriminant(const std::vector<CyclotomicExponent>& exponents);

enum class IndexClass { finite, infinite, boundary };
std::string to_string(IndexClass c);

struct LambdaResult {
  mpq_class lambda;
  IndexClass predicted;
};

// Lambda = (7k - 2d) / 24: infinite above 1, finite below 1.
LambdaResult lambda_classifier(long d, long k);

// Established finite/infinite index for the 14 hypergeometric (d, k).
std::optional<IndexClass> known_index_class(long d, long k);

// Membership in Gamma(d1, d2); requires d2 | d1.
bool gamma_membership(const ExactMatrix4& m, long d1, long d2);

// |Sp4(Z) : Gamma(d1, d2)|; requires d2 | d1.
mpz_class gamma_index(long d1, long d2);

// Parses and validates; errors name the record and the failed check.
std::vector<OperatorRecord> load_catalog(const std::string& path);
std::vector<OperatorRecord> catalog_from_json(const nlohmann::json& j);
nlohmann::json record_to_json(const OperatorRecord& r);
void validate_record(const OperatorRecord& r);

std::string default_catalog_path();

struct PlotRow {
  int aesz;
  long d;
  long k;
  mpq_class lambda;
  IndexClass predicted;
  IndexClass status;  // finite or infinite
};

// One row per hypergeometric record.
std::vector<PlotRow> plot_data(const std::vector<OperatorRecord>& catalog);

const OperatorRecord* find_by_aesz(const std::vector<OperatorRecord>& catalog, int aesz);
const OperatorRecord* find_by_dk(const std::vector<OperatorRecord>& catalog, long d, long k);

}  // namespace spmono
