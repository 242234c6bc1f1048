#include "spmono/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "spmono/cyclotomic.hpp"

namespace spmono {

using nlohmann::json;

CyclotomicExponent::CyclotomicExponent(long num, long den) : r(num), s(den) {
  if (den <= 0 || num <= 0 || num >= den)
    throw std::invalid_argument("exponent " + str() + " is not in (0, 1)");
  if (std::gcd(num, den) != 1) throw std::invalid_argument("exponent " + str() + " is not reduced");
}

CyclotomicExponent CyclotomicExponent::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("exponent must be written r/s: " + text);
  std::size_t used_r = 0, used_s = 0;
  long r = 0, s = 0;
  try {
    r = std::stol(text.substr(0, slash), &used_r);
    s = std::stol(text.substr(slash + 1), &used_s);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed exponent: " + text);
  }
  if (used_r != slash || used_s != text.size() - slash - 1)
    throw std::invalid_argument("malformed exponent: " + text);
  return CyclotomicExponent(r, s);
}

std::string OperatorRecord::label() const {
  return "AESZ " + std::to_string(aesz) + " (d,k)=(" + std::to_string(d) + "," + std::to_string(k) + ")";
}

IntegralGenerators integral_generators(long d, long k) {
  if (d < 1 || k < 1) throw std::invalid_argument("integral_generators: d and k must be positive");
  IntegralGenerators g;
  g.M = {{1, 1, 0, 0}, {0, 1, 0, 0}, {d, d, 1, 0}, {0, -k, -1, 1}};
  g.N = {{1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  return g;
}

ExactMatrix4 base_change(long d, const mpq_class& b, const mpq_class& a) {
  if (d == 0) throw std::invalid_argument("base_change: d = 0 makes A singular");
  const mpq_class dq = d;
  return {{0, 0, 1, 0}, {0, 0, 0, 1}, {0, dq, dq / 2, -b}, {-dq, 0, -b, -a}};
}

ExactMatrix4 frobenius_conifold_monodromy(long d, const mpq_class& b, const mpq_class& a) {
  return symplectic_reflection({mpq_class(d), 0, b, a}, d, frobenius_form());
}

std::pair<long, long> dk_from_exponents(const CyclotomicExponent& a1, const CyclotomicExponent& a2) {
  const long order = std::lcm(a1.s, a2.s);
  const CyclotomicField field{unsigned(order)};
  const auto two = field.constant(2);
  const auto root1 = two - field.two_cos(a1.r, a1.s);
  const auto root2 = two - field.two_cos(a2.r, a2.s);
  const auto sum = root1 + root2;
  const auto product = root1 * root2;
  if (!sum.is_rational() || !product.is_rational())
    throw std::invalid_argument("dk_from_exponents: (" + a1.str() + ", " + a2.str() +
                                ") does not give a rational quadratic");
  const mpq_class k = sum.rational_value();
  const mpq_class d = product.rational_value();
  if (k.get_den() != 1 || d.get_den() != 1)
    throw std::invalid_argument("dk_from_exponents: (" + a1.str() + ", " + a2.str() +
                                ") does not give an integral quadratic");
  return {d.get_num().get_si(), k.get_num().get_si()};
}

std::vector<std::pair<long, mpq_class>> discriminant_factor(long s) {
  switch (s) {
    case 2: return {{2, 2}};
    case 3: return {{3, mpq_class(3, 2)}};
    case 4: return {{2, 3}};
    case 5: return {{5, mpq_class(5, 4)}};
    case 6: return {{2, 2}, {3, mpq_class(3, 2)}};
    case 8: return {{2, 4}};
    case 10: return {{2, 2}, {5, mpq_class(5, 4)}};
    case 12: return {{2, 3}, {3, mpq_class(3, 2)}};
    default: throw std::invalid_argument("discriminant_factor: no value for s = " + std::to_string(s));
  }
}

mpz_class discriminant(const std::vector<CyclotomicExponent>& exponents) {
  if (exponents.size() != 4) throw std::invalid_argument("discriminant: expected four exponents");
  std::map<long, mpq_class> exps;
  for (const auto& a : exponents)
    for (const auto& [p, e] : discriminant_factor(a.s)) exps[p] += e;
  mpz_class n = 1;
  for (auto& [p, e] : exps) {
    e.canonicalize();
    if (e.get_den() != 1)
      throw InvariantError("discriminant: exponent of " + std::to_string(p) + " is " + e.get_str() +
                           ", not an integer");
    mpz_class f;
    mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(p), e.get_num().get_ui());
    n *= f;
  }
  return n;
}

std::string to_string(IndexClass c) {
  switch (c) {
    case IndexClass::finite: return "finite";
    case IndexClass::infinite: return "infinite";
    case IndexClass::boundary: return "boundary";
  }
  return "?";
}

LambdaResult lambda_classifier(long d, long k) {
  mpq_class lambda(7 * k - 2 * d, 24);
  lambda.canonicalize();
  IndexClass c = lambda > 1 ? IndexClass::infinite : lambda < 1 ? IndexClass::finite : IndexClass::boundary;
  return {lambda, c};
}

std::optional<IndexClass> known_index_class(long d, long k) {
  static const std::vector<std::pair<long, long>> infinite = {{1, 4}, {2, 4}, {4, 5}, {5, 5},
                                                              {8, 6}, {12, 7}, {16, 8}};
  static const std::vector<std::pair<long, long>> finite = {{1, 3}, {1, 2}, {2, 3}, {3, 4},
                                                            {4, 4}, {6, 5}, {9, 6}};
  const std::pair<long, long> key{d, k};
  if (std::find(infinite.begin(), infinite.end(), key) != infinite.end()) return IndexClass::infinite;
  if (std::find(finite.begin(), finite.end(), key) != finite.end()) return IndexClass::finite;
  return std::nullopt;
}

namespace {

bool congruent(const mpq_class& x, long target, long modulus) {
  if (modulus == 1) return true;
  mpz_class r = (x.get_num() - target) % modulus;
  return r == 0;
}

std::vector<std::pair<long, int>> factor(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

void check_divides(long d1, long d2, const char* who) {
  if (d1 < 1 || d2 < 1) throw std::invalid_argument(std::string(who) + ": moduli must be positive");
  if (d1 % d2 != 0) throw std::invalid_argument(std::string(who) + ": d2 must divide d1");
}

}  // namespace

bool gamma_membership(const ExactMatrix4& m, long d1, long d2) {
  check_divides(d1, d2, "gamma_membership");
  if (!m.is_integral()) throw std::invalid_argument("gamma_membership: matrix is not integral");
  // -1 marks a free entry.
  static constexpr int pattern1[16] = {1, -1, -1, -1, 0, -1, -1, -1, 0, 0, 1, 0, 0, -1, -1, -1};
  static constexpr int pattern2[16] = {1, -1, -1, -1, 0, 1, -1, -1, 0, 0, 1, 0, 0, 0, -1, 1};
  for (int i = 0; i < 16; ++i) {
    const auto& x = m(i / 4, i % 4);
    if (pattern1[i] >= 0 && !congruent(x, pattern1[i], d1)) return false;
    if (pattern2[i] >= 0 && !congruent(x, pattern2[i], d2)) return false;
  }
  return true;
}

mpz_class gamma_index(long d1, long d2) {
  check_divides(d1, d2, "gamma_index");
  mpz_class index = 1;
  for (const auto& [p, e] : factor(d1)) {
    mpz_class pp = p, t;
    mpz_pow_ui(t.get_mpz_t(), pp.get_mpz_t(), 4 * (e - 1));
    index *= t * (pp * pp * pp * pp - 1);
  }
  for (const auto& [p, e] : factor(d2)) {
    mpz_class pp = p, t;
    mpz_pow_ui(t.get_mpz_t(), pp.get_mpz_t(), 2 * (e - 1));
    index *= t * (pp * pp - 1);
  }
  return index;
}

// ---------------------------------------------------------------------------

void validate_record(const OperatorRecord& r) {
  auto fail = [&](const std::string& what) { throw InvariantError(r.label() + ": " + what); };
  if (r.d < 1 || r.k < 1) fail("d and k must be positive");
  if (12 * r.k != 2 * r.d + r.c2H) fail("k = d/6 + c2H/12 does not hold");
  if (r.kind == OperatorKind::hypergeometric) {
    if (r.alphas.size() != 4) fail("hypergeometric record needs four exponents");
    std::vector<mpq_class> values, complements;
    for (const auto& a : r.alphas) {
      values.push_back(a.value());
      complements.push_back(a.complement().value());
    }
    std::sort(values.begin(), values.end());
    std::sort(complements.begin(), complements.end());
    if (values != complements) fail("exponents are not closed under a -> 1 - a");
    std::pair<long, long> dk;
    try {
      dk = dk_from_exponents(r.alphas[0], r.alphas[1]);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (dk != std::pair<long, long>{r.d, r.k}) fail("(d,k) does not match the exponents");
    if (r.discriminant && *r.discriminant != discriminant(r.alphas))
      fail("discriminant " + r.discriminant->get_str() + " does not match the exponents");
  } else if (!r.alphas.empty()) {
    fail("conifold record must not carry hypergeometric exponents");
  }
  if (r.reflection_sign != 1 && r.reflection_sign != -1) fail("reflection_sign must be +1 or -1");
  if (!r.reflection_vectors.empty() && r.reflection_vectors.size() != r.extra_generators.size())
    fail("reflection_vectors and extra_generators differ in length");
  for (std::size_t i = 0; i < r.extra_generators.size(); ++i) {
    const auto& g = r.extra_generators[i];
    if (!g.is_integral()) fail("extra generator " + std::to_string(i) + " is not integral");
    if (!is_symplectic_reflection(g)) fail("extra generator " + std::to_string(i) + " is not a symplectic reflection");
    if (i < r.reflection_vectors.size()) {
      const auto t = reflection_from_outer(r.reflection_vectors[i].outer_product(), r.reflection_sign,
                                           standard_form());
      if (!(t == g)) fail("reflection vector " + std::to_string(i) + " does not reproduce its matrix");
    }
  }
}

namespace {

template <typename T>
T required(const json& j, const char* key, const std::string& who) {
  if (!j.contains(key)) throw std::invalid_argument(who + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(who + ": bad field '" + key + "': " + e.what());
  }
}

OperatorRecord record_from_json(const json& j, std::size_t index) {
  const std::string who = "catalog record " + std::to_string(index);
  if (!j.is_object()) throw std::invalid_argument(who + ": not an object");
  OperatorRecord r;
  r.aesz = required<int>(j, "aesz", who);
  const auto kind = required<std::string>(j, "kind", who);
  if (kind == "hypergeometric")
    r.kind = OperatorKind::hypergeometric;
  else if (kind == "conifold")
    r.kind = OperatorKind::conifold;
  else
    throw std::invalid_argument(who + ": unknown kind '" + kind + "'");
  if (j.contains("alphas"))
    for (const auto& a : j.at("alphas")) r.alphas.push_back(CyclotomicExponent::parse(a.get<std::string>()));
  r.d = required<long>(j, "d", who);
  r.k = required<long>(j, "k", who);
  r.c2H = required<long>(j, "c2H", who);
  r.c3 = required<long>(j, "c3", who);
  if (j.contains("discriminant") && !j.at("discriminant").is_null()) {
    const auto& v = j.at("discriminant");
    r.discriminant = v.is_string() ? mpz_class(v.get<std::string>()) : mpz_class(v.get<long>());
  }
  if (j.contains("n1") && !j.at("n1").is_null()) r.n1 = j.at("n1").get<std::int64_t>();
  if (j.contains("extra_generators"))
    for (const auto& m : j.at("extra_generators")) r.extra_generators.push_back(matrix_from_json(m));
  if (j.contains("reflection_vectors")) {
    for (const auto& v : j.at("reflection_vectors")) {
      if (!v.is_array() || v.size() != 4) throw std::invalid_argument(who + ": reflection vector needs 4 entries");
      std::array<QuadraticEntry, 4> e;
      for (int i = 0; i < 4; ++i) {
        const auto& entry = v[i];
        if (!entry.is_array() || entry.size() != 2)
          throw std::invalid_argument(who + ": reflection entry must be [coeff, radicand]");
        e[i] = {rational_from_json(entry[0]), entry[1].get<int>()};
      }
      r.reflection_vectors.emplace_back(e);
    }
  }
  if (j.contains("reflection_sign")) r.reflection_sign = j.at("reflection_sign").get<int>();
  return r;
}

}  // namespace

std::vector<OperatorRecord> catalog_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("catalog: top level must be an array");
  std::vector<OperatorRecord> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(record_from_json(j[i], i));
    validate_record(out.back());
  }
  return out;
}

std::vector<OperatorRecord> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("catalog " + path + ": " + e.what());
  }
  return catalog_from_json(j);
}

json record_to_json(const OperatorRecord& r) {
  json j;
  j["aesz"] = r.aesz;
  j["kind"] = r.kind == OperatorKind::hypergeometric ? "hypergeometric" : "conifold";
  if (!r.alphas.empty()) {
    j["alphas"] = json::array();
    for (const auto& a : r.alphas) j["alphas"].push_back(a.str());
  }
  j["d"] = r.d;
  j["k"] = r.k;
  j["c2H"] = r.c2H;
  j["c3"] = r.c3;
  if (r.discriminant) j["discriminant"] = r.discriminant->get_si();
  if (r.n1) j["n1"] = *r.n1;
  j["extra_generators"] = json::array();
  for (const auto& m : r.extra_generators) j["extra_generators"].push_back(matrix_to_json(m));
  j["reflection_vectors"] = json::array();
  for (const auto& v : r.reflection_vectors) {
    json vec = json::array();
    for (int i = 0; i < 4; ++i) vec.push_back(json::array({v[i].coeff.get_str(), v[i].radicand}));
    j["reflection_vectors"].push_back(vec);
  }
  j["reflection_sign"] = r.reflection_sign;
  return j;
}

std::string default_catalog_path() { return std::string(SPMONO_DATA_DIR) + "/catalog.json"; }

std::vector<PlotRow> plot_data(const std::vector<OperatorRecord>& catalog) {
  std::vector<PlotRow> rows;
  for (const auto& r : catalog) {
    if (r.kind != OperatorKind::hypergeometric) continue;
    const auto lc = lambda_classifier(r.d, r.k);
    const auto known = known_index_class(r.d, r.k);
    if (!known) throw InvariantError(r.label() + ": no established index class");
    rows.push_back({r.aesz, r.d, r.k, lc.lambda, lc.predicted, *known});
  }
  return rows;
}

const OperatorRecord* find_by_aesz(const std::vector<OperatorRecord>& catalog, int aesz) {
  for (const auto& r : catalog)
    if (r.aesz == aesz) return &r;
  return nullptr;
}

const OperatorRecord* find_by_dk(const std::vector<OperatorRecord>& catalog, long d, long k) {
  const OperatorRecord* fallback = nullptr;
  for (const auto& r : catalog) {
    if (r.d != d || r.k != k) continue;
    if (r.kind == OperatorKind::hypergeometric) return &r;
    if (!fallback) fallback = &r;
  }
  return fallback;
}

}  // namespace spmono
