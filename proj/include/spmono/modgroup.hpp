// Sp4(Z/N): group orders, orders of generated subgroups (closure BFS and a
// matrix Schreier-Sims on the action on (Z/N)^4), image indices of the
// monodromy groups, and coprime (CRT) lower bounds.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "spmono/catalog.hpp"
#include "spmono/linalg.hpp"

namespace spmono {

// |Sp4(Z/n)| = n^10 prod_{p | n} (1 - p^-2)(1 - p^-4).
mpz_class sp4_order(long n);

// Prime factorization in ascending order.
std::vector<std::pair<long, int>> factorize(long n);

struct ModGroupContext {
  std::uint32_t modulus;
  mpz_class order;

  explicit ModGroupContext(long n);
};

enum class OrderMethod { bfs, schreier_sims };
std::string to_string(OrderMethod m);

inline constexpr std::uint64_t kDefaultBfsCap = std::uint64_t(1) << 25;

// Order of <gens> by closure; nullopt once more than `cap` elements are
// stored.  Requires modulus <= 256.
std::optional<std::uint64_t> subgroup_order_bfs(const std::vector<ModMatrix4>& gens,
                                                std::uint64_t cap = kDefaultBfsCap);

// Order of <gens> via a stabilizer chain with base e1..e4; requires
// modulus^4 <= 2^26.
mpz_class subgroup_order_sims(const std::vector<ModMatrix4>& gens);

struct SubgroupHandle {
  std::vector<ModMatrix4> generators;
  mpz_class order;
  OrderMethod method;
};

// BFS when the ambient group is small enough to enumerate, Schreier-Sims
// otherwise.  Checks Lagrange against sp4_order.
SubgroupHandle generated_subgroup(const std::vector<ModMatrix4>& gens);

std::vector<ModMatrix4> reduced_generators(const OperatorRecord& r, long n, bool include_extra);

struct ModIndex {
  long modulus;
  mpz_class index;
  mpz_class subgroup_order;
  OrderMethod method;
  double seconds;
};

// sp4_order(n) / |image of the generators mod n|.
ModIndex mod_index(const OperatorRecord& r, long n, bool include_extra = false);

// Product of indices over pairwise coprime moduli.
mpz_class crt_lower_bound(const std::map<long, mpz_class>& prime_power_indices);

// Largest modulus computed without an explicit long-running opt-in.
inline constexpr long kModulusFeasibilityCap = 27;

struct ModTableCell {
  int aesz;
  long d;
  long k;
  ModIndex value;
};

// Rows are moduli, columns the given records; cells are computed on `jobs`
// worker threads and returned in row-major order.
std::vector<ModTableCell> mod_table(const std::vector<const OperatorRecord*>& columns,
                                    const std::vector<long>& moduli, unsigned jobs = 1,
                                    bool include_extra = false);

std::string mod_table_csv(const std::vector<const OperatorRecord*>& columns, const std::vector<long>& moduli,
                          const std::vector<ModTableCell>& cells);
nlohmann::json mod_table_json(const std::vector<ModTableCell>& cells);

}  // namespace spmono
