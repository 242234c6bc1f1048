// Glue between the catalog, the coset enumerator and the mod-N module:
// subgroup words for a record, index runs with CRT fallback bounds, and the
// cost gate for the heavy enumerations.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "spmono/catalog.hpp"
#include "spmono/coset_enum.hpp"
#include "spmono/fpgroup.hpp"
#include "spmono/modgroup.hpp"

namespace spmono {

// g1, g2 and, when asked, a decomposition of every extra generator.
std::vector<Word> subgroup_words(const OperatorRecord& r, bool include_extra);

struct HeavyCase {
  std::string what;
  std::uint64_t expected_cosets;
  std::uint64_t budget;  // rows needed by the default strategy
  std::string memory;
};

// Set for enumerations that take more than a few minutes or gigabytes.
std::optional<HeavyCase> heavy_case(const OperatorRecord& r, bool include_extra);

// Moduli whose indices multiply to the CRT bound: the largest power of each
// of 2, 3, 5 not exceeding `cap`.
std::vector<long> crt_moduli(long cap);

struct IndexRun {
  coset::EnumerationResult enumeration;
  std::map<long, mpz_class> local_indices;  // filled when enumeration fails
  std::optional<mpz_class> lower_bound;

  nlohmann::json to_json() const;
};

IndexRun run_index(const OperatorRecord& r, bool include_extra, const coset::Options& options,
                   long crt_cap = kModulusFeasibilityCap);

}  // namespace spmono
