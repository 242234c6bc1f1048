#include "spmono/reproduce.hpp"

#include "spmono/modgroup.hpp"

namespace spmono {

std::vector<Word> subgroup_words(const OperatorRecord& r, bool include_extra) {
  const auto w = monodromy_words(r.d, r.k);
  std::vector<Word> out{w.g1, w.g2};
  if (include_extra)
    for (const auto& m : r.extra_generators) out.push_back(decompose(m));
  return out;
}

std::optional<HeavyCase> heavy_case(const OperatorRecord& r, bool include_extra) {
  const bool extra = include_extra && !r.extra_generators.empty();
  if (!extra && r.d == 4 && r.k == 4)
    return HeavyCase{"G(4,4)", 47185920, 60000000, "about 3.2 GB of coset table (13 x 4 bytes per row)"};
  if (!extra && r.d == 5 && r.k == 4)
    return HeavyCase{"G(5,4)", 62400000, 60000000,
                     "at least 62400000 cosets by the mod 16 and mod 25 images; 60000000 rows (3.2 GB) do not suffice"};
  return std::nullopt;
}

std::vector<long> crt_moduli(long cap) {
  std::vector<long> out;
  for (long p : {2L, 3L, 5L}) {
    long q = p;
    while (q * p <= cap) q *= p;
    if (q <= cap) out.push_back(q);
  }
  return out;
}

nlohmann::json IndexRun::to_json() const {
  auto j = enumeration.to_json();
  if (!local_indices.empty()) {
    j["local_indices"] = nlohmann::json::object();
    for (const auto& [n, idx] : local_indices) j["local_indices"][std::to_string(n)] = idx.get_str();
  }
  if (lower_bound) j["lower_bound"] = lower_bound->get_str();
  return j;
}

IndexRun run_index(const OperatorRecord& r, bool include_extra, const coset::Options& options, long crt_cap) {
  IndexRun run;
  run.enumeration = coset::enumerate(behr_presentation(), subgroup_words(r, include_extra), options);
  if (!run.enumeration.completed) {
    for (long n : crt_moduli(crt_cap)) run.local_indices[n] = mod_index(r, n, include_extra).index;
    run.lower_bound = crt_lower_bound(run.local_indices);
  }
  return run;
}

}  // namespace spmono
