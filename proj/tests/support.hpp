#pragma once

#include <random>

#include "spmono/fpgroup.hpp"

namespace spmono::testing {

inline Word random_word(std::mt19937& rng, int max_letters) {
  std::uniform_int_distribution<int> len(0, max_letters), gen(0, kGeneratorCount - 1), exp(-3, 3);
  Word w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int e = exp(rng);
    if (e == 0) e = 1;
    w.append(kAllGenerators[gen(rng)], e);
  }
  return w;
}

}  // namespace spmono::testing
