// Todd-Coxeter coset enumeration over a Presentation.
//
// Two strategies share one table implementation:
//   hlt     relator-based definitions (scan-and-fill every relator at every
//           coset in order), with lookahead when the table fills up;
//   felsch  column-based definitions in coset order, each followed by
//           processing the deduction stack so the table never contains
//           a definition that a relator could have deduced.
// Coincidences go through a union-find forest and are processed to
// exhaustion before the next definition.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "spmono/fpgroup.hpp"

namespace spmono::coset {

enum class Strategy { hlt, felsch };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct Options {
  // Maximum number of coset rows held at once (live plus dead rows not yet
  // reclaimed by compaction).
  std::uint64_t budget = 8'000'000;
  Strategy strategy = Strategy::felsch;
  // Keep the completed (compacted) table in the result.
  bool keep_table = false;
};

// Upper bound on rows derived from the SPMONO_MAX_TABLE_MB environment
// variable, or 0 when unset.
std::uint64_t memory_row_cap(int columns);

struct Statistics {
  std::uint64_t defined = 0;       // cosets ever defined
  std::uint64_t coincidences = 0;  // primary + secondary merges
  std::uint64_t max_live = 0;
  std::uint64_t compactions = 0;
  std::uint64_t lookaheads = 0;
  double seconds = 0;
};

// Completed coset table, cosets numbered 0 .. size()-1 with the subgroup as
// coset 0.  Column 2i is generator i of the presentation, 2i+1 its inverse.
class CosetTable {
 public:
  CosetTable(std::vector<Gen> generators, std::uint32_t size, std::vector<std::uint32_t> entries);

  std::uint32_t size() const { return size_; }
  int columns() const { return int(generators_.size()) * 2; }
  std::uint32_t next(std::uint32_t coset, int column) const {
    return entries_[std::size_t(coset) * columns() + column];
  }
  int column(Gen g, bool inverse) const;
  const std::vector<Gen>& generators() const { return generators_; }

  // Image of `coset` under the word, acting on the right.
  std::uint32_t trace(std::uint32_t coset, const Word& w) const;

 private:
  std::vector<Gen> generators_;
  std::uint32_t size_;
  std::vector<std::uint32_t> entries_;
};

struct EnumerationResult {
  bool completed = false;
  std::uint64_t index = 0;  // valid when completed
  Strategy strategy = Strategy::felsch;
  std::uint64_t budget = 0;
  Statistics stats;
  std::shared_ptr<const CosetTable> table;  // when completed and keep_table

  nlohmann::json to_json(bool with_statistics = true) const;
};

EnumerationResult enumerate(const Presentation& p, const std::vector<Word>& subgroup, const Options& options);

// Permutation of the cosets induced by right multiplication with w.
std::vector<std::uint32_t> coset_action(const CosetTable& t, const Word& w);

}  // namespace spmono::coset
