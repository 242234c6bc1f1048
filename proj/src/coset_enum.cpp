#include "spmono/coset_enum.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace spmono::coset {

std::string to_string(Strategy s) { return s == Strategy::hlt ? "hlt" : "felsch"; }

Strategy strategy_from_string(const std::string& s) {
  if (s == "hlt") return Strategy::hlt;
  if (s == "felsch") return Strategy::felsch;
  throw std::invalid_argument("unknown strategy '" + s + "' (expected hlt or felsch)");
}

std::uint64_t memory_row_cap(int columns) {
  const char* env = std::getenv("SPMONO_MAX_TABLE_MB");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long mb = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || mb == 0) return 0;
  // Row entries plus the union-find slot.
  const std::uint64_t bytes_per_row = std::uint64_t(columns + 1) * sizeof(std::int32_t);
  return (std::uint64_t(mb) << 20) / bytes_per_row;
}

CosetTable::CosetTable(std::vector<Gen> generators, std::uint32_t size, std::vector<std::uint32_t> entries)
    : generators_(std::move(generators)), size_(size), entries_(std::move(entries)) {}

int CosetTable::column(Gen g, bool inverse) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] == g) return int(2 * i + (inverse ? 1 : 0));
  throw std::invalid_argument("CosetTable: generator not in presentation");
}

std::uint32_t CosetTable::trace(std::uint32_t coset, const Word& w) const {
  for (const auto& l : w) {
    const int col = column(l.gen, l.exp < 0);
    const std::uint64_t n = l.exp < 0 ? std::uint64_t(-(l.exp + 1)) + 1 : std::uint64_t(l.exp);
    for (std::uint64_t i = 0; i < n; ++i) coset = next(coset, col);
  }
  return coset;
}

std::vector<std::uint32_t> coset_action(const CosetTable& t, const Word& w) {
  std::vector<std::uint32_t> perm(t.size());
  for (std::uint32_t c = 0; c < t.size(); ++c) perm[c] = t.trace(c, w);
  return perm;
}

nlohmann::json EnumerationResult::to_json(bool with_statistics) const {
  nlohmann::json j;
  j["outcome"] = completed ? "completed" : "budget_exceeded";
  if (completed) j["index"] = index;
  j["strategy"] = to_string(strategy);
  j["budget"] = budget;
  if (!completed) {
    j["max_live"] = stats.max_live;
    j["defined"] = stats.defined;
  }
  if (with_statistics) {
    j["statistics"] = {{"defined", stats.defined},         {"coincidences", stats.coincidences},
                       {"max_live", stats.max_live},       {"compactions", stats.compactions},
                       {"lookaheads", stats.lookaheads},   {"seconds", stats.seconds}};
  }
  return j;
}


namespace {

using Coset = std::int32_t;  // 0 = undefined, cosets start at 1

class BudgetExhausted {};

class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup, const Options& options)
      : generators_(p.generators), ncols_(int(p.generators.size()) * 2), options_(options) {
    std::uint64_t limit = options.budget;
    if (const auto cap = memory_row_cap(ncols_); cap && cap < limit) limit = cap;
    if (limit < 1) throw std::invalid_argument("enumerate: budget must be at least 1");
    if (limit > std::uint64_t(INT32_MAX - 2)) limit = INT32_MAX - 2;
    limit_ = Coset(limit);

    for (const auto& r : p.relators) relators_.push_back(expand(r));
    for (const auto& h : subgroup) subgroup_.push_back(expand(h));
    build_conjugates();

    // Reserving address space up front avoids a doubling reallocation
    // near the budget; pages are only touched as rows are defined.
    const std::size_t reserve_rows = std::min<std::size_t>(std::size_t(limit_) + 1, kMaxReservedRows);
    table_.reserve(reserve_rows * ncols_);
    parent_.reserve(reserve_rows);
    // Row 0 is a sentinel; coset 1 is the subgroup.
    table_.assign(std::size_t(2) * ncols_, 0);
    parent_.assign(2, 0);
    parent_[1] = 1;
    next_free_ = 2;
    live_ = 1;
    stats_.defined = 1;
    stats_.max_live = 1;
  }

  EnumerationResult run() {
    const auto start = std::chrono::steady_clock::now();
    EnumerationResult result;
    result.strategy = options_.strategy;
    result.budget = std::uint64_t(limit_);
    try {
      if (options_.strategy == Strategy::hlt)
        run_hlt();
      else
        run_felsch();
      finish(result);
    } catch (const BudgetExhausted&) {
      result.completed = false;
    }
    stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.stats = stats_;
    return result;
  }

 private:
  Coset& at(Coset c, int x) { return table_[std::size_t(c) * ncols_ + x]; }
  static int inv(int x) { return x ^ 1; }
  bool live(Coset c) const { return parent_[c] == c; }
  bool full() const { return next_free_ > limit_; }

  std::vector<int> expand(const Word& w) const {
    std::vector<int> cols;
    for (const auto& l : w) {
      const auto it = std::find(generators_.begin(), generators_.end(), l.gen);
      if (it == generators_.end())
        throw std::invalid_argument("enumerate: word uses a generator outside the presentation");
      const int col = int(2 * (it - generators_.begin()) + (l.exp < 0 ? 1 : 0));
      const std::uint64_t n = l.exp < 0 ? std::uint64_t(-(l.exp + 1)) + 1 : std::uint64_t(l.exp);
      if (n > (1u << 26)) throw std::invalid_argument("enumerate: word exponent too large");
      cols.insert(cols.end(), n, col);
    }
    return cols;
  }

  // Cyclic conjugates of relators and their inverses, bucketed by first letter.
  void build_conjugates() {
    std::set<std::vector<int>> seen;
    conj_.assign(ncols_, {});
    for (const auto& r : relators_) {
      if (r.empty()) continue;
      std::vector<int> ri(r.rbegin(), r.rend());
      for (auto& x : ri) x = inv(x);
      for (const std::vector<int>* base : {&r, static_cast<const std::vector<int>*>(&ri)}) {
        for (std::size_t s = 0; s < base->size(); ++s) {
          std::vector<int> w(base->begin() + s, base->end());
          w.insert(w.end(), base->begin(), base->begin() + s);
          if (seen.insert(w).second) conj_[w[0]].push_back(std::move(w));
        }
      }
    }
  }

  // Caller guarantees !full().
  void define(Coset c, int x) {
    const Coset n = next_free_++;
    table_.resize(std::size_t(next_free_) * ncols_, 0);
    parent_.push_back(n);
    ++live_;
    ++stats_.defined;
    stats_.max_live = std::max<std::uint64_t>(stats_.max_live, live_);
    at(c, x) = n;
    at(n, inv(x)) = c;
    if (felsch_) deductions_.push_back({c, x});
  }

  Coset rep(Coset c) {
    Coset r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const Coset nxt = parent_[c];
      parent_[c] = r;
      c = nxt;
    }
    return r;
  }

  void merge(Coset a, Coset b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    const Coset lo = std::min(a, b), hi = std::max(a, b);
    parent_[hi] = lo;
    queue_.push_back(hi);
    --live_;
    ++stats_.coincidences;
  }

  void coincidence(Coset a, Coset b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const Coset g = queue_[i];
      for (int x = 0; x < ncols_; ++x) {
        const Coset d = at(g, x);
        if (d == 0) continue;
        at(g, x) = 0;
        if (at(d, inv(x)) == g) at(d, inv(x)) = 0;
        const Coset m = rep(g), n = rep(d);
        if (at(m, x) != 0) {
          merge(n, at(m, x));
        } else if (at(n, inv(x)) != 0) {
          merge(m, at(n, inv(x)));
        } else {
          at(m, x) = n;
          at(n, inv(x)) = m;
          if (felsch_) deductions_.push_back({m, x});
        }
      }
    }
    queue_.clear();
  }

  enum class ScanResult { ok, deduced };

  // Trace w from c in both directions without defining anything.
  ScanResult scan(Coset c, const std::vector<int>& w) {
    Coset f = c, b = c;
    int i = 0, j = int(w.size()) - 1;
    while (i <= j && at(f, w[i]) != 0) f = at(f, w[i++]);
    if (i > j) {
      if (f != b) coincidence(f, b);
      return ScanResult::ok;
    }
    while (j >= i && at(b, inv(w[j])) != 0) b = at(b, inv(w[j--]));
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      at(f, w[i]) = b;
      at(b, inv(w[i])) = f;
      if (felsch_) deductions_.push_back({f, w[i]});
      return ScanResult::deduced;
    }
    return ScanResult::ok;
  }

  // Trace w from cursor_, defining cosets until the cycle closes.  Space is
  // made (and cursor_ renumbered) only between definitions.
  void scan_and_fill(const std::vector<int>& w) {
    for (;;) {
      Coset f = cursor_, b = cursor_;
      int i = 0, j = int(w.size()) - 1;
      for (;;) {
        while (i <= j && at(f, w[i]) != 0) f = at(f, w[i++]);
        if (i > j) {
          if (f != b) coincidence(f, b);
          return;
        }
        while (j >= i && at(b, inv(w[j])) != 0) b = at(b, inv(w[j--]));
        if (j < i) {
          coincidence(f, b);
          return;
        }
        if (i == j) {
          at(f, w[i]) = b;
          at(b, inv(w[i])) = f;
          if (felsch_) deductions_.push_back({f, w[i]});
          return;
        }
        if (full()) break;
        define(f, w[i]);
      }
      make_space();
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      if (deductions_.size() > kMaxDeductions) {
        deductions_.clear();
        full_scan();
        return;
      }
      const auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!live(c)) continue;
      for (const auto& w : conj_[x]) {
        scan(c, w);
        if (!live(c)) break;
      }
      if (!live(c)) continue;
      const Coset d = at(c, x);
      if (d == 0) continue;
      for (const auto& w : conj_[inv(x)]) {
        scan(d, w);
        if (!live(d)) break;
      }
    }
  }

  // Scan every relator at every live coset until nothing changes.
  void full_scan() {
    const bool was_felsch = felsch_;
    felsch_ = false;
    bool changed = true;
    while (changed) {
      changed = false;
      const std::uint64_t before = stats_.coincidences;
      for (Coset c = 1; c < next_free_; ++c) {
        for (const auto& r : relators_) {
          if (!live(c)) break;
          if (scan(c, r) == ScanResult::deduced) changed = true;
        }
      }
      if (stats_.coincidences != before) changed = true;
    }
    ++stats_.lookaheads;
    felsch_ = was_felsch;
  }

  // One pass of relator scans over every live coset, without definitions.
  void lookahead() {
    ++stats_.lookaheads;
    for (Coset c = 1; c < next_free_; ++c)
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan(c, r);
      }
  }

  // Called at a quiescent point when the table is full: reclaim dead rows,
  // then (hlt only) look ahead for coincidences, then give up.
  void make_space() {
    compact();
    if (!full()) return;
    if (!felsch_) {
      lookahead();
      compact();
      if (!full()) return;
    }
    throw BudgetExhausted{};
  }

  // Renumber live cosets 1..live in order and drop dead rows.
  void compact() {
    if (live_ + 1 == std::uint64_t(next_free_)) return;
    ++stats_.compactions;
    std::vector<Coset> map(std::size_t(next_free_), 0);
    Coset n = 1;
    for (Coset c = 1; c < next_free_; ++c)
      if (live(c)) map[c] = n++;
    for (Coset c = 1; c < next_free_; ++c) {
      if (!live(c)) continue;
      const Coset nc = map[c];
      for (int x = 0; x < ncols_; ++x) {
        const Coset v = at(c, x);
        at(nc, x) = v ? map[v] : 0;
      }
    }
    if (cursor_ > 0) cursor_ = map[rep(cursor_)];
    std::vector<std::pair<Coset, int>> kept;
    for (const auto& [c, x] : deductions_)
      if (live(c)) kept.push_back({map[c], x});
    deductions_ = std::move(kept);

    next_free_ = n;
    table_.resize(std::size_t(next_free_) * ncols_);
    parent_.resize(std::size_t(next_free_));
    for (Coset c = 0; c < next_free_; ++c) parent_[c] = c;
  }

  void run_hlt() {
    felsch_ = false;
    cursor_ = 1;
    for (const auto& h : subgroup_) scan_and_fill(h);
    while (cursor_ < next_free_) {
      if (live(cursor_)) {
        for (const auto& r : relators_) {
          scan_and_fill(r);
          if (!live(cursor_)) break;
        }
        for (int x = 0; x < ncols_ && live(cursor_); ++x) {
          if (at(cursor_, x) != 0) continue;
          if (full()) make_space();
          if (at(cursor_, x) == 0) define(cursor_, x);
        }
      }
      ++cursor_;
    }
  }

  void run_felsch() {
    felsch_ = true;
    cursor_ = 1;
    for (const auto& h : subgroup_) {
      scan_and_fill(h);
      process_deductions();
    }
    for (;;) {
      for (cursor_ = 1; cursor_ < next_free_; ++cursor_) {
        for (int x = 0; x < ncols_ && live(cursor_); ++x) {
          if (at(cursor_, x) != 0) continue;
          if (full()) make_space();
          if (at(cursor_, x) != 0) continue;
          define(cursor_, x);
          process_deductions();
        }
      }
      cursor_ = 0;
      if (closed_and_consistent()) return;
      full_scan();
    }
  }

  bool closed_and_consistent() {
    for (Coset c = 1; c < next_free_; ++c) {
      if (!live(c)) continue;
      for (int x = 0; x < ncols_; ++x)
        if (at(c, x) == 0) return false;
    }
    for (Coset c = 1; c < next_free_; ++c) {
      if (!live(c)) continue;
      for (const auto& r : relators_) {
        Coset f = c;
        for (int x : r) f = at(f, x);
        if (f != c) return false;
      }
    }
    return true;
  }

  void finish(EnumerationResult& result) {
    cursor_ = 0;
    compact();
    if (!closed_and_consistent()) throw std::logic_error("enumerate: finished table is not closed");
    for (const auto& h : subgroup_) {
      Coset f = 1;
      for (int x : h) f = at(f, x);
      if (f != 1) throw std::logic_error("enumerate: subgroup generator does not fix the subgroup coset");
    }
    result.completed = true;
    result.index = live_;
    if (options_.keep_table) {
      const std::uint32_t size = std::uint32_t(live_);
      std::vector<std::uint32_t> entries(std::size_t(size) * ncols_);
      for (std::uint32_t c = 0; c < size; ++c)
        for (int x = 0; x < ncols_; ++x)
          entries[std::size_t(c) * ncols_ + x] = std::uint32_t(at(Coset(c + 1), x) - 1);
      result.table = std::make_shared<CosetTable>(generators_, size, std::move(entries));
    }
  }

  static constexpr std::size_t kMaxDeductions = 1u << 22;
  static constexpr std::size_t kMaxReservedRows = std::size_t(1) << 26;

  std::vector<Gen> generators_;
  int ncols_;
  Options options_;
  Coset limit_ = 0;
  bool felsch_ = false;

  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> subgroup_;
  std::vector<std::vector<std::vector<int>>> conj_;

  std::vector<Coset> table_;
  std::vector<Coset> parent_;
  std::vector<Coset> queue_;
  std::vector<std::pair<Coset, int>> deductions_;
  Coset next_free_ = 1;
  std::uint64_t live_ = 0;
  Coset cursor_ = 0;
  Statistics stats_;
};

}  // namespace

EnumerationResult enumerate(const Presentation& p, const std::vector<Word>& subgroup, const Options& options) {
  return Enumerator(p, subgroup, options).run();
}

}  // namespace spmono::coset
