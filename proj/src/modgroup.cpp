#include "spmono/modgroup.hpp"

#include <atomic>
#include <chrono>
#include <cstring>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace spmono {

std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<long, int>> f;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

mpz_class sp4_order(long n) {
  if (n < 2) throw std::invalid_argument("sp4_order: modulus must be at least 2");
  mpz_class order = 1;
  for (const auto& [p, e] : factorize(n)) {
    const mpz_class P = p;
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), P.get_mpz_t(), 10 * (e - 1));
    // p^10 (1 - p^-2)(1 - p^-4) = p^4 (p^2 - 1)(p^4 - 1)
    order *= pe * P * P * P * P * (P * P - 1) * (P * P * P * P - 1);
  }
  return order;
}

ModGroupContext::ModGroupContext(long n) : modulus(std::uint32_t(n)), order(sp4_order(n)) {}

std::string to_string(OrderMethod m) { return m == OrderMethod::bfs ? "bfs" : "schreier_sims"; }

namespace {

using Key = ModMatrix4::Key;

std::uint64_t hash_key(const Key& k) {
  std::uint64_t a, b;
  std::memcpy(&a, k.data(), 8);
  std::memcpy(&b, k.data() + 8, 8);
  std::uint64_t h = a * 0x9E3779B97F4A7C15ull ^ (b + 0x632BE59BD9B4E019ull + (a << 6) + (a >> 2));
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 29;
  return h;
}

// Open-addressing set of 16-byte keys; slot value is element index + 1.
class KeySet {
 public:
  KeySet() : slots_(1024, 0) {}

  // Returns true when k was new.
  bool insert(const Key& k) {
    if ((elements_.size() + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash_key(k) & mask;; i = (i + 1) & mask) {
      const std::uint32_t s = slots_[i];
      if (s == 0) {
        elements_.push_back(k);
        slots_[i] = std::uint32_t(elements_.size());
        return true;
      }
      if (elements_[s - 1] == k) return false;
    }
  }

  std::size_t size() const { return elements_.size(); }
  const Key& operator[](std::size_t i) const { return elements_[i]; }

 private:
  void grow() {
    std::vector<std::uint32_t> next(slots_.size() * 2, 0);
    const std::size_t mask = next.size() - 1;
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      std::size_t i = hash_key(elements_[e]) & mask;
      while (next[i]) i = (i + 1) & mask;
      next[i] = std::uint32_t(e + 1);
    }
    slots_.swap(next);
  }

  std::vector<std::uint32_t> slots_;
  std::vector<Key> elements_;
};

std::uint32_t common_modulus(const std::vector<ModMatrix4>& gens) {
  if (gens.empty()) throw std::invalid_argument("subgroup: need at least one generator");
  const std::uint32_t n = gens.front().modulus();
  for (const auto& g : gens)
    if (g.modulus() != n) throw std::invalid_argument("subgroup: generators have different moduli");
  return n;
}

// Stabilizer chain for a matrix group acting on column vectors mod N, with
// base e1, e2, e3, e4.
class StabilizerChain {
 public:
  explicit StabilizerChain(const std::vector<ModMatrix4>& gens) : n_(common_modulus(gens)) {
    std::uint64_t points = 1;
    for (int i = 0; i < 4; ++i) points *= n_;
    if (points > (std::uint64_t(1) << 26))
      throw std::invalid_argument("subgroup_order_sims: modulus too large for the vector action");
    points_ = std::uint32_t(points);
    for (auto& l : levels_) l.pos.assign(points_, -1);
    for (const auto& g : gens)
      if (!g.is_identity()) levels_[0].gens.push_back(g);
    for (int i = 0; i < 4; ++i) rebuild_orbit(i);
  }

  mpz_class order() {
    int i = 3;
    while (i >= 0) {
      const int j = check_level(i);
      i = j >= 0 ? j : i - 1;
    }
    mpz_class o = 1;
    for (const auto& l : levels_) o *= mpz_class(static_cast<unsigned long>(l.orbit.size()));
    return o;
  }

 private:
  struct Level {
    std::vector<ModMatrix4> gens;
    std::vector<std::uint32_t> orbit;
    std::vector<std::int32_t> pos;
    std::vector<ModMatrix4> trans;
    std::vector<ModMatrix4> trans_inv;
    std::size_t point_cursor = 0;
    std::size_t gen_cursor = 0;
  };

  std::uint32_t encode(const std::array<std::uint32_t, 4>& v) const {
    return v[0] + n_ * (v[1] + n_ * (v[2] + n_ * v[3]));
  }
  std::array<std::uint32_t, 4> decode(std::uint32_t x) const {
    std::array<std::uint32_t, 4> v;
    for (int i = 0; i < 4; ++i) {
      v[i] = x % n_;
      x /= n_;
    }
    return v;
  }
  std::uint32_t column_point(const ModMatrix4& g, int c) const {
    return encode({g(0, c), g(1, c), g(2, c), g(3, c)});
  }

  void rebuild_orbit(int i) {
    Level& l = levels_[i];
    for (auto p : l.orbit) l.pos[p] = -1;
    l.orbit.clear();
    l.trans.clear();
    l.trans_inv.clear();
    l.point_cursor = l.gen_cursor = 0;
    std::array<std::uint32_t, 4> e{};
    e[i] = 1 % n_;
    const std::uint32_t base = encode(e);
    l.orbit.push_back(base);
    l.pos[base] = 0;
    l.trans.push_back(ModMatrix4::identity(n_));
    l.trans_inv.push_back(ModMatrix4::identity(n_));
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      const auto v = decode(l.orbit[k]);
      for (const auto& s : l.gens) {
        const std::uint32_t q = encode(s.apply(v));
        if (l.pos[q] >= 0) continue;
        l.pos[q] = std::int32_t(l.orbit.size());
        l.orbit.push_back(q);
        ModMatrix4 u = s * l.trans[k];
        l.trans_inv.push_back(u.inverse());
        l.trans.push_back(std::move(u));
      }
    }
  }

  // Sift h through levels from..3; returns the residue and the level it
  // dropped out at (4 when it passed every level).
  std::pair<ModMatrix4, int> sift(ModMatrix4 h, int from) const {
    for (int l = from; l < 4; ++l) {
      const auto idx = levels_[l].pos[column_point(h, l)];
      if (idx < 0) return {h, l};
      h = levels_[l].trans_inv[idx] * h;
    }
    return {h, 4};
  }

  // Checks Schreier generators of level i.  When one fails to sift, its
  // residue is added to the levels below and the lowest touched level is
  // returned; otherwise -1.
  int check_level(int i) {
    Level& l = levels_[i];
    for (; l.point_cursor < l.orbit.size(); ++l.point_cursor, l.gen_cursor = 0) {
      const auto v = decode(l.orbit[l.point_cursor]);
      for (; l.gen_cursor < l.gens.size(); ++l.gen_cursor) {
        const auto& s = l.gens[l.gen_cursor];
        const auto q = l.pos[encode(s.apply(v))];
        const ModMatrix4 h = l.trans_inv[q] * s * l.trans[l.point_cursor];
        auto [residue, drop] = sift(h, i + 1);
        if (residue.is_identity()) continue;
        if (drop == 4) throw std::logic_error("subgroup_order_sims: residue fixes the base but is not the identity");
        ++l.gen_cursor;
        for (int k = i + 1; k <= drop; ++k) {
          levels_[k].gens.push_back(residue);
          rebuild_orbit(k);
        }
        return drop;
      }
    }
    return -1;
  }

  std::uint32_t n_;
  std::uint32_t points_ = 0;
  std::array<Level, 4> levels_;
};

}  // namespace

std::optional<std::uint64_t> subgroup_order_bfs(const std::vector<ModMatrix4>& gens, std::uint64_t cap) {
  const std::uint32_t n = common_modulus(gens);
  if (n > 256) throw std::invalid_argument("subgroup_order_bfs: modulus exceeds 256");
  KeySet seen;
  seen.insert(ModMatrix4::identity(n).key());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    const ModMatrix4 g = ModMatrix4::from_key(n, seen[i]);
    for (const auto& s : gens) {
      if (seen.insert((g * s).key()) && seen.size() > cap) return std::nullopt;
    }
  }
  return seen.size();
}

mpz_class subgroup_order_sims(const std::vector<ModMatrix4>& gens) { return StabilizerChain(gens).order(); }

namespace {

constexpr std::uint64_t kBfsAmbientLimit = std::uint64_t(1) << 22;

}  // namespace

SubgroupHandle generated_subgroup(const std::vector<ModMatrix4>& gens) {
  const std::uint32_t n = common_modulus(gens);
  const mpz_class ambient = sp4_order(n);
  SubgroupHandle h{gens, 0, OrderMethod::schreier_sims};
  bool done = false;
  if (n <= 256 && ambient <= mpz_class(static_cast<unsigned long>(kBfsAmbientLimit))) {
    if (const auto o = subgroup_order_bfs(gens)) {
      h.order = mpz_class(static_cast<unsigned long>(*o));
      h.method = OrderMethod::bfs;
      done = true;
    }
  }
  if (!done) h.order = subgroup_order_sims(gens);
  if (ambient % h.order != 0)
    throw InvariantError("subgroup order " + h.order.get_str() + " does not divide |Sp4(Z/" + std::to_string(n) +
                         ")| = " + ambient.get_str());
  return h;
}

std::vector<ModMatrix4> reduced_generators(const OperatorRecord& r, long n, bool include_extra) {
  if (n < 2 || n > 65535) throw std::invalid_argument("modulus must lie in [2, 65535]");
  const auto g = integral_generators(r.d, r.k);
  std::vector<ModMatrix4> out{mod_reduce(g.M, std::uint32_t(n)), mod_reduce(g.N, std::uint32_t(n))};
  if (include_extra)
    for (const auto& e : r.extra_generators) out.push_back(mod_reduce(e, std::uint32_t(n)));
  return out;
}

ModIndex mod_index(const OperatorRecord& r, long n, bool include_extra) {
  const auto start = std::chrono::steady_clock::now();
  const auto h = generated_subgroup(reduced_generators(r, n, include_extra));
  const mpz_class ambient = sp4_order(n);
  if (ambient % h.order != 0) throw InvariantError("mod_index: non-exact division");
  ModIndex out{n, ambient / h.order, h.order, h.method, 0};
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

mpz_class crt_lower_bound(const std::map<long, mpz_class>& prime_power_indices) {
  mpz_class product = 1;
  for (auto a = prime_power_indices.begin(); a != prime_power_indices.end(); ++a) {
    if (a->first < 2) throw std::invalid_argument("crt_lower_bound: moduli must be at least 2");
    for (auto b = std::next(a); b != prime_power_indices.end(); ++b)
      if (std::gcd(a->first, b->first) != 1)
        throw std::invalid_argument("crt_lower_bound: moduli " + std::to_string(a->first) + " and " +
                                    std::to_string(b->first) + " are not coprime");
    product *= a->second;
  }
  return product;
}

std::vector<ModTableCell> mod_table(const std::vector<const OperatorRecord*>& columns,
                                    const std::vector<long>& moduli, unsigned jobs, bool include_extra) {
  const std::size_t total = columns.size() * moduli.size();
  std::vector<ModTableCell> cells(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const auto* r = columns[i % columns.size()];
      const long n = moduli[i / columns.size()];
      try {
        cells[i] = {r->aesz, r->d, r->k, mod_index(*r, n, include_extra)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, unsigned(std::max<std::size_t>(total, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return cells;
}

std::string mod_table_csv(const std::vector<const OperatorRecord*>& columns, const std::vector<long>& moduli,
                          const std::vector<ModTableCell>& cells) {
  std::ostringstream os;
  os << "N";
  for (const auto* r : columns) os << ",(" << r->d << "," << r->k << ")";
  os << "\n";
  for (std::size_t row = 0; row < moduli.size(); ++row) {
    os << moduli[row];
    for (std::size_t c = 0; c < columns.size(); ++c) os << "," << cells[row * columns.size() + c].value.index.get_str();
    os << "\n";
  }
  return os.str();
}

nlohmann::json mod_table_json(const std::vector<ModTableCell>& cells) {
  auto j = nlohmann::json::array();
  for (const auto& c : cells) {
    j.push_back({{"aesz", c.aesz},
                 {"d", c.d},
                 {"k", c.k},
                 {"n", c.value.modulus},
                 {"index", c.value.index.get_str()},
                 {"subgroup_order", c.value.subgroup_order.get_str()},
                 {"method", to_string(c.value.method)},
                 {"seconds", c.value.seconds}});
  }
  return j;
}

}  // namespace spmono
