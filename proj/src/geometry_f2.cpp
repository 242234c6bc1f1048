#include "spmono/geometry_f2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "spmono/modgroup.hpp"

namespace spmono::f2 {

namespace {

std::array<F2Point, 15> make_points() {
  std::array<F2Point, 15> pts;
  for (int i = 0; i < 15; ++i) {
    const int x = i + 1;
    pts[i] = {char('a' + i), {std::uint8_t((x >> 3) & 1), std::uint8_t((x >> 2) & 1), std::uint8_t((x >> 1) & 1),
                              std::uint8_t(x & 1)}};
  }
  return pts;
}

PointSet bit(int i) { return PointSet(1u << i); }

template <std::size_t K>
std::array<PointSet, K> sorted(std::array<PointSet, K> a) {
  std::sort(a.begin(), a.end(), [](PointSet x, PointSet y) { return std::countr_zero(x) < std::countr_zero(y); });
  return a;
}

Syntheme make_syntheme(int number, const std::string& t1, const std::string& t2) {
  return {number, sorted<2>({parse_set(t1), parse_set(t2)})};
}

LinePentad make_line_pentad(int number, std::initializer_list<const char*> lines) {
  std::array<PointSet, 5> a{};
  std::size_t i = 0;
  for (const char* l : lines) a[i++] = parse_set(l);
  return {number, sorted<5>(a)};
}

bool is_line(PointSet s) {
  if (std::popcount(s) != 3) return false;
  Vec sum{};
  for (int i = 0; i < 15; ++i)
    if (s & bit(i))
      for (int c = 0; c < 4; ++c) sum[c] ^= points()[i].vector[c];
  return sum == Vec{};
}

bool pairwise(PointSet s, int value) {
  for (int i = 0; i < 15; ++i)
    for (int j = i + 1; j < 15; ++j)
      if ((s & bit(i)) && (s & bit(j)) && pairing(points()[i].vector, points()[j].vector) != value) return false;
  return true;
}

bool across(PointSet s, PointSet t, int value) {
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j)
      if ((s & bit(i)) && (t & bit(j)) && pairing(points()[i].vector, points()[j].vector) != value) return false;
  return true;
}

int pentad_number(PointSet s) {
  for (const auto& p : reference_pentads())
    if (p.points == s) return p.number;
  return 0;
}

int syntheme_number(const std::array<PointSet, 2>& t) {
  const auto s = sorted<2>(t);
  for (const auto& x : reference_synthemes())
    if (x.triples == s) return x.number;
  return 0;
}

int line_pentad_number(const std::array<PointSet, 5>& lines) {
  const auto s = sorted<5>(lines);
  for (const auto& x : reference_line_pentads())
    if (x.lines == s) return x.number;
  return 0;
}

void require_mod2(const ModMatrix4& m) {
  if (m.modulus() != 2) throw std::invalid_argument("geometry: matrix must be reduced mod 2");
}

int image_number(const ModMatrix4& m, ObjectKind kind, int number) {
  switch (kind) {
    case ObjectKind::pentad:
      return permutation_image(m)[number - 1];
    case ObjectKind::syntheme:
      return syntheme_permutation(m)[number - 1];
    case ObjectKind::line_pentad:
      return line_pentad_permutation(m)[number - 1];
  }
  return 0;
}

int object_count(ObjectKind kind) { return kind == ObjectKind::syntheme ? 10 : 6; }

std::vector<ModMatrix4> stabilizer(ObjectKind kind, int number) {
  if (number < 1 || number > object_count(kind)) throw std::invalid_argument("geometry: object number out of range");
  std::vector<ModMatrix4> out;
  for (const auto& g : sp4_f2_elements())
    if (image_number(g, kind, number) == number) out.push_back(g);
  return out;
}

std::string object_label(ObjectKind kind, int number) {
  switch (kind) {
    case ObjectKind::pentad:
      return std::to_string(number);
    case ObjectKind::syntheme:
      return roman(number);
    case ObjectKind::line_pentad:
      return std::to_string(number) + "'";
  }
  return {};
}

}  // namespace

const std::array<F2Point, 15>& points() {
  static const auto pts = make_points();
  return pts;
}

int point_index(const Vec& v) {
  const int x = (v[0] & 1) << 3 | (v[1] & 1) << 2 | (v[2] & 1) << 1 | (v[3] & 1);
  return x - 1;
}

int point_index(char label) {
  if (label < 'a' || label > 'o') throw std::invalid_argument(std::string("unknown point label '") + label + "'");
  return label - 'a';
}

int pairing(const Vec& u, const Vec& v) { return (u[0] * v[2] + u[1] * v[3] + u[2] * v[0] + u[3] * v[1]) & 1; }

std::string set_str(PointSet s) {
  std::string out = "{";
  for (int i = 0; i < 15; ++i) {
    if (!(s & bit(i))) continue;
    if (out.size() > 1) out += ",";
    out += char('a' + i);
  }
  return out + "}";
}

PointSet parse_set(const std::string& letters) {
  PointSet s = 0;
  for (char c : letters) s |= bit(point_index(c));
  return s;
}

const std::vector<Pentad>& reference_pentads() {
  static const std::vector<Pentad> list = {{1, parse_set("adgmo")}, {2, parse_set("aefln")},
                                           {3, parse_set("bhkno")}, {4, parse_set("bijlm")},
                                           {5, parse_set("cdeik")}, {6, parse_set("cfghj")}};
  return list;
}

const std::vector<Syntheme>& reference_synthemes() {
  static const std::vector<Syntheme> list = {
      make_syntheme(1, "ade", "bhj"), make_syntheme(2, "afg", "bik"), make_syntheme(3, "alm", "chk"),
      make_syntheme(4, "ano", "cij"), make_syntheme(5, "bln", "cdg"), make_syntheme(6, "bmo", "cef"),
      make_syntheme(7, "dim", "fhn"), make_syntheme(8, "dko", "fjl"), make_syntheme(9, "eil", "gho"),
      make_syntheme(10, "ekn", "gjm")};
  return list;
}

const std::vector<LinePentad>& reference_line_pentads() {
  static const std::vector<LinePentad> list = {
      make_line_pentad(1, {"abc", "dhl", "ejo", "fkm", "gin"}),
      make_line_pentad(2, {"abc", "djn", "ehm", "fio", "gkl"}),
      make_line_pentad(3, {"ajk", "beg", "cmn", "dhl", "fio"}),
      make_line_pentad(4, {"ahi", "bdf", "cmn", "ejo", "gkl"}),
      make_line_pentad(5, {"ahi", "beg", "clo", "djn", "fkm"}),
      make_line_pentad(6, {"ajk", "bdf", "clo", "ehm", "gin"})};
  return list;
}

std::vector<Pentad> enumerate_pentads() {
  std::vector<Pentad> out;
  for (unsigned s = 0; s < (1u << 15); ++s) {
    if (std::popcount(s) != 5 || !pairwise(PointSet(s), 1)) continue;
    const int number = pentad_number(PointSet(s));
    if (!number) throw InvariantError("pentad " + set_str(PointSet(s)) + " is missing from the reference list");
    out.push_back({number, PointSet(s)});
  }
  std::sort(out.begin(), out.end(), [](const Pentad& a, const Pentad& b) { return a.number < b.number; });
  return out;
}

std::vector<Syntheme> enumerate_synthemes() {
  std::vector<PointSet> triples;
  for (unsigned s = 0; s < (1u << 15); ++s)
    if (std::popcount(s) == 3 && pairwise(PointSet(s), 1)) triples.push_back(PointSet(s));
  std::vector<Syntheme> out;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    for (std::size_t j = i + 1; j < triples.size(); ++j) {
      if (triples[i] & triples[j]) continue;
      if (!across(triples[i], triples[j], 0)) continue;
      const std::array<PointSet, 2> t{triples[i], triples[j]};
      const int number = syntheme_number(t);
      if (!number)
        throw InvariantError("syntheme " + set_str(t[0]) + set_str(t[1]) + " is missing from the reference list");
      out.push_back({number, sorted<2>(t)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Syntheme& a, const Syntheme& b) { return a.number < b.number; });
  return out;
}

std::vector<LinePentad> enumerate_line_pentads() {
  std::vector<PointSet> lines;
  for (unsigned s = 0; s < (1u << 15); ++s)
    if (is_line(PointSet(s)) && pairwise(PointSet(s), 0)) lines.push_back(PointSet(s));
  std::vector<LinePentad> out;
  std::array<PointSet, 5> chosen{};
  // Partitions of the 15 points into 5 Lagrangian lines; each line is chosen
  // to contain the lowest uncovered point.
  auto search = [&](auto&& self, int depth, PointSet covered) -> void {
    if (depth == 5) {
      const int number = line_pentad_number(chosen);
      if (!number) throw InvariantError("line pentad is missing from the reference list");
      out.push_back({number, sorted<5>(chosen)});
      return;
    }
    const int low = std::countr_one(covered);
    for (PointSet l : lines) {
      if (!(l & bit(low)) || (l & covered)) continue;
      chosen[depth] = l;
      self(self, depth + 1, PointSet(covered | l));
    }
  };
  search(search, 0, 0);
  std::sort(out.begin(), out.end(), [](const LinePentad& a, const LinePentad& b) { return a.number < b.number; });
  return out;
}

std::string roman(int n) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"};
  if (n < 1 || n > 10) throw std::invalid_argument("roman: only 1..10 are used");
  return names[n - 1];
}

Vec act(const ModMatrix4& m, const Vec& v) {
  require_mod2(m);
  const auto w = m.apply({v[0], v[1], v[2], v[3]});
  return {std::uint8_t(w[0]), std::uint8_t(w[1]), std::uint8_t(w[2]), std::uint8_t(w[3])};
}

PointSet act(const ModMatrix4& m, PointSet s) {
  PointSet out = 0;
  for (int i = 0; i < 15; ++i) {
    if (!(s & bit(i))) continue;
    const int j = point_index(act(m, points()[i].vector));
    if (j < 0) throw std::invalid_argument("geometry: matrix is singular mod 2");
    out |= bit(j);
  }
  return out;
}

std::array<int, 6> permutation_image(const ModMatrix4& m) {
  std::array<int, 6> perm{};
  for (const auto& p : reference_pentads()) {
    const int img = pentad_number(act(m, p.points));
    if (!img) throw InvariantError("matrix does not preserve the symplectic form mod 2");
    perm[p.number - 1] = img;
  }
  return perm;
}

std::array<int, 10> syntheme_permutation(const ModMatrix4& m) {
  std::array<int, 10> perm{};
  for (const auto& s : reference_synthemes()) {
    const int img = syntheme_number({act(m, s.triples[0]), act(m, s.triples[1])});
    if (!img) throw InvariantError("matrix does not preserve the symplectic form mod 2");
    perm[s.number - 1] = img;
  }
  return perm;
}

std::array<int, 6> line_pentad_permutation(const ModMatrix4& m) {
  std::array<int, 6> perm{};
  for (const auto& lp : reference_line_pentads()) {
    std::array<PointSet, 5> img;
    for (int i = 0; i < 5; ++i) img[i] = act(m, lp.lines[i]);
    const int n = line_pentad_number(img);
    if (!n) throw InvariantError("matrix does not preserve the symplectic form mod 2");
    perm[lp.number - 1] = n;
  }
  return perm;
}

template <std::size_t K>
std::string cycles(const std::array<int, K>& perm, bool roman_labels) {
  auto label = [&](int i) { return roman_labels ? roman(i) : std::to_string(i); };
  std::string out;
  std::array<bool, K> seen{};
  for (std::size_t start = 0; start < K; ++start) {
    if (seen[start] || perm[start] == int(start) + 1) continue;
    out += "(" + label(int(start) + 1);
    seen[start] = true;
    for (int x = perm[start]; x != int(start) + 1; x = perm[x - 1]) {
      out += "," + label(x);
      seen[x - 1] = true;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

template std::string cycles<6>(const std::array<int, 6>&, bool);
template std::string cycles<10>(const std::array<int, 10>&, bool);

ModMatrix4 transvection(int point) {
  if (point < 0 || point >= 15) throw std::invalid_argument("transvection: point index out of range");
  const Vec p = points()[point].vector;
  // Column j is the image of e_j: e_j + (e_j, p) p.
  std::array<std::int64_t, 16> e{};
  for (int j = 0; j < 4; ++j) {
    Vec ej{};
    ej[j] = 1;
    const int c = pairing(ej, p);
    for (int r = 0; r < 4; ++r) e[r * 4 + j] = (ej[r] + c * p[r]) & 1;
  }
  return ModMatrix4::from_entries(2, e);
}

const std::vector<ModMatrix4>& sp4_f2_elements() {
  static const std::vector<ModMatrix4> elements = [] {
    std::vector<ModMatrix4> gens;
    for (int i = 0; i < 15; ++i) gens.push_back(transvection(i));
    std::vector<ModMatrix4> out{ModMatrix4::identity(2)};
    std::unordered_set<ModMatrix4, ModMatrix4Hash> seen(out.begin(), out.end());
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& g : gens) {
        ModMatrix4 x = out[i] * g;
        if (seen.insert(x).second) out.push_back(x);
      }
    if (out.size() != 720) throw InvariantError("transvections do not generate a group of order 720");
    return out;
  }();
  return elements;
}

std::string to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::pentad:
      return "pentad";
    case ObjectKind::syntheme:
      return "syntheme";
    case ObjectKind::line_pentad:
      return "line_pentad";
  }
  return {};
}

ObjectKind object_kind_from_string(const std::string& s) {
  if (s == "pentad" || s == "pentads") return ObjectKind::pentad;
  if (s == "syntheme" || s == "synthemes") return ObjectKind::syntheme;
  if (s == "line_pentad" || s == "line_pentads" || s == "line-pentads") return ObjectKind::line_pentad;
  throw std::invalid_argument("unknown object kind '" + s + "'");
}

std::vector<int> fixed_objects(const std::vector<ModMatrix4>& gens, ObjectKind kind) {
  std::vector<int> out;
  for (int n = 1; n <= object_count(kind); ++n) {
    bool fixed = true;
    for (const auto& g : gens)
      if (image_number(g, kind, n) != n) fixed = false;
    if (fixed) out.push_back(n);
  }
  return out;
}

int stabilizer_order(ObjectKind kind, int number) { return int(stabilizer(kind, number).size()); }

std::vector<int> stabilizer_point_orbits(ObjectKind kind, int number) {
  const auto stab = stabilizer(kind, number);
  std::vector<int> orbit_of(15, -1);
  std::vector<int> lengths;
  for (int start = 0; start < 15; ++start) {
    if (orbit_of[start] >= 0) continue;
    PointSet orbit = 0;
    for (const auto& g : stab) orbit |= bit(point_index(act(g, points()[start].vector)));
    for (int i = 0; i < 15; ++i)
      if (orbit & bit(i)) orbit_of[i] = int(lengths.size());
    lengths.push_back(std::popcount(orbit));
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<int> stabilizer_permutation_character(ObjectKind kind, int number) {
  std::vector<int> chi;
  for (const auto& g : stabilizer(kind, number)) {
    int fixed = 0;
    for (int i = 0; i < 15; ++i)
      if (point_index(act(g, points()[i].vector)) == i) ++fixed;
    chi.push_back(fixed);
  }
  std::sort(chi.begin(), chi.end());
  return chi;
}

nlohmann::json Theorem4Report::to_json() const {
  nlohmann::json j = {{"case", case_label},
                      {"kind", f2::to_string(kind)},
                      {"object", object_label(kind, object)},
                      {"generators_contained", generators_contained},
                      {"stabilizer_order", stabilizer_order},
                      {"stabilizer_index", stabilizer_index},
                      {"generated_order", generated_order},
                      {"passed", passed()},
                      {"failures", failures}};
  j["fixed"] = nlohmann::json::array();
  for (int n : fixed) j["fixed"].push_back(object_label(kind, n));
  j["enumeration_index"] = enumeration_index ? nlohmann::json(*enumeration_index) : nlohmann::json(nullptr);
  return j;
}

std::string Theorem4Report::text() const {
  std::ostringstream os;
  os << "case " << case_label << ": " << f2::to_string(kind) << " " << object_label(kind, object) << "\n";
  os << "  generators preserve it: " << (generators_contained ? "yes" : "no") << "\n";
  os << "  fixed by the generators:";
  for (int n : fixed) os << " " << object_label(kind, n);
  os << "\n  stabilizer order " << stabilizer_order << ", index " << stabilizer_index << " in Sp4(Z/2)\n";
  os << "  generated subgroup mod 2 has order " << generated_order << "\n";
  if (enumeration_index) os << "  coset enumeration index " << *enumeration_index << "\n";
  os << "  " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& f : failures) os << "  failure: " << f << "\n";
  return os.str();
}

Theorem4Report verify_theorem4(long d, long k, const std::vector<ModMatrix4>& gens,
                               std::optional<std::uint64_t> enumeration_index) {
  Theorem4Report r;
  if (d == 1 && k == 3) {
    r.kind = ObjectKind::pentad;
    r.object = 2;
  } else if (d == 1 && k == 2) {
    r.kind = ObjectKind::syntheme;
    r.object = 5;
  } else {
    throw std::invalid_argument("verify_theorem4: only (1,3) and (1,2) are covered");
  }
  r.case_label = "(" + std::to_string(d) + "," + std::to_string(k) + ")";
  r.enumeration_index = enumeration_index;
  for (const auto& g : gens) require_mod2(g);

  r.fixed = fixed_objects(gens, r.kind);
  r.generators_contained = std::find(r.fixed.begin(), r.fixed.end(), r.object) != r.fixed.end();
  r.stabilizer_order = stabilizer_order(r.kind, r.object);
  r.stabilizer_index = 720 / r.stabilizer_order;
  r.generated_order = subgroup_order_bfs(gens, 720).value_or(0);

  const std::string label = to_string(r.kind) + " " + object_label(r.kind, r.object);
  if (!r.generators_contained) r.failures.push_back("generators do not preserve " + label);
  if (r.fixed != std::vector<int>{r.object}) r.failures.push_back("generators do not fix exactly " + label);
  if (r.generated_order != std::uint64_t(r.stabilizer_order))
    r.failures.push_back("generators mod 2 generate a group of order " + std::to_string(r.generated_order) +
                         ", not the full stabilizer");
  if (!enumeration_index)
    r.failures.push_back("no coset enumeration index supplied");
  else if (*enumeration_index != std::uint64_t(r.stabilizer_index))
    r.failures.push_back("coset enumeration index " + std::to_string(*enumeration_index) +
                         " differs from the stabilizer index " + std::to_string(r.stabilizer_index));
  return r;
}

}  // namespace spmono::f2
