// Symplectic geometry of (Z/2)^4: the 15 points a..o, the six pentads of
// points, the ten synthemes, the six pentads of Lagrangian lines, and the
// stabilizer checks behind the (1,3) and (1,2) monodromy groups.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spmono/linalg.hpp"

namespace spmono::f2 {

using Vec = std::array<std::uint8_t, 4>;
// Bit i set means point i (label 'a' + i) is in the set.
using PointSet = std::uint16_t;

struct F2Point {
  char label;
  Vec vector;
};

const std::array<F2Point, 15>& points();
int point_index(const Vec& v);  // -1 for the zero vector
int point_index(char label);

// u1 v3 + u2 v4 + u3 v1 + u4 v2 mod 2 (the standard form reduced mod 2).
int pairing(const Vec& u, const Vec& v);

std::string set_str(PointSet s);            // "{a,e,f,l,n}"
PointSet parse_set(const std::string& letters);  // "aefln"

struct Pentad {
  int number;  // 1..6
  PointSet points;
};

struct Syntheme {
  int number;  // 1..10
  std::array<PointSet, 2> triples;  // lower first point first
};

struct LinePentad {
  int number;  // 1..6, printed with a prime
  std::array<PointSet, 5> lines;  // sorted
};

// Exhaustive searches, numbered as in the classical labelled lists.
std::vector<Pentad> enumerate_pentads();
std::vector<Syntheme> enumerate_synthemes();
std::vector<LinePentad> enumerate_line_pentads();

// The labelled reference lists the numbering is taken from.
const std::vector<Pentad>& reference_pentads();
const std::vector<Syntheme>& reference_synthemes();
const std::vector<LinePentad>& reference_line_pentads();

std::string roman(int n);

// m acts on column vectors; m must be a mod 2 matrix.
Vec act(const ModMatrix4& m, const Vec& v);
PointSet act(const ModMatrix4& m, PointSet s);

// Images as 1-based numbers: result[i - 1] is the image of object i.
std::array<int, 6> permutation_image(const ModMatrix4& m);
std::array<int, 10> syntheme_permutation(const ModMatrix4& m);
std::array<int, 6> line_pentad_permutation(const ModMatrix4& m);

// Cycle notation without fixed points, e.g. "(3,6)(4,5)"; "()" for identity.
template <std::size_t K>
std::string cycles(const std::array<int, K>& perm, bool roman_labels = false);

// The transvection v -> v + (v, p) p.
ModMatrix4 transvection(int point);

// All 720 elements of Sp4(Z/2), identity first.
const std::vector<ModMatrix4>& sp4_f2_elements();

enum class ObjectKind { pentad, syntheme, line_pentad };
std::string to_string(ObjectKind k);
ObjectKind object_kind_from_string(const std::string& s);

// Numbers of the objects of the kind fixed setwise by every generator.
std::vector<int> fixed_objects(const std::vector<ModMatrix4>& gens, ObjectKind kind);

// Number of group elements fixing the object.
int stabilizer_order(ObjectKind kind, int number);

// Orbit lengths of the object's stabilizer on the 15 points, sorted.
std::vector<int> stabilizer_point_orbits(ObjectKind kind, int number);

// Sorted fixed-point counts on the 15 points over the stabilizer elements.
std::vector<int> stabilizer_permutation_character(ObjectKind kind, int number);

struct Theorem4Report {
  std::string case_label;  // "(1,3)" or "(1,2)"
  ObjectKind kind;
  int object;  // the preserved pentad or syntheme
  bool generators_contained = false;
  std::vector<int> fixed;  // all objects fixed by the generators
  int stabilizer_order = 0;
  int stabilizer_index = 0;
  std::uint64_t generated_order = 0;  // order of the generators mod 2
  std::optional<std::uint64_t> enumeration_index;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
  std::string text() const;
};

// (d, k) = (1, 3): pentad 2; (1, 2): syntheme V.  `gens` are the mod 2
// generators to test, normally M and N reduced mod 2.
Theorem4Report verify_theorem4(long d, long k, const std::vector<ModMatrix4>& gens,
                               std::optional<std::uint64_t> enumeration_index);

}  // namespace spmono::f2
