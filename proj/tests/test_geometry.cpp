#include <doctest.h>

#include <algorithm>
#include <set>

#include "spmono/catalog.hpp"
#include "spmono/geometry_f2.hpp"

using namespace spmono;
using namespace spmono::f2;

namespace {

ModMatrix4 M2(long d, long k) { return mod_reduce(integral_generators(d, k).M, 2); }
ModMatrix4 N2(long d, long k) { return mod_reduce(integral_generators(d, k).N, 2); }

// The printed lists, transcribed independently of the library.
const std::vector<std::string> kPentads = {"adgmo", "aefln", "bhkno", "bijlm", "cdeik", "cfghj"};
const std::vector<std::pair<std::string, std::string>> kSynthemes = {
    {"ade", "bhj"}, {"afg", "bik"}, {"alm", "chk"}, {"ano", "cij"}, {"bln", "cdg"},
    {"bmo", "cef"}, {"dim", "fhn"}, {"dko", "fjl"}, {"eil", "gho"}, {"ekn", "gjm"}};
const std::vector<std::vector<std::string>> kLinePentads = {
    {"abc", "dhl", "ejo", "fkm", "gin"}, {"abc", "djn", "ehm", "fio", "gkl"},
    {"ajk", "beg", "cmn", "dhl", "fio"}, {"ahi", "bdf", "cmn", "ejo", "gkl"},
    {"ahi", "beg", "clo", "djn", "fkm"}, {"ajk", "bdf", "clo", "ehm", "gin"}};

}  // namespace

TEST_CASE("points and pairing") {
  CHECK(points().size() == 15);
  CHECK(points()[0].label == 'a');
  CHECK(points()[0].vector == Vec{0, 0, 0, 1});
  CHECK(points()[14].vector == Vec{1, 1, 1, 1});
  CHECK(point_index('h') == 7);
  CHECK(point_index(Vec{0, 0, 0, 0}) == -1);
  for (const auto& p : points()) CHECK(pairing(p.vector, p.vector) == 0);
  CHECK(pairing(points()[0].vector, points()[3].vector) == 1);  // a, d
  CHECK(set_str(parse_set("nlefa")) == "{a,e,f,l,n}");
}

TEST_CASE("pentads match the printed list") {
  const auto found = enumerate_pentads();
  REQUIRE(found.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(found[i].number == int(i) + 1);
    CHECK(found[i].points == parse_set(kPentads[i]));
    CHECK(reference_pentads()[i].points == found[i].points);
    for (const auto& p : points())
      for (const auto& q : points())
        if (p.label != q.label && (found[i].points >> point_index(p.label) & 1) &&
            (found[i].points >> point_index(q.label) & 1))
          CHECK(pairing(p.vector, q.vector) == 1);
  }
}

TEST_CASE("synthemes match the printed list") {
  const auto found = enumerate_synthemes();
  REQUIRE(found.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(found[i].number == int(i) + 1);
    CHECK(found[i].triples[0] == parse_set(kSynthemes[i].first));
    CHECK(found[i].triples[1] == parse_set(kSynthemes[i].second));
  }
  CHECK(roman(8) == "VIII");
  CHECK(roman(4) == "IV");
}

TEST_CASE("line pentads match the printed list") {
  const auto found = enumerate_line_pentads();
  REQUIRE(found.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    std::set<PointSet> expect, got(found[i].lines.begin(), found[i].lines.end());
    for (const auto& l : kLinePentads[i]) expect.insert(parse_set(l));
    CHECK(got == expect);
  }
}

TEST_CASE("Sp4(Z/2) is S6") {
  const auto& g = sp4_f2_elements();
  CHECK(g.size() == 720);
  CHECK(g.front().is_identity());
  std::set<std::array<int, 6>> perms;
  for (const auto& m : g) perms.insert(permutation_image(m));
  CHECK(perms.size() == 720);
  std::set<std::array<int, 6>> line_perms;
  for (const auto& m : g) line_perms.insert(line_pentad_permutation(m));
  CHECK(line_perms.size() == 720);
}

TEST_CASE("transvections act as transpositions") {
  CHECK(cycles(permutation_image(transvection(0))) == "(1,2)");
  for (int p = 0; p < 15; ++p) {
    const auto perm = permutation_image(transvection(p));
    int moved = 0;
    for (int i = 0; i < 6; ++i) moved += perm[i] != i + 1;
    CHECK(moved == 2);
  }
}

TEST_CASE("M and N on points and pentads for d, k odd") {
  const auto M = M2(1, 3), N = N2(1, 3);
  auto img = [&](const ModMatrix4& m, char c) { return points()[point_index(act(m, points()[point_index(c)].vector))].label; };
  CHECK(img(M, 'a') == 'a');
  CHECK(img(M, 'd') == 'o');
  CHECK(img(M, 'g') == 'm');
  CHECK(img(M, 'm') == 'd');
  CHECK(img(M, 'o') == 'g');
  CHECK(permutation_image(M) == std::array<int, 6>{1, 2, 6, 5, 3, 4});
  CHECK(permutation_image(N) == std::array<int, 6>{5, 2, 3, 4, 1, 6});
  CHECK(cycles(permutation_image(M)) == "(3,6,4,5)");
  CHECK(cycles(permutation_image(N)) == "(1,5)");
  CHECK(fixed_objects({M, N}, ObjectKind::pentad) == std::vector<int>{2});
}

TEST_CASE("M and N on synthemes for d odd, k even") {
  const auto M = M2(1, 2), N = N2(1, 2);
  CHECK(cycles(syntheme_permutation(M), true) == "(I,IV,II,III)(VII,X,IX,VIII)");
  CHECK(cycles(syntheme_permutation(N), true) == "(II,VI)(III,IX)(IV,X)");
  CHECK(fixed_objects({M, N}, ObjectKind::syntheme) == std::vector<int>{5});
}

TEST_CASE("stabilizers") {
  CHECK(stabilizer_order(ObjectKind::pentad, 2) == 120);
  CHECK(stabilizer_order(ObjectKind::syntheme, 5) == 72);
  CHECK(stabilizer_order(ObjectKind::line_pentad, 1) == 120);
  // Point and line pentad stabilizers are both S5 but not conjugate.
  CHECK(stabilizer_point_orbits(ObjectKind::pentad, 2) == std::vector<int>{5, 10});
  CHECK(stabilizer_point_orbits(ObjectKind::line_pentad, 1) == std::vector<int>{15});
  CHECK(stabilizer_permutation_character(ObjectKind::pentad, 1) !=
        stabilizer_permutation_character(ObjectKind::line_pentad, 1));
  CHECK(object_kind_from_string(to_string(ObjectKind::syntheme)) == ObjectKind::syntheme);
}

TEST_CASE("stabilizer reports for (1,3) and (1,2)") {
  const auto r13 = verify_theorem4(1, 3, {M2(1, 3), N2(1, 3)}, 6);
  CHECK(r13.passed());
  CHECK(r13.stabilizer_order == 120);
  CHECK(r13.stabilizer_index == 6);
  CHECK(r13.generated_order == 120);
  const auto r12 = verify_theorem4(1, 2, {M2(1, 2), N2(1, 2)}, 10);
  CHECK(r12.passed());
  CHECK(r12.stabilizer_order == 72);
  CHECK(r12.generated_order == 72);
  const auto bad = verify_theorem4(1, 3, {M2(1, 3), N2(1, 3)}, 7);
  CHECK_FALSE(bad.passed());
  CHECK(r13.to_json()["passed"] == true);
}
