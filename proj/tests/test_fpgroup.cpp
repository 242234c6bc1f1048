#include <doctest.h>

#include <random>

#include "spmono/catalog.hpp"
#include "spmono/fpgroup.hpp"
#include "support.hpp"

using namespace spmono;

TEST_CASE("words normalize adjacent letters") {
  Word w;
  w.append(Gen::xa, 2);
  w.append(Gen::xa, -2);
  CHECK(w.empty());
  w.append(Gen::xa, 3);
  w.append(Gen::xb, 1);
  w.append(Gen::xb, 1);
  CHECK(w.size() == 2);
  CHECK(w.length() == 5);
  CHECK((w * w.inverse()).empty());
  CHECK(w.pow(0).empty());
  CHECK(w.pow(-1) == w.inverse());
  CHECK(w.str() == "xa^3 xb^2");
}

TEST_CASE("word JSON") {
  const Word w{{Gen::xa, 2}, {Gen::wb, -1}};
  CHECK(word_to_json(w).dump() == R"([["xa",2],["wb",-1]])");
  CHECK(word_from_json(word_to_json(w)) == w);
  CHECK_THROWS(word_from_json(nlohmann::json::parse(R"([["xz",1]])")));
  for (Gen g : kAllGenerators) CHECK(gen_from_name(name(g)) == g);
  CHECK_FALSE(gen_from_name("x").has_value());
}

TEST_CASE("behr matrices are symplectic and satisfy every relator") {
  for (Gen g : kAllGenerators) {
    CHECK(is_symplectic(behr_matrix(g)));
    CHECK(behr_matrix(g).is_integral());
  }
  const auto& p = behr_presentation();
  CHECK(p.relators.size() == 18);
  CHECK(p.generators.size() == 6);
  for (const auto& r : p.relators) CHECK(evaluate(r).is_identity());
}

TEST_CASE("presentation loader rejects a false relator") {
  auto j = presentation_to_json(behr_presentation());
  j["relators"].push_back(nlohmann::json::parse(R"([["xa",1]])"));
  CHECK_THROWS(presentation_from_json(j));
  auto ok = presentation_to_json(behr_presentation());
  CHECK(presentation_from_json(ok).relators.size() == 18);
}

TEST_CASE("evaluation is a homomorphism") {
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_word(rng, 8);
    const auto b = testing::random_word(rng, 8);
    CHECK(evaluate(a * b) == evaluate(a) * evaluate(b));
    CHECK(evaluate(a.inverse()) == evaluate(a).inverse());
  }
}

TEST_CASE("decompose round-trips 1000 random words") {
  std::mt19937 rng(20240601);
  for (int i = 0; i < 1000; ++i) {
    const auto w = testing::random_word(rng, 20);
    const auto m = evaluate(w);
    const auto back = decompose(m);
    CHECK(evaluate(back) == m);
  }
}

TEST_CASE("decompose handles the catalog matrices") {
  for (const auto& r : load_catalog(default_catalog_path())) {
    CAPTURE(r.label());
    const auto g = integral_generators(r.d, r.k);
    CHECK(evaluate(decompose(g.M)) == g.M);
    CHECK(evaluate(decompose(g.N)) == g.N);
    for (const auto& x : r.extra_generators) CHECK(evaluate(decompose(x)) == x);
  }
  CHECK(decompose(ExactMatrix4::identity()).empty());
  CHECK(evaluate(decompose(ExactMatrix4::scalar(-1))) == ExactMatrix4::scalar(-1));
  CHECK_THROWS(decompose(ExactMatrix4::scalar(2)));
  CHECK_THROWS(decompose(ExactMatrix4::scalar(mpq_class(1, 2))));
}
