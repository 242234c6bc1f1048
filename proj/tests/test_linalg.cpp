#include <doctest.h>

#include <random>

#include "spmono/catalog.hpp"
#include "spmono/linalg.hpp"
#include "support.hpp"

using namespace spmono;

namespace {

ExactMatrix4 M_of(long d, long k) { return integral_generators(d, k).M; }

Vector4 random_rational_vector(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  Vector4 v;
  for (auto& x : v) {
    x = mpq_class(num(rng), den(rng));
    x.canonicalize();
  }
  return v;
}

}  // namespace

TEST_CASE("exact matrices: arithmetic is exact") {
  const ExactMatrix4 a{{1, 2, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, mpq_class(1, 3), 1}};
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.determinant() == 1);
  CHECK(a.pow(3) == a * a * a);
  CHECK(a.pow(-2) == a.inverse() * a.inverse());
  CHECK(a.pow(0).is_identity());
  CHECK_FALSE(a.is_integral());
  CHECK(ExactMatrix4::identity().is_integral());
  CHECK(ExactMatrix4::scalar(2).rank() == 4);
  CHECK(ExactMatrix4{}.rank() == 0);
  CHECK_THROWS_AS(ExactMatrix4{}.inverse(), std::domain_error);
}

TEST_CASE("is_symplectic") {
  const auto S = standard_form();
  CHECK(is_symplectic(ExactMatrix4::identity(), S));
  CHECK(is_symplectic(M_of(5, 5), S));
  CHECK(is_symplectic(integral_generators(5, 5).N, S));
  CHECK_FALSE(is_symplectic(ExactMatrix4{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, S));
}

TEST_CASE("constant forms") {
  CHECK(standard_form() == ExactMatrix4{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
  const auto MF = frobenius_monodromy();
  for (int r = 0; r < 4; ++r) {
    CHECK(MF(r, r) == 1);
    for (int c = 0; c < r; ++c) CHECK(MF(r, c) == 0);
  }
  CHECK(MF(0, 1) == 1);
  CHECK(MF(1, 2) == 1);
  CHECK(MF(2, 3) == 1);
  CHECK(MF(0, 2) == mpq_class(1, 2));
  CHECK(MF(1, 3) == mpq_class(1, 2));
  CHECK(MF(0, 3) == mpq_class(1, 6));
  const auto SF = frobenius_form();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r + c != 3) CHECK(SF(r, c) == 0);
  CHECK(SF(0, 3) == -SF(1, 2));
  CHECK(SF(2, 1) == -SF(3, 0));
  CHECK(SF.transpose() == ExactMatrix4::scalar(-1) * SF);
  CHECK(is_symplectic(MF, SF));
}

TEST_CASE("symplectic_reflection reproduces N and the 292 matrix") {
  CHECK(symplectic_reflection({0, 0, 0, 0}, 1, standard_form()).is_identity());
  CHECK_THROWS(symplectic_reflection({1, 0, 0, 0}, 0, standard_form()));

  // A T A^-1 = N for T the conifold reflection in Frobenius coordinates.
  const mpq_class b(34, 24);
  const auto A = base_change(1, b, 0);
  const auto T = symplectic_reflection({1, 0, b, 0}, 1, frobenius_form());
  CHECK(A * T * A.inverse() == integral_generators(1, 3).N);

  const ExactMatrix4 e292{{0, 2, 1, 2}, {-2, 5, 2, 4}, {-1, 2, 2, 2}, {2, -4, -2, -3}};
  CHECK(symplectic_reflection({-1, 2, 1, 2}, 1, standard_form()) == e292);
}

TEST_CASE("reflections are unipotent transvections, not involutions") {
  std::mt19937 rng(7);
  const auto S = standard_form();
  const auto I = ExactMatrix4::identity();
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_rational_vector(rng);
    mpq_class d(trial % 5 + 1, trial % 3 + 1);
    d.canonicalize();
    const auto T = symplectic_reflection(c, d, S);
    CHECK(is_symplectic(T, S));
    const auto D = T - I;
    CHECK((D * D) == ExactMatrix4{});
    CHECK(D.rank() <= 1);
    if (D.rank() == 1) CHECK_FALSE((T * T).is_identity());
  }
}

TEST_CASE("is_symplectic_reflection") {
  CHECK_FALSE(is_symplectic_reflection(ExactMatrix4::identity()));
  CHECK(is_symplectic_reflection(ExactMatrix4{{1, 0, 0, 0}, {1, 1, 0, 1}, {-1, 0, 1, -1}, {0, 0, 0, 1}}));
  CHECK(is_symplectic_reflection(ExactMatrix4{{-1, 4, 2, 2}, {-2, 5, 2, 2}, {-2, 4, 3, 2}, {4, -8, -4, -3}}));
  CHECK_FALSE(is_symplectic_reflection(M_of(1, 3)));
}

TEST_CASE("quadratic vectors") {
  const QuadraticVector4 v({QuadraticEntry{-1, 2}, {1, 8}, {1, 2}, {1, 2}});
  CHECK(v[1].coeff == 2);
  CHECK(v[1].radicand == 2);
  const auto o = v.outer_product();
  CHECK(o(0, 0) == 2);
  CHECK(o(0, 1) == -4);
  CHECK(o(1, 1) == 8);
  const auto t = reflection_from_outer(o, 1, standard_form());
  CHECK(t == ExactMatrix4{{-1, 4, 2, 2}, {-2, 5, 2, 2}, {-2, 4, 3, 2}, {4, -8, -4, -3}});
  const QuadraticVector4 mixed({QuadraticEntry{1, 1}, {1, 2}, {0, 1}, {0, 1}});
  CHECK_THROWS_AS(mixed.outer_product(), InvariantError);
}

TEST_CASE("mod_reduce") {
  CHECK(mod_reduce(ExactMatrix4::identity(), 2).is_identity());
  CHECK(mod_reduce(M_of(1, 3), 2) ==
        ModMatrix4(2, {{1, 1, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 1, 1}}));
  CHECK(mod_reduce(ExactMatrix4::scalar(-1), 3) == ModMatrix4(3, {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}}));
  CHECK_THROWS(mod_reduce(ExactMatrix4::scalar(mpq_class(1, 2)), 5));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = evaluate(testing::random_word(rng, 6));
    const auto b = evaluate(testing::random_word(rng, 6));
    for (std::uint32_t n : {2u, 5u, 12u, 27u}) {
      CHECK(mod_reduce(a * b, n) == mod_reduce(a, n) * mod_reduce(b, n));
      CHECK(is_symplectic_mod(mod_reduce(a, n)));
    }
  }
}

TEST_CASE("mod matrices") {
  const auto m = mod_reduce(M_of(3, 4), 9);
  CHECK((m * m.inverse()).is_identity());
  CHECK(m.determinant() == 1);
  CHECK(ModMatrix4::from_key(9, m.key()) == m);
  CHECK(m.transpose().transpose() == m);
  CHECK_THROWS(ModMatrix4::identity(1));
  CHECK_THROWS(mod_reduce(M_of(1, 3), 300).key());
  const std::array<std::uint32_t, 4> e2{0, 1, 0, 0};
  CHECK(m.apply(e2) == std::array<std::uint32_t, 4>{1, 1, 3, 5});
}

TEST_CASE("matrix literals") {
  const auto m = parse_matrix_literal("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,\"1/2\",1]]");
  CHECK(m(3, 2) == mpq_class(1, 2));
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK_THROWS(parse_matrix_literal("[[1,0],[0,1]]"));
  CHECK_THROWS(parse_matrix_literal("not json"));
}
