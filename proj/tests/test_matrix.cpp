#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "persext/matrix.hpp"

using namespace persext;

namespace {

template <class F>
Matrix<F> random_matrix(F f, int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-5, 5);
  Matrix<F> m(f, rows, cols);
  for (auto& x : m.a) x = f.from_int(dist(rng));
  return m;
}

}  // namespace

TEST_CASE("GF(p) arithmetic") {
  GF f(7);
  CHECK(f.from_int(10) == 3);
  CHECK(f.from_int(-3) == 4);
  CHECK(f.add(3, 5) == 1);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.neg(3) == 4);
  CHECK(f.neg(0) == 0);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.inv(2) == 4);
  CHECK(f.div(3, 5) == 2);
  CHECK(f.parse("10") == 3);
  CHECK(f.parse("-1") == 6);
  CHECK(f.parse("3/5") == 2);
  CHECK(f.to_string(6) == "6");
  CHECK(f.to_display_string(6) == "-1");
  CHECK(f.to_display_string(3) == "3");
  CHECK(f.name() == "GF(7)");

  CHECK_THROWS_AS(f.inv(0), FieldError);
  CHECK_THROWS_AS(f.parse("2x"), std::exception);
  CHECK_THROWS_AS(GF(1), FieldError);
  CHECK_THROWS_AS(GF(6), FieldError);
  CHECK_THROWS_AS(GF(-5), FieldError);
  CHECK_THROWS_AS(GF((std::int64_t(1) << 31) + 11), FieldError);

  for (std::int64_t p : {2, 3, 32003}) {
    GF g(p);
    for (std::int64_t a = 1; a < std::min<std::int64_t>(p, 100); ++a)
      CHECK(g.mul(a, g.inv(a)) == 1);
  }
}

TEST_CASE("rational arithmetic") {
  Rationals f;
  CHECK(f.to_string(f.parse("2/4")) == "1/2");
  CHECK(f.to_string(f.parse("-3")) == "-3");
  CHECK(f.to_string(f.add(f.parse("1/2"), f.parse("1/3"))) == "5/6");
  CHECK(f.to_string(f.inv(f.parse("5/3"))) == "3/5");
  CHECK(f.is_zero(f.sub(f.parse("1/3"), f.parse("2/6"))));
  CHECK_THROWS_AS(f.inv(f.zero()), FieldError);
  CHECK_THROWS_AS(f.parse("one"), FieldError);

  // No overflow: products of 18-digit values stay exact.
  auto big = f.parse("1000000000000000000");
  CHECK(f.to_string(f.mul(big, big)) == "1000000000000000000000000000000000000");
}

TEST_CASE("field spec parsing") {
  CHECK(FieldSpec::parse("q").rational);
  CHECK(FieldSpec::parse("Q").rational);
  CHECK_FALSE(FieldSpec::parse("p:2").rational);
  CHECK(FieldSpec::parse("p:2").p == 2);
  CHECK(FieldSpec::parse("p:32003").to_string() == "p:32003");
  CHECK(FieldSpec{}.to_string() == "p:32003");
  CHECK_THROWS_AS(FieldSpec::parse("p:6"), FieldError);
  CHECK_THROWS_AS(FieldSpec::parse("p:x"), FieldError);
  CHECK_THROWS_AS(FieldSpec::parse("gf2"), FieldError);

  CHECK(with_field(FieldSpec::parse("q"), [](auto f) { return f.name(); }) == "Q");
  CHECK(with_field(FieldSpec{}, [](auto f) { return f.name(); }) == "GF(32003)");
}

TEST_CASE("rref canonical forms") {
  SECTION("rank-1 over Q") {
    Rationals f;
    auto e = rref(Matrix<Rationals>::from_rows(f, {{2, 4}, {1, 2}}));
    CHECK(e.rank() == 1);
    CHECK(e.pivots == std::vector<int>{0});
    CHECK(e.r == Matrix<Rationals>::from_rows(f, {{1, 2}, {0, 0}}));
  }
  SECTION("pivot search skips zero leading entries, GF(7)") {
    GF f(7);
    auto e = rref(Matrix<GF>::from_rows(f, {{0, 2, 1}, {1, 1, 0}, {1, 3, 1}}));
    CHECK(e.rank() == 2);
    CHECK(e.pivots == std::vector<int>{0, 1});
    CHECK(e.r == Matrix<GF>::from_rows(f, {{1, 0, 3}, {0, 1, 4}, {0, 0, 0}}));
  }
  SECTION("same matrix over Q keeps fractions exact") {
    Rationals f;
    auto e = rref(Matrix<Rationals>::from_rows(f, {{0, 2, 1}, {1, 1, 0}, {1, 3, 1}}));
    CHECK(e.rank() == 2);
    CHECK(f.to_string(e.r.at(0, 2)) == "-1/2");
    CHECK(f.to_string(e.r.at(1, 2)) == "1/2");
  }
}

TEST_CASE("kernel and image bases are canonical") {
  SECTION("kernel of [1 1] over GF(2)") {
    GF f(2);
    auto k = kernel_basis(Matrix<GF>::from_rows(f, {{1, 1}}));
    CHECK(k.rows == 2);
    CHECK(k.cols == 1);
    CHECK(k.at(0, 0) == 1);
    CHECK(k.at(1, 0) == 1);
  }
  SECTION("kernel of [1 2 3] over Q has echelon transpose") {
    Rationals f;
    auto k = kernel_basis(Matrix<Rationals>::from_rows(f, {{1, 2, 3}}));
    CHECK(k.rows == 3);
    CHECK(k.cols == 2);
    CHECK(f.eq(k.at(0, 0), f.one()));
    CHECK(f.is_zero(k.at(1, 0)));
    CHECK(f.to_string(k.at(2, 0)) == "-1/3");
    CHECK(f.is_zero(k.at(0, 1)));
    CHECK(f.eq(k.at(1, 1), f.one()));
    CHECK(f.to_string(k.at(2, 1)) == "-2/3");
  }
  SECTION("image basis over Q") {
    Rationals f;
    auto m = Matrix<Rationals>::from_rows(f, {{1, 2}, {2, 4}, {0, 1}});
    auto b = image_basis(m);
    CHECK(b == Matrix<Rationals>::from_rows(f, {{1, 0}, {2, 0}, {0, 1}}));
  }
  SECTION("full-rank kernel is empty, zero map kernel is everything") {
    GF f(5);
    CHECK(kernel_basis(Matrix<GF>::identity(f, 3)).cols == 0);
    auto k = kernel_basis(Matrix<GF>::zero(f, 2, 3));
    CHECK(k == Matrix<GF>::identity(f, 3));
  }
}

TEST_CASE("solve") {
  Rationals f;
  SECTION("unique solution") {
    auto m = Matrix<Rationals>::from_rows(f, {{1, 2}, {3, 4}});
    auto x = solve(m, {f.from_int(5), f.from_int(6)});
    REQUIRE(x);
    CHECK(f.to_string((*x)[0]) == "-4");
    CHECK(f.to_string((*x)[1]) == "9/2");
  }
  SECTION("inconsistent system") {
    auto m = Matrix<Rationals>::from_rows(f, {{1, 1}, {1, 1}});
    CHECK_FALSE(solve(m, {f.from_int(1), f.from_int(2)}));
  }
  SECTION("free variables are set to zero") {
    auto m = Matrix<Rationals>::from_rows(f, {{1, 1}});
    auto x = solve(m, {f.from_int(3)});
    REQUIRE(x);
    CHECK(f.eq((*x)[0], f.from_int(3)));
    CHECK(f.is_zero((*x)[1]));
  }
  SECTION("solve_matrix") {
    auto m = Matrix<Rationals>::from_rows(f, {{1, 0}, {0, 1}, {1, 1}});
    auto good = Matrix<Rationals>::from_rows(f, {{1}, {2}, {3}});
    auto y = solve_matrix(m, good);
    REQUIRE(y);
    CHECK(*y == Matrix<Rationals>::from_rows(f, {{1}, {2}}));
    auto bad = Matrix<Rationals>::from_rows(f, {{1}, {2}, {4}});
    CHECK_FALSE(solve_matrix(m, bad));
  }
  SECTION("5x5 Hilbert system, first inverse column is exact") {
    Matrix<Rationals> h(f, 5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) h.at(i, j) = f.div(f.one(), f.from_int(i + j + 1));
    std::vector<Rationals::Elem> e0(5, f.zero());
    e0[0] = f.one();
    auto x = solve(h, e0);
    REQUIRE(x);
    std::vector<long long> expect{25, -300, 1050, -1400, 630};
    for (int i = 0; i < 5; ++i) CHECK(f.eq((*x)[i], f.from_int(expect[i])));
  }
}

TEMPLATE_TEST_CASE("rank-nullity and basis properties hold on random matrices",
                   "", GF, Rationals) {
  auto make_field = [] {
    if constexpr (std::is_same_v<TestType, GF>)
      return GF(32003);
    else
      return Rationals{};
  };
  TestType f = make_field();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> shape(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_matrix(f, shape(rng), shape(rng), rng);
    int r = rank(m);
    auto k = kernel_basis(m);
    auto im = image_basis(m);
    CHECK(r + k.cols == m.cols);
    CHECK(nullity(m) == k.cols);
    CHECK(im.cols == r);
    CHECK((m * k).is_zero());
    // Canonical form is idempotent.
    auto e = rref(m);
    CHECK(rref(e.r).r == e.r);
    // Every image basis column is solvable back through m.
    CHECK(solve_matrix(m, im).has_value());
  }
}

TEST_CASE("rank agrees between GF(32003) and Q on small integer matrices") {
  GF fp(32003);
  Rationals fq;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix<GF> mp(fp, 6, 6);
    Matrix<Rationals> mq(fq, 6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        int v = dist(rng);
        mp.at(i, j) = fp.from_int(v);
        mq.at(i, j) = fq.from_int(v);
      }
    CHECK(rank(mp) == rank(mq));
  }
}

TEST_CASE("block operations") {
  GF f(5);
  auto a = Matrix<GF>::from_rows(f, {{1, 2}, {3, 4}});
  auto b = Matrix<GF>::identity(f, 2);
  CHECK(hstack(a, b) == Matrix<GF>::from_rows(f, {{1, 2, 1, 0}, {3, 4, 0, 1}}));
  CHECK(vstack(a, b) == Matrix<GF>::from_rows(f, {{1, 2}, {3, 4}, {1, 0}, {0, 1}}));
  Matrix<GF> big(f, 3, 3);
  set_block(big, 1, 1, a);
  CHECK(big == Matrix<GF>::from_rows(f, {{0, 0, 0}, {0, 1, 2}, {0, 3, 4}}));
  add_block(big, 1, 1, b);
  CHECK(big == Matrix<GF>::from_rows(f, {{0, 0, 0}, {0, 2, 2}, {0, 3, 0}}));
  CHECK_THROWS_AS(set_block(big, 2, 2, a), std::invalid_argument);
  CHECK_THROWS_AS(hstack(a, Matrix<GF>(f, 3, 1)), std::invalid_argument);

  auto t = a.transpose();
  CHECK(t == Matrix<GF>::from_rows(f, {{1, 3}, {2, 4}}));
  CHECK(scalar_mul(f.from_int(2), a) == Matrix<GF>::from_rows(f, {{2, 4}, {1, 3}}));
}

TEST_CASE("quotient dimension") {
  Rationals f;
  auto m = Matrix<Rationals>::from_rows(f, {{1, 2}, {2, 4}, {0, 1}});
  CHECK(quotient_dim(3, image_basis(m)) == 1);
  CHECK(quotient_dim(3, Matrix<Rationals>(f, 3, 0)) == 3);
  CHECK_THROWS_AS(quotient_dim(2, m), std::invalid_argument);
}
