#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "persext/ext.hpp"
#include "persext/random_modules.hpp"

using namespace persext;

namespace {

std::shared_ptr<const Poset> grid1() {
  static auto p = std::make_shared<const Poset>(Poset::grid(1));
  return p;
}

std::shared_ptr<const Poset> grid2() {
  static auto p = std::make_shared<const Poset>(Poset::grid(2));
  return p;
}

std::shared_ptr<const Poset> diamond() {
  static auto p = std::make_shared<const Poset>(Poset::from_covers(
      {"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}));
  return p;
}

std::shared_ptr<const Poset> crown() {
  static auto p = std::make_shared<const Poset>(Poset::from_covers(
      {"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}}));
  return p;
}

std::shared_ptr<const Poset> chain4() {
  static auto p = std::make_shared<const Poset>(
      Poset::from_covers({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}));
  return p;
}

// Random poset on at most six elements; covers computed by reducing a random
// relation on index order, so the result is always acyclic.
Poset random_poset(SplitMix64& rng, bool require_connected) {
  for (;;) {
    int n = 2 + static_cast<int>(rng.below(5));
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) reach[i][j] = rng.below(3) == 0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<std::string, std::string>> covers;
    std::vector<int> comp(n);
    for (int i = 0; i < n; ++i) comp[i] = i;
    std::function<int(int)> find = [&](int x) {
      return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!reach[i][j]) continue;
        bool covered = false;
        for (int r = 0; r < n && !covered; ++r) covered = reach[i][r] && reach[r][j];
        if (covered) continue;
        covers.emplace_back(ids[i], ids[j]);
        comp[find(i)] = find(j);
      }
    if (require_connected) {
      int roots = 0;
      for (int i = 0; i < n; ++i) roots += find(i) == i;
      if (roots != 1) continue;
    }
    return Poset::from_covers(ids, covers);
  }
}

}  // namespace

TEST_CASE("ext between simples on the square counts arrows and relations") {
  GF f(7);
  auto g = grid1();
  for (int v = 0; v < 4; ++v)
    for (int w = 0; w < 4; ++w) {
      auto e = ext_dims(simple(g, f, v), simple(g, f, w), 2);
      int arrows = g->cover_index(v, w) >= 0 ? 1 : 0;
      int relations = (v == 0 && w == 3) ? 1 : 0;
      CHECK(e == std::vector<int>{v == w ? 1 : 0, arrows, relations});
    }
}

TEST_CASE("constant module on the square is rigid") {
  GF f(32003);
  auto m = interval_full(grid1(), f);
  CHECK(ext_dims(m, m, 2) == std::vector<int>{1, 0, 0});
  CHECK(ext1_deformation_complex(m, m) == 0);
  auto rep = rigidity_report(m);
  CHECK(rep.self_ext == std::vector<int>{1, 0, 0});
  CHECK(rep.tangent_dim == 0);
  CHECK(rep.obstruction_dim == 0);
  CHECK(rep.classification == Classification::rigid);
  CHECK(to_string(rep.classification) == "rigid");
}

TEST_CASE("ones with zero maps has a four-dimensional tangent space") {
  GF f(32003);
  auto m = trivial_ones(grid1(), f);
  CHECK(ext_dims(m, m, 2) == std::vector<int>{4, 4, 1});
  CHECK(ext1_deformation_complex(m, m) == 4);
  auto rep = rigidity_report(m);
  CHECK(rep.tangent_dim == 4);
  CHECK(rep.obstruction_dim == 1);
  CHECK(rep.classification == Classification::potentially_obstructed);
}

TEST_CASE("adjacent simples give a one-dimensional tangent space") {
  GF f(32003);
  auto g = grid1();
  auto s00 = simple(g, f, g->index("(0,0)"));
  auto s10 = simple(g, f, g->index("(1,0)"));
  auto m = direct_sum(s00, s10);

  CHECK(ext_dims(m, m, 2) == std::vector<int>{2, 1, 0});
  CHECK(ext1_deformation_complex(m, m) == 1);
  // The four summand components behind that dimension count.
  CHECK(ext_dims(s00, s10, 1) == std::vector<int>{0, 1});
  CHECK(ext_dims(s00, s00, 1) == std::vector<int>{1, 0});
  CHECK(ext_dims(s10, s10, 1) == std::vector<int>{1, 0});
  CHECK(ext_dims(s10, s00, 1) == std::vector<int>{0, 0});

  auto rep = rigidity_report(m);
  CHECK(rep.tangent_dim == 1);
  CHECK(rep.obstruction_dim == 0);
  CHECK(rep.classification == Classification::smooth_unobstructed);
}

TEST_CASE("hook module is rigid with vanishing higher ext") {
  GF f(32003);
  auto m = hook_module(grid1(), f);
  CHECK(ext_dims(m, m, 2) == std::vector<int>{1, 0, 0});
  CHECK(ext1_deformation_complex(m, m) == 0);
  auto rep = rigidity_report(m);
  CHECK(rep.classification == Classification::rigid);
}

TEST_CASE("source and sink simples carry an obstruction class") {
  GF f(32003);
  auto g = grid1();
  auto s00 = simple(g, f, g->index("(0,0)"));
  auto s11 = simple(g, f, g->index("(1,1)"));
  auto m = direct_sum(s00, s11);

  CHECK(ext_dims(m, m, 2)[2] == 1);
  // The three component computations the total decomposes into.
  CHECK(projective_dimension(s11) == 0);
  CHECK(ext_dims(s11, s00, 2) == std::vector<int>{0, 0, 0});
  CHECK(ext_dims(s11, s11, 2) == std::vector<int>{1, 0, 0});
  CHECK(ext_dims(s00, s00, 2) == std::vector<int>{1, 0, 0});
  CHECK(ext_dims(s00, s11, 2) == std::vector<int>{0, 0, 1});

  auto rep = rigidity_report(m);
  CHECK(rep.tangent_dim == 0);
  CHECK(rep.obstruction_dim == 1);
  CHECK(rep.classification == Classification::potentially_obstructed);
}

TEST_CASE("diagonal modules accumulate one obstruction per step") {
  GF f(32003);
  for (int n = 1; n <= 3; ++n) {
    auto g = std::make_shared<const Poset>(Poset::grid(n));
    auto m = diagonal_module(g, f);
    auto e = ext_dims(m, m, 2);
    CHECK(e[0] == n + 1);
    CHECK(e[1] == 0);
    CHECK(e[2] == n);
    CHECK(ext1_deformation_complex(m, m) == 0);
    auto rep = rigidity_report(m);
    CHECK(rep.tangent_dim == 0);
    CHECK(rep.obstruction_dim == n);
    CHECK(rep.classification == Classification::potentially_obstructed);
  }
}

TEST_CASE("deformation complex shapes") {
  GF f(7);
  SECTION("constant module on the square") {
    auto c = build_deformation_complex(interval_full(grid1(), f), interval_full(grid1(), f));
    CHECK(c.c0 == 4);
    CHECK(c.c1 == 4);
    CHECK(c.c2 == 1);
    CHECK(rank(c.d0) == 3);
    CHECK(rank(c.d1) == 1);
    CHECK(c.ext1_dim() == 0);
    REQUIRE(c.relations.size() == 1);
    CHECK(c.relations[0].p == 0);
    CHECK(c.relations[0].q == 3);
    CHECK(c.relations[0].ref == std::vector<int>{0, 1, 3});
    CHECK(c.relations[0].path == std::vector<int>{0, 2, 3});
  }
  SECTION("hook") {
    auto c = build_deformation_complex(hook_module(grid1(), f), hook_module(grid1(), f));
    CHECK(c.c0 == 2);
    CHECK(c.c1 == 1);
    CHECK(c.c2 == 0);
    CHECK(rank(c.d0) == 1);
    CHECK(c.ext1_dim() == 0);
  }
  SECTION("ones with zero maps has zero differentials") {
    auto c = build_deformation_complex(trivial_ones(grid1(), f), trivial_ones(grid1(), f));
    CHECK(c.c0 == 4);
    CHECK(c.c1 == 4);
    CHECK(c.c2 == 1);
    CHECK(c.d0.is_zero());
    CHECK(c.d1.is_zero());
    CHECK(c.ext1_dim() == 4);
  }
  SECTION("grids use one relation per unit square") {
    CHECK(commutativity_relations(*grid2()).size() == 4);
    CHECK(commutativity_relations(Poset::grid(3)).size() == 9);
    CHECK(commutativity_relations(*diamond()).size() == 1);
    CHECK(commutativity_relations(*chain4()).empty());
  }
}

TEST_CASE("both ext1 routes agree on random module pairs") {
  GF f(32003);
  SECTION("square poset, 100 pairs") {
    SplitMix64 rng(707);
    for (int trial = 0; trial < 100; ++trial) {
      auto m = random_module(grid1(), f, rng);
      auto n = random_module(grid1(), f, rng);
      auto e = ext_dims(m, n, 1);
      CHECK(e[1] == ext1_deformation_complex(m, n));
      CHECK(e[0] == hom_dim(m, n));
    }
  }
  SECTION("3x3 grid, 30 pairs") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 30; ++trial) {
      auto m = random_module(grid2(), f, rng);
      auto n = random_module(grid2(), f, rng);
      auto e = ext_dims(m, n, 1);
      CHECK(e[1] == ext1_deformation_complex(m, n));
      CHECK(e[0] == hom_dim(m, n));
    }
  }
  SECTION("non-grid posets use parallel-path relations") {
    SplitMix64 rng(909);
    for (int trial = 0; trial < 30; ++trial) {
      auto poset = std::make_shared<const Poset>(random_poset(rng, false));
      auto m = random_module(poset, f, rng, 2);
      auto n = random_module(poset, f, rng, 2);
      int bound = poset->longest_chain() + 1;
      auto e = ext_dims(m, n, std::max(bound, 1));
      CHECK(e[1] == ext1_deformation_complex(m, n));
      CHECK(e[0] == hom_dim(m, n));
    }
  }
}

TEST_CASE("projectives are ext-acyclic") {
  GF f(32003);
  SplitMix64 rng(1010);
  for (auto poset : {grid1(), grid2(), diamond()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto n = random_module(poset, f, rng);
      int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(poset->size())));
      auto e = ext_dims(projective(poset, f, v), n, 3);
      CHECK(e == std::vector<int>{n.dims[v], 0, 0, 0});
    }
  }
}

TEST_CASE("ext is additive over direct sums") {
  GF f(32003);
  SplitMix64 rng(1111);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_module(grid1(), f, rng, 2);
    auto b = random_module(grid1(), f, rng, 2);
    auto c = random_module(grid1(), f, rng, 2);
    auto add = [](std::vector<int> x, const std::vector<int>& y) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
      return x;
    };
    CHECK(ext_dims(direct_sum(a, b), c, 2) ==
          add(ext_dims(a, c, 2), ext_dims(b, c, 2)));
    CHECK(ext_dims(c, direct_sum(a, b), 2) ==
          add(ext_dims(c, a, 2), ext_dims(c, b, 2)));
  }
}

TEST_CASE("ext vanishes above the global dimension") {
  GF f(32003);
  SplitMix64 rng(1212);
  for (auto poset : {grid1(), grid2()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto m = random_module(poset, f, rng, 2);
      auto n = random_module(poset, f, rng, 2);
      auto e = ext_dims(m, n, 4);
      CHECK(e[3] == 0);
      CHECK(e[4] == 0);
    }
  }
}

TEST_CASE("ext argument validation") {
  GF f(7);
  auto m = interval_full(grid1(), f);
  CHECK_THROWS_AS(ext_dims(m, m, -1), std::invalid_argument);
  CHECK_THROWS_AS(ext_dims(m, interval_full(diamond(), f), 2), std::invalid_argument);
  CHECK_THROWS_AS(build_deformation_complex(m, interval_full(diamond(), f)),
                  std::invalid_argument);
  CHECK_THROWS_AS(rigidity_report(zero_module(grid1(), f)), std::invalid_argument);
}

TEST_CASE("constant-module ext matches nerve cohomology") {
  SECTION("named posets over three fields") {
    auto run = [](auto field) {
      for (int n = 0; n <= 2; ++n) {
        auto c = mitchell_check(std::make_shared<const Poset>(Poset::grid(n)), field);
        CHECK(c.agree);
        CHECK(c.ext[0] == 1);
      }
      for (auto poset : {diamond(), chain4(), crown()}) {
        auto c = mitchell_check(poset, field);
        CHECK(c.agree);
      }
    };
    run(GF(32003));
    run(GF(2));
    run(Rationals{});
  }
  SECTION("crown sees the circle in degree one") {
    auto c = mitchell_check(crown(), GF(7));
    REQUIRE(c.ext.size() >= 2);
    CHECK(c.ext[0] == 1);
    CHECK(c.ext[1] == 1);
    CHECK(c.nerve == c.ext);
  }
  SECTION("ten random connected posets") {
    GF f(32003);
    SplitMix64 rng(1313);
    for (int i = 0; i < 10; ++i) {
      auto poset = std::make_shared<const Poset>(random_poset(rng, true));
      auto c = mitchell_check(poset, f);
      CHECK(c.agree);
    }
  }
}

TEST_CASE("alternating ext sums recover the mobius function") {
  GF f(7);
  for (auto poset : {grid1(), grid2(), diamond(), crown(), chain4()}) {
    auto c = euler_mobius_check(poset, f);
    CHECK(c.all_agree);
    for (const auto& row : c.rows) {
      CHECK(row.agree);
      CHECK(row.euler == poset->mobius(row.p, row.q));
    }
  }
  // Nine comparable pairs on the square; the long pair carries the +1.
  auto c = euler_mobius_check(grid1(), f);
  CHECK(c.rows.size() == 9);
  for (const auto& row : c.rows)
    if (row.p == 0 && row.q == 3) CHECK(row.euler == 1);

  SplitMix64 rng(1414);
  for (int i = 0; i < 5; ++i) {
    auto poset = std::make_shared<const Poset>(random_poset(rng, false));
    CHECK(euler_mobius_check(poset, GF(32003)).all_agree);
  }
}

TEST_CASE("report degree defaults to the global dimension") {
  GF f(7);
  auto rep = rigidity_report(interval_full(grid2(), f));
  CHECK(rep.self_ext.size() == 3);
  auto shallow = rigidity_report(interval_full(grid1(), f), 1);
  CHECK(shallow.self_ext.size() == 2);
  CHECK(shallow.obstruction_dim == 0);
}
