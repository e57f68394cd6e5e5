#include "doctest.h"
#include "dinf/ar.hpp"
#include "dinf/radical.hpp"

using namespace dinf;

namespace {

const PrimeField F5(5);

std::size_t block_dim(const HomTable& t, std::size_t i, std::size_t j, int e) {
  auto it = t[i][j].find(e);
  return it == t[i][j].end() ? 0 : it->second.basis.size();
}

}  // namespace

TEST_CASE("rad is Hom without isomorphisms") {
  RadicalEngine eng(F5, 2, 4);
  std::size_t s = eng.index({Family::S});
  ModulePtr S = eng.modules()[s];
  CHECK_FALSE(eng.contains(eng.rad1(), Morphism::identity(S)));
  CHECK(block_dim(eng.rad1(), s, s, 0) == 0);
  CHECK(eng.contains(eng.rad1(), Morphism::parse(S, S, {"x"})));
  CHECK(eng.contains(eng.rad1(), Morphism::parse(S, S, {"y"})));
  for (const auto& e : quiver_edges(F5, 2)) {
    CAPTURE(e.morphism.label());
    CHECK(eng.contains(eng.rad1(), e.morphism));
  }
}

TEST_CASE("capped powers agree with uncapped products") {
  RadicalEngine eng(F5, 2, 4);
  const std::size_t N = eng.modules().size();
  HomTable prev = eng.rad1();
  for (unsigned n = 2; n <= 5; ++n) {
    HomTable next = eng.product(prev, eng.rad1(), eng.rad1());
    const HomTable& capped = eng.power(n);
    CAPTURE(n);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        for (const auto& [e, blk] : next[i][j]) {
          CHECK(block_dim(capped, i, j, e) == blk.basis.size());
          auto it = prev[i][j].find(e);
          REQUIRE(it != prev[i][j].end());
          CHECK(it->second.span.contains(F5, blk.span));
        }
    prev = next;
  }
}

TEST_CASE("rad^2 contains composites of irreducible maps") {
  RadicalEngine eng(F5, 2, 6);
  auto edges = quiver_edges(F5, 2);
  std::size_t tested = 0;
  for (const auto& a : edges)
    for (const auto& b : edges) {
      if (!(a.target == b.source)) continue;
      auto c = compose(a.morphism, b.morphism);
      if (c.is_zero() || !c.degree()) continue;
      std::size_t i = eng.index(a.source), j = eng.index(b.target);
      if (*c.degree() > eng.reach(i, j)) continue;
      CAPTURE(c.label());
      CHECK(eng.contains(eng.power(2), c));
      ++tested;
    }
  CHECK(tested > 10);
}

TEST_CASE("S window at k_max = 3") {
  auto w = rad_power(F5, {Family::S}, {Family::S}, 10, 3, 6);
  CHECK(w.descending);
  CHECK(w.strict_steps == std::vector<unsigned>{4, 8});
  CHECK(w.dims[0][1] == 2);
  CHECK(w.dims[4][1] == 1);
  CHECK(w.generators[1] == std::vector<std::string>{"x"});
  auto j = to_json(w);
  CHECK(j["powers"].size() == 10);
  CHECK(j["descending"] == true);
}

TEST_CASE("x lies in every finite power, y leaves") {
  RadicalEngine eng(F5, 3, 6);
  ModulePtr S = make(F5, {Family::S});
  auto x = Morphism::parse(S, S, {"x"}), y = Morphism::parse(S, S, {"y"});
  for (unsigned n = 1; n <= 10; ++n) CHECK(eng.contains(eng.power(n), x));
  auto loop = compose(compose(compose(edge(F5, 12).morphism, edge(F5, 5).morphism), edge(F5, 7).morphism),
                      edge(F5, 13).morphism);
  CHECK(loop.equals(y));
  CHECK(eng.contains(eng.power(4), y));
  CHECK_FALSE(eng.contains(eng.power(5), y));
  for (unsigned k = 0; k <= 5; ++k) CHECK_FALSE(S->is_zero(S->parse("x^" + std::to_string(k + 1))));
}

TEST_CASE("image depth of powers of Omega") {
  RadicalEngine eng(F5, 3, 6);
  auto d = image_depth(eng, 10, 4);
  CHECK(d.g == std::vector<int>{1, 2, 3, 3});
  CHECK(d.g_monotone);
  CHECK(d.g_grows);
  CHECK(d.h_monotone);
  auto prods = eng.powers_of(eng.power(10), 2);
  std::size_t s = eng.index({Family::S});
  ModulePtr S = eng.modules()[s];
  CHECK_FALSE(eng.contains(prods[1], Morphism::parse(S, S, {"x"})));
  CHECK(eng.contains(prods[1], Morphism::parse(S, S, {"x^2"})));
}

TEST_CASE("x-divisible parts vanish") {
  for (const auto& id : catalog_ids(3)) {
    auto r = divisibility_vanishing_check(F5, id, 8);
    CAPTURE(r.module);
    CHECK(r.ok());
    if (killed_by_x_squared(make(F5, id)))
      for (auto v : r.dims[2]) CHECK(v == 0);
  }
  auto s = divisibility_vanishing_check(F5, {Family::S}, 6);
  for (int J = 2; J <= 7; ++J)
    for (int d = 0; d <= 6; ++d) CHECK(s.dims[J][d] == (d >= J ? 1u : 0u));
  CHECK(s.dims[1] == std::vector<std::size_t>{0, 1, 2, 2, 2, 2, 2});
}

TEST_CASE("nil index report") {
  auto r = nil_index_report(F5, 2, 8, 6);
  for (const auto& [k, ok] : r.lower) CHECK_MESSAGE(ok, k);
  for (const auto& [k, ok] : r.upper) CHECK_MESSAGE(ok, k);
  CHECK(r.status() == Status::Pass);
  CHECK(to_json(r)["status"] == "pass");
  CHECK(nil_index_report(F5, 2, 0, 6).status() == Status::Indeterminate);
  CHECK(nil_index_report(F5, 0, 8, 6).status() == Status::Indeterminate);
  CHECK(to_string(Status::Fail) == "fail");
}
