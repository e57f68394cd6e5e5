#include <random>

#include "doctest.h"
#include "dinf/pp.hpp"

using namespace dinf;

namespace {

const PrimeField F5(5);

std::size_t count(const std::vector<char>& s) {
  std::size_t c = 0;
  for (char v : s) c += v;
  return c;
}

bool subset(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("parsing pointed modules") {
  auto p = parse_pointed(F5, "(X_1, m*x^2)");
  CHECK(p.module->name() == "X_1");
  CHECK(p.degree() == 3);
  CHECK(parse_pointed(F5, "0").is_bottom());
  auto s = parse_pointed(F5, "(A, x^4) + (S, x^3)");
  CHECK(s.degree() == 4);
  CHECK_THROWS_AS(parse_pointed(F5, "X_1, m"), AlgebraError);
  CHECK_THROWS_AS(parse_pointed(F5, "(S, x + x^2)"), AlgebraError);
}

TEST_CASE("implication is a preorder with bottom and sums as joins") {
  PointedOracle o;
  std::vector<PointedModule> pts;
  for (const char* s : {"(S, x^2)", "(S, x^3)", "(A, x^4)", "(D, x^3)", "(X_1, m*x^2)", "(N_1, m*x^2)",
                        "(Y_1, n*x^2)", "(B, x*y)", "(C, x*y)", "(X_1, n)", "(N_1, n*y)", "(M_1, m)"})
    pts.push_back(parse_pointed(F5, s));
  auto zero = bottom(F5);
  for (const auto& a : pts) {
    CHECK(o.leq(a, a));
    CHECK(o.leq(zero, a));
    CHECK_FALSE(o.leq(a, zero));
  }
  for (const auto& a : pts)
    for (const auto& b : pts)
      for (const auto& c : pts)
        if (o.leq(a, b) && o.leq(b, c)) CHECK(o.leq(a, c));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      auto s = psum(pts[i], pts[j]);
      CHECK(o.leq(pts[i], s));
      CHECK(o.leq(pts[j], s));
      auto m = pconj(pts[i], pts[j]);
      CHECK(o.leq(m, pts[i]));
      CHECK(o.leq(m, pts[j]));
      for (const auto& c : pts) {
        if (o.leq(pts[i], c) && o.leq(pts[j], c)) CHECK(o.leq(s, c));
        if (o.leq(c, pts[i]) && o.leq(c, pts[j])) CHECK(o.leq(c, m));
        CHECK(o.leq(c, s) == o.leq_sum(c, {&pts[i], &pts[j]}));
      }
    }
}

TEST_CASE("pattern of (S, x^2)") {
  PointedOracle o;
  auto P = pattern(parse_pointed(F5, "(S, x^2)"), 3, 8, o);
  REQUIRE(P.nodes[P.top].pm.label == "(S, x^2)");
  auto s = P.find("(S, x^2)"), x1 = P.find("(X_1, m*x^2)"), n1 = P.find("(N_1, m*x^2)");
  REQUIRE(s);
  REQUIRE(x1);
  REQUIRE(n1);
  std::vector<std::size_t> below_top, below_x1;
  for (auto [u, l] : P.covers) {
    if (u == *s) below_top.push_back(l);
    if (u == *x1) below_x1.push_back(l);
  }
  CHECK(below_top == std::vector<std::size_t>{*x1});
  CHECK(below_x1 == std::vector<std::size_t>{*n1});

  auto y = P.find("(Y_1, n*x^2)");
  REQUIRE(y);
  auto lower = psum(parse_pointed(F5, "(A, x^4)"), parse_pointed(F5, "(S, x^3)"));
  auto dl = down_set(P, o, lower);
  std::vector<char> dy(P.nodes.size());
  for (std::size_t j = 0; j < P.nodes.size(); ++j) dy[j] = P.leq[j][*y];
  CHECK(subset(dl, dy));
  CHECK(count(dy) == count(dl) + 1);
  CHECK_FALSE(dl[*y]);

  for (std::size_t i = 0; i < P.nodes.size(); ++i) {
    CHECK(P.leq[i][P.top]);
    CHECK(P.leq[P.bottom][i]);
  }
}

TEST_CASE("order matrix agrees with the oracle") {
  PointedOracle o, fresh;
  auto P = pattern(parse_pointed(F5, "(C, x*y)"), 2, 5, o);
  for (std::size_t i = 0; i < P.nodes.size(); ++i)
    for (std::size_t j = 0; j < P.nodes.size(); ++j) {
      CHECK(bool(P.leq[i][j]) == fresh.leq(P.nodes[i].pm, P.nodes[j].pm));
      if (i != j) CHECK_FALSE((P.leq[i][j] && P.leq[j][i]));
    }
}

TEST_CASE("(C, x*y) realizes v*x = 0") {
  PointedOracle o;
  auto c = parse_pointed(F5, "(C, x*y)");
  std::mt19937_64 rng(7);
  std::size_t killed = 0, alive = 0;
  for (const auto& id : catalog_ids(3)) {
    auto m = make(F5, id);
    for (int d = m->min_gen_degree(); d <= m->min_gen_degree() + 4; ++d) {
      std::size_t n = m->dim(d);
      if (!n) continue;
      for (int trial = 0; trial < 4; ++trial) {
        Vec v(n);
        for (auto& e : v) e = static_cast<Coeff>(rng() % 5);
        if (is_zero_vec(v)) continue;
        auto p = make_pointed(m, m->from_coords(d, v));
        bool kx = m->is_zero(p.point.times(Monomial{1, 0}));
        CAPTURE(p.label);
        CHECK(o.leq(p, c) == kx);
        (kx ? killed : alive)++;
      }
    }
  }
  CHECK(killed > 5);
  CHECK(alive > 5);
}

TEST_CASE("length two interval and descending chain") {
  PointedOracle o;
  auto P = pattern(parse_pointed(F5, "(X_1, n)"), 4, 8, o);
  auto lo = P.find("(N_1, n*y)"), up = P.find("(X_1, n)");
  REQUIRE(lo);
  REQUIRE(up);
  CHECK(interval_inner_count(P, *lo, *up) == std::optional<std::size_t>(1));

  auto b = parse_pointed(F5, "(B, x*y)");
  auto mid = psum(b, parse_pointed(F5, "(N_1, n*y)"));
  auto dm = down_set(P, o, mid);
  std::vector<char> dlo(P.nodes.size()), dup(P.nodes.size());
  for (std::size_t j = 0; j < P.nodes.size(); ++j) {
    dlo[j] = P.leq[j][*lo];
    dup[j] = P.leq[j][*up];
  }
  CHECK(subset(dlo, dm));
  CHECK(subset(dm, dup));
  CHECK(count(dlo) < count(dm));
  CHECK(count(dm) < count(dup));

  auto db = down_set(P, o, b);
  std::vector<char> prev = dup;
  for (unsigned k = 1; k <= 3; ++k) {
    auto chain = psum(b, parse_pointed(F5, "(X_" + std::to_string(k + 1) + ", n*y^" + std::to_string(k) + ")"));
    auto d = down_set(P, o, chain);
    CAPTURE(k);
    CHECK(subset(d, prev));
    CHECK(count(d) < count(prev));
    CHECK(subset(db, d));
    CHECK(count(db) < count(d));
    CHECK(o.leq(chain, parse_pointed(F5, "(X_1, n)")));
    prev = d;
  }
}

TEST_CASE("interval windows are distributive with trivial sums") {
  for (const char* seed : {"(S, x^2)", "(X_1, n)", "(C, x*y)"}) {
    PointedOracle o;
    auto P = pattern(parse_pointed(F5, seed), 3, 6, o);
    auto w = interval_window(P, o, 30, 15, 3);
    CAPTURE(seed);
    for (const auto& f : w.failures) MESSAGE(f);
    CHECK(w.ok());
    CHECK(w.sum_checks > 0);
  }
}

TEST_CASE("poset output") {
  PointedOracle o;
  auto P = pattern(parse_pointed(F5, "(S, x^2)"), 1, 3, o);
  auto j = poset_json(P);
  CHECK(j["nodes"].size() == P.nodes.size());
  CHECK(j["covers"].size() == P.covers.size());
  auto dot = poset_dot(P);
  CHECK(dot.find("(S, x^2)") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}
