#include <random>

#include "doctest.h"
#include "dinf/hom.hpp"

using namespace dinf;

namespace {

const PrimeField F5(5);

ModulePtr mk(const std::string& s) { return make(F5, parse_family_id(s)); }

// The image in S of an element, through a realization of its module.
SElem in_ring(const Realization& r, const Elem& e) {
  Elem img = apply_images(r.module, r.images, e);
  SElem out(F5);
  Elem red = r.ambient->normal_form(img);
  for (const auto& [t, c] : red.terms()) out = out + SElem::monomial(F5, t.mono, c);
  return out;
}

Elem random_homogeneous(std::mt19937& rng, const ModulePtr& m, int d) {
  Elem e(F5);
  for (const auto& n : m->nodes(d)) e.add_term(n, rng() % 5);
  return e;
}

}  // namespace

TEST_CASE("morphisms verify relations on construction") {
  auto d = mk("D"), c = mk("C");
  auto yc = Morphism::parse(d, c, {"c"});
  CHECK(yc.degree() == 1);
  CHECK(c->to_string(yc.apply(d->parse("x^2"))) == "0");
  CHECK(c->to_string(yc.apply(d->parse("x*y"))) == "x*y^2");
  CHECK_THROWS_AS(Morphism::parse(mk("C"), mk("D"), {"x^2"}), AlgebraError);
  auto m2 = mk("M2");
  CHECK_NOTHROW(Morphism::parse(m2, m2, {"n", "0"}));
  CHECK_THROWS_AS(Morphism::parse(m2, m2, {"0", "m"}), AlgebraError);
}

TEST_CASE("Hom(S, M) is M degreewise") {
  auto s = mk("S");
  for (auto name : {"M2", "Y3", "X1", "N2", "C"}) {
    auto m = mk(name);
    for (int e = 0; e < 10; ++e) CHECK(hom_degree(s, m, e).size() == m->dim(e));
  }
}

TEST_CASE("Hom windows") {
  auto w = hom_window(mk("A"), mk("C"), 12);
  CHECK(w.basis.empty());
  CHECK(w.stable);
  CHECK(w.certificate.answers == std::vector<std::string>{"zero", "zero", "zero"});
  auto dc = hom_window(mk("D"), mk("C"), 8);
  CHECK_FALSE(dc.basis.empty());
  auto target = Morphism::parse(mk("D"), mk("C"), {"c"});
  auto b1 = hom_degree(mk("D"), mk("C"), 1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].scaled(F5.inv(b1[0].images()[0].terms().begin()->second)).equals(target));
  // dims never decrease as the window grows
  auto m2 = mk("M2"), x2 = mk("X2");
  std::size_t prev = 0;
  for (int t = 2; t < 9; ++t) {
    auto hw = hom_window(m2, x2, t);
    CHECK(hw.basis.size() >= prev);
    prev = hw.basis.size();
  }
}

TEST_CASE("pointed morphism existence") {
  auto s = mk("S"), x1 = mk("X1");
  CHECK(pointed_exists(s, s->parse("x"), s, s->parse("x^2"), 8).verdict == Verdict::Yes);
  auto r = pointed_exists(s, s->parse("x^2"), x1, x1->parse("m*x^2"), 8);
  CHECK(r.verdict == Verdict::Yes);
  REQUIRE(r.witness);
  CHECK(x1->equal(r.witness->apply(s->parse("x^2")), x1->parse("m*x^2")));
  auto no = pointed_exists(s, s->parse("x^2"), s, s->parse("x"), 8);
  CHECK(no.verdict == Verdict::No);
  CHECK(no.certificate.answers == std::vector<std::string>{"no", "no", "no"});
  auto deep = pointed_exists(s, s->parse("1"), s, s->parse("y^9"), 4);
  CHECK(deep.verdict == Verdict::Indeterminate);
  CHECK(pointed_exists(s, s->parse("1"), s, s->parse("y^9"), 9).verdict == Verdict::Yes);
  CHECK_THROWS_AS(pointed_exists(s, s->parse("1 + x"), s, s->parse("x"), 8), AlgebraError);
}

TEST_CASE("property: pointed existence is reflexive and transitive") {
  std::mt19937 rng(99);
  std::vector<ModulePtr> mods = {mk("S"), mk("M1"), mk("X1"), mk("Y2"), mk("N1"), mk("B"), mk("C")};
  HomCache cache;
  for (int trial = 0; trial < 60; ++trial) {
    ModulePtr a = mods[rng() % mods.size()], b = mods[rng() % mods.size()], c = mods[rng() % mods.size()];
    Elem pa = random_homogeneous(rng, a, a->min_gen_degree() + static_cast<int>(rng() % 3));
    Elem pb = random_homogeneous(rng, b, b->min_gen_degree() + static_cast<int>(rng() % 4));
    Elem pc = random_homogeneous(rng, c, c->min_gen_degree() + static_cast<int>(rng() % 5));
    if (a->is_zero(pa)) continue;
    CHECK(cache.pointed(a, pa, a, pa));
    bool ab = cache.pointed(a, pa, b, pb);
    bool bc = !b->is_zero(pb) && cache.pointed(b, pb, c, pc);
    if (ab && bc) CHECK(cache.pointed(a, pa, c, pc));
    CHECK(ab == (pointed_exists(a, pa, b, pb, 40).verdict == Verdict::Yes));
  }
}

TEST_CASE("composites of irreducible maps are the ideal inclusions") {
  for (unsigned k = 1; k <= 4; ++k) {
    auto yk1 = make(F5, {Family::Y, k + 1}), nk = make(F5, {Family::N, k}), yk = make(F5, {Family::Y, k});
    auto f = Morphism::parse(yk1, nk, {"m*y", "n"});
    auto g = Morphism::parse(nk, yk, {"m", "n"});
    auto h = compose(f, g);
    auto rs = realize(F5, {Family::Y, k + 1}, 8), rt = realize(F5, {Family::Y, k}, 8);
    for (unsigned i = 0; i < 2; ++i)
      CHECK(in_ring(rs, Elem::term(F5, i)) == in_ring(rt, h.images()[i]));
    CHECK(compose(f, Morphism::identity(nk)).equals(f));
    CHECK(compose(Morphism::identity(yk1), f).equals(f));
  }
  for (unsigned k = 2; k <= 5; ++k) {
    auto mk_ = make(F5, {Family::M, k}), xk = make(F5, {Family::X, k}), mk1 = make(F5, {Family::M, k - 1});
    auto h = compose(Morphism::parse(mk_, xk, {"m*y", "n"}), Morphism::parse(xk, mk1, {"m", "n"}));
    auto rs = realize(F5, {Family::M, k}, 8), rt = realize(F5, {Family::M, k - 1}, 8);
    for (unsigned i = 0; i < 2; ++i)
      CHECK(in_ring(rs, Elem::term(F5, i)) == in_ring(rt, h.images()[i]));
  }
  CHECK_THROWS_AS(compose(Morphism::identity(mk("M1")), Morphism::identity(mk("M2"))), AlgebraError);
}

TEST_CASE("duality table") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (Family fam : {Family::M, Family::N, Family::X, Family::Y}) {
      FamilyId id{fam, k};
      CAPTURE(to_string(id));
      auto r = dual(F5, id);
      REQUIRE(r.match);
      FamilyId want = id;
      if (fam == Family::X) want.family = Family::Y;
      if (fam == Family::Y) want.family = Family::X;
      CHECK(*r.match == want);
      CHECK(r.iso_verified);
    }
  }
  for (Family fam : {Family::S, Family::A, Family::B, Family::C, Family::D}) {
    auto r = dual(F5, {fam});
    REQUIRE(r.match);
    CHECK(*r.match == FamilyId{fam});
  }
}

TEST_CASE("Fitting evidence for indecomposability") {
  for (auto name : {"X1", "S", "M2", "N3", "A", "D"}) {
    auto v = is_indecomposable(mk(name), 6, 20, 17);
    CHECK_FALSE(v.decomposed);
    CHECK(v.trials == 20);
  }
  auto m1 = mk("M1");
  auto sum = direct_sum({m1, m1});
  auto v = is_indecomposable(sum, 6, 20, 17);
  REQUIRE(v.decomposed);
  Mat e2 = v.idempotent.mul(F5, v.idempotent);
  CHECK(e2 == v.idempotent);
  CHECK(v.idempotent_rank > 0);
  CHECK(v.idempotent_rank < v.quotient_dim);
  CHECK(v.idempotent_rank * 2 == v.quotient_dim);
}

TEST_CASE("endomorphisms of N_k and the orbit chain") {
  for (unsigned k = 1; k <= 4; ++k) {
    auto rep = endo_chain_check(F5, k, 14);
    CAPTURE(k);
    CHECK(rep.shift_map_ok);
    CHECK(rep.yk_map_ok);
    CHECK(rep.y_map_ok == (k == 1));
    CHECK(rep.chain_strict);
  }
}

TEST_CASE("morphism JSON") {
  auto m2 = mk("M2"), x2 = mk("X2");
  auto j = Morphism::parse(m2, x2, {"m*y", "n"}).to_json();
  CHECK(j["source"] == "M_2");
  CHECK(j["images"]["m"] == "m*y");
  CHECK(j["images"]["n"] == "n");
  CHECK(j["degree"] == 0);
}
