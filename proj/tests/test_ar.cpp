#include <algorithm>

#include "doctest.h"
#include "dinf/ar.hpp"

using namespace dinf;

namespace {

const PrimeField F5(5);

}  // namespace

TEST_CASE("irreducible edges are well defined and nonzero") {
  for (unsigned id = 1; id <= kEdgeCount; ++id) {
    CAPTURE(id);
    unsigned k0 = (id == 2 || id == 6) ? 2 : 1;
    for (unsigned k = k0; k <= 4; ++k) {
      auto e = edge(F5, id, k);
      CHECK_FALSE(e.morphism.is_zero());
      CHECK(e.morphism.degree().has_value());
    }
  }
  CHECK_THROWS_AS(edge(F5, 2, 1), AlgebraError);
  CHECK_THROWS_AS(edge(F5, 17), AlgebraError);
  CHECK(edge_name(2) == "Y_k -> N_{k-1}");
  CHECK(edge_name(13) == "Y_1 -> S");
}

TEST_CASE("AR sequences are exact degreewise") {
  for (auto [fam, k] : ar_sequence_ids(5)) {
    auto s = ar_sequence(F5, fam, k);
    CAPTURE(s.id);
    auto r = verify_exact(s, 14);
    for (const auto& msg : r.failures) MESSAGE(msg);
    CHECK(r.ok());
    CHECK(s.g.degree().value_or(0) == 0);
    CHECK(s.f.degree().value_or(0) == 0);
  }
}

TEST_CASE("S is never an end term") {
  for (auto [fam, k] : ar_sequence_ids(5)) {
    auto s = ar_sequence(F5, fam, k);
    CHECK(s.left->num_gens() + s.right->num_gens() > 0);
    auto ring = make(F5, {Family::S});
    CHECK_FALSE(same_module(*s.left, *ring));
    for (int sh = -6; sh <= 6; ++sh) CHECK_FALSE(same_module(*s.right, *ring->shifted(sh)));
  }
}

TEST_CASE("right maps are almost split") {
  for (auto [fam, k] : std::vector<std::pair<ARFamily, unsigned>>{
           {ARFamily::M, 1}, {ARFamily::N, 2}, {ARFamily::Y1, 1}, {ARFamily::X, 2}, {ARFamily::X1, 1}, {ARFamily::A, 0},
           {ARFamily::B, 0}}) {
    auto s = ar_sequence(F5, fam, k);
    CAPTURE(s.id);
    auto r = almost_split_check(F5, s, 3, 6);
    for (const auto& msg : r.failures) MESSAGE(msg);
    CHECK(r.ok());
    CHECK_FALSE(r.identity_factors);
  }
}

TEST_CASE("a split sequence is detected") {
  auto a = make(F5, {Family::A}), b = make(F5, {Family::B});
  auto e = direct_sum({a, b});
  Morphism proj(e, b, {Elem(F5), b->parse("b")});
  CHECK(factors_through(Morphism::identity(b), proj));
  auto s = ar_sequence(F5, ARFamily::B, 0);
  CHECK_FALSE(factors_through(Morphism::identity(s.right), s.g));
}

TEST_CASE("coray limits") {
  for (unsigned K = 3; K <= 6; ++K) {
    auto r = coray_limit_check(F5, K, 10);
    CAPTURE(K);
    CHECK(r.y_coray_is_D);
    CHECK(r.x_powers_in_image);
    CHECK(r.y_power_leaves);
    CHECK(r.m_coray_is_C);
  }
  auto r = coray_limit_check(F5, 4, 6);
  std::vector<std::string> want = {"x", "x^2", "x*y", "x^3", "x*y^2"};
  CHECK(r.stable_basis == want);
}

TEST_CASE("limit sequences at finite stages") {
  for (unsigned K = 1; K <= 6; ++K) {
    for (auto which : {InfiniteAR::CokernelD, InfiniteAR::CokernelC}) {
      auto r = infinite_ar_check(F5, which, K, 14);
      CAPTURE(r.id);
      CAPTURE(K);
      for (const auto& msg : r.exactness.failures) MESSAGE(msg);
      CHECK(r.composite_zero);
      CHECK(r.left_term == "x*y");
      CHECK(r.right_term == "x*y");
      CHECK(r.exactness.ok());
      CHECK(r.cokernel_iso);
    }
  }
}

TEST_CASE("projected maps exist at every stage") {
  for (unsigned K = 1; K <= 5; ++K)
    for (const auto& [name, ok] : corollary_maps_check(F5, K)) {
      CAPTURE(name);
      CHECK(ok);
    }
}

TEST_CASE("quiver output") {
  auto j = quiver_json(F5, 3);
  CHECK(j["nodes"].size() == catalog_ids(3).size());
  std::size_t filled = 0;
  for (const auto& n : j["nodes"]) filled += n["r_module"].get<bool>();
  auto dot = quiver_dot(F5, 3);
  CHECK(dot.find("\"Y_1\" -> \"S\" [label=\"13\"]") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '\n') > 10);
  std::vector<std::string> killed;
  for (const auto& n : j["nodes"])
    if (n["r_module"].get<bool>()) killed.push_back(n["id"]);
  CHECK(filled == killed.size());
  CHECK(killed == std::vector<std::string>{"B", "C", "M_1", "M_2", "M_3"});
  CHECK(dot.find("\"M_2\" [style=filled") != std::string::npos);
}
