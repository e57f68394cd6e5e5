#include <set>

#include "doctest.h"
#include "dinf/quilt.hpp"

using namespace dinf;

namespace {

const PrimeField F5(5);

std::string unshifted(const ModulePtr& m) {
  std::string n = m->name();
  return n.substr(0, n.find('['));
}

}  // namespace

TEST_CASE("finite part of the quilt is the quiver") {
  for (unsigned k : {2u, 3u, 4u}) {
    auto q = build_quilt(F5, k);
    auto fin = q.finite_edges();
    auto quiver = quiver_edges(F5, k);
    REQUIRE(fin.size() == quiver.size());
    for (std::size_t i = 0; i < fin.size(); ++i) {
      CHECK(fin[i].from == to_string(quiver[i].source));
      CHECK(fin[i].to == to_string(quiver[i].target));
    }
    for (const auto& e : q.edges) {
      CHECK(q.has_node(e.from));
      CHECK(q.has_node(e.to));
    }
    std::set<std::string> names;
    for (const auto& n : q.nodes) names.insert(n.name);
    CHECK(names.size() == q.nodes.size());
  }
  CHECK_THROWS(build_quilt(F5, 1));
}

TEST_CASE("AR sequence maps are quilt edges") {
  auto q = build_quilt(F5, 3);
  for (const auto& [fam, k] : ar_sequence_ids(2)) {
    auto s = ar_sequence(F5, fam, k);
    CAPTURE(s.id);
    for (const auto& m : s.left_maps) CHECK(q.has_edge(unshifted(m.source()), unshifted(m.target())));
    for (const auto& m : s.right_maps) CHECK(q.has_edge(unshifted(m.source()), unshifted(m.target())));
  }
}

TEST_CASE("limit points and their edges") {
  auto q = build_quilt(F5, 3);
  for (const char* p : {"R~", "N~", "Q_R", "G_y", "G_x"}) CHECK(q.has_node(p));
  CHECK(q.has_edge("M_3", "R~"));
  CHECK(q.has_edge("N_3", "N~"));
  CHECK(q.has_edge("R~", "N~"));
  CHECK(q.has_edge("N~", "R~"));
  CHECK(q.has_edge("R~", "C"));
  CHECK(q.has_edge("N~", "D"));
  CHECK(q.has_edge("D", "G_y"));
  CHECK(q.has_edge("G_y", "R~"));
  CHECK(q.has_edge("N~", "Q_R"));
  CHECK_FALSE(q.has_edge("M_2", "R~"));
  auto gx = q.in_edges("G_x");
  CHECK(gx.size() == 4);
  for (const auto& e : gx) CHECK(e.reconstructed);
  CHECK(q.glide.size() == 2);

  auto j = quilt_json(q);
  CHECK(j["nodes"].size() == q.nodes.size());
  CHECK(j["edges"].size() == q.edges.size());
  CHECK(j["glide"][0]["via"] == "x");
  auto dot = quilt_dot(q);
  CHECK(dot.find("layout=neato") != std::string::npos);
  CHECK(dot.find("\"R~\" [pos=") != std::string::npos);
  CHECK(dot.find("glide x") != std::string::npos);
  CHECK(quilt_dot(q) == dot);
}

TEST_CASE("limit squares commute") {
  for (unsigned K = 1; K <= 4; ++K) {
    auto r = verify_squares(F5, K, 8);
    CAPTURE(K);
    for (const auto& d : r.details) MESSAGE(d);
    CHECK(r.nonzero);
    CHECK(r.first);
    CHECK(r.second);
  }
}

TEST_CASE("revolution is multiplication by x") {
  ModulePtr S = make(F5, {Family::S});
  auto x = Morphism::parse(S, S, {"x"});
  for (unsigned K = 1; K <= 4; ++K) {
    auto r = revolution(F5, K);
    CAPTURE(K);
    CHECK(r.steps.size() == 4 * K);
    CHECK(r.path.front() == "S");
    CHECK(r.path.back() == "S");
    CHECK(r.path.size() == r.steps.size() + 1);
    CHECK(r.map.equals(x));
    CHECK(r.image_of_one == "x");
    for (const auto& s : r.steps) CHECK_FALSE(s.is_zero());
  }
  auto twice = compose(revolution(F5, 1).map, revolution(F5, 3).map);
  CHECK(twice.equals(Morphism::parse(S, S, {"x^2"})));
  CHECK_FALSE(twice.equals(x));
  CHECK_THROWS(revolution(F5, 0));
}

TEST_CASE("revolution over another field") {
  PrimeField f7(7);
  ModulePtr S = make(f7, {Family::S});
  CHECK(revolution(f7, 2).map.equals(Morphism::parse(S, S, {"x"})));
  CHECK(verify_squares(f7, 2, 6).ok());
}
